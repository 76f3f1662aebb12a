"""Realizability classifiers with certificates and refutation reasons.

Decides whether a labeled graph is the prime graph complement of a
solvable, Sz(32)-solvable, Sz(8)-solvable or PSL(2,32)-solvable group.
Conditions are checked in order (solvable; detachable 4-set; attached
4-set matching the F4 catalog) and the first success wins, so certificates
prefer solvable witnesses. The search over candidate 4-subsets (and
attachment vertices) is exhaustive, never heuristic, and rejected
candidates are reported individually so refutations can be audited.

Queries are pure functions against an immutable catalog; unrestricted
concurrency is safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import graphs as gr
from .catalog import Catalog, CatalogError, VERIFIED


@dataclass(frozen=True)
class Certificate:
    x_set: Optional[tuple] = None       # the detachable 4-set
    attach: Optional[str] = None        # the attachment vertex for condition 3
    matched_id: Optional[str] = None    # catalog entry id
    matched_code: Optional[str] = None  # rooted canonical code, hex
    coloring: Optional[gr.ColoringWitness] = None  # remainder (or whole graph)


@dataclass(frozen=True)
class Verdict:
    realizable: bool
    condition: Optional[int]
    certificate: Optional[Certificate]
    reason: Optional[str]

    def __post_init__(self):
        if self.realizable != (self.condition is not None):
            raise ValueError("realizable verdicts must name the condition that fired")
        if self.realizable != (self.certificate is not None):
            raise ValueError("certificate present iff realizable")


def _solvable_failure(g: gr.LabeledGraph) -> Optional[str]:
    if not gr.is_triangle_free(g):
        return "contains a triangle"
    if gr.three_color(g) is None:
        return "not 3-colorable"
    return None


def classify_solvable(g: gr.LabeledGraph) -> Verdict:
    """Triangle-free plus 3-colorable, with the coloring as certificate."""
    failure = _solvable_failure(g)
    if failure is not None:
        return Verdict(False, None, None, failure)
    return Verdict(True, 1, Certificate(coloring=gr.three_color(g)), None)


def _four_subsets(g: gr.LabeledGraph):
    return itertools.combinations(gr.sorted_labels(g.vertices), 4)


def _condition2(g, x, forbidden_code: Optional[str], reasons: list) -> Optional[Certificate]:
    xs = frozenset(x)
    nx = gr.closed_neighborhood(g, xs)
    if nx != xs:
        reasons.append(f"X={{{','.join(x)}}}: closed neighborhood adds {sorted(nx - xs)}")
        return None
    induced = gr.induced_subgraph(g, xs)
    if gr.is_triangle_free(induced):
        reasons.append(f"X={{{','.join(x)}}}: contains no triangle")
        return None
    if forbidden_code is not None and gr.unrooted_canonical_form(induced).hex() == forbidden_code:
        reasons.append(f"X={{{','.join(x)}}}: induced subgraph is the excluded 4-vertex graph")
        return None
    rest = gr.remove_vertices(g, xs)
    failure = _solvable_failure(rest)
    if failure is not None:
        reasons.append(f"X={{{','.join(x)}}}: remainder {failure}")
        return None
    return Certificate(x_set=tuple(x), coloring=gr.three_color(rest))


def _condition3(g, x, catalog: Catalog, reasons: list) -> Optional[Certificate]:
    xs = frozenset(x)
    nx = gr.closed_neighborhood(g, xs)
    extra = nx - xs
    if len(extra) != 1:
        return None  # already reported by the condition-2 pass
    (e,) = extra
    rooted = gr.rooted(gr.induced_subgraph(g, nx), e)
    code = gr.canonical_form(rooted).hex()
    entry = catalog.f4_codes().get(code)
    if entry is None:
        reasons.append(
            f"X={{{','.join(x)}}}+{e}: attached 5-vertex graph matches no catalog entry"
        )
        return None
    rest = gr.remove_vertices(g, xs)  # keeps the attachment vertex
    failure = _solvable_failure(rest)
    if failure is not None:
        reasons.append(f"X={{{','.join(x)}}}+{e}: remainder {failure}")
        return None
    return Certificate(
        x_set=tuple(x),
        attach=e,
        matched_id=entry.rid,
        matched_code=code,
        coloring=gr.three_color(rest),
    )


def require_verified(catalog: Catalog) -> None:
    if catalog.fully_verified:
        return
    pending = [e.rid for e in catalog.f4_entries if e.provenance != VERIFIED]
    pending += [
        e.witness for e in catalog.four_vertex
        if e.allowed and e.provenance != VERIFIED
    ]
    raise CatalogError(
        f"strict mode: catalog {catalog.family!r} has unverified entries: {pending}"
    )


def classify_sz32(g: gr.LabeledGraph) -> Verdict:
    """Solvable, or a detachable triangle-containing 4-set, solvable rest."""
    solvable = classify_solvable(g)
    if solvable.realizable:
        return solvable
    reasons = [solvable.reason]
    for x in _four_subsets(g):
        cert = _condition2(g, x, None, reasons)
        if cert is not None:
            return Verdict(True, 2, cert, None)
    return Verdict(False, None, None, "; ".join(reasons))


def _classify_with_catalog(g: gr.LabeledGraph, catalog: Catalog, strict: bool) -> Verdict:
    if strict:
        require_verified(catalog)
    solvable = classify_solvable(g)
    if solvable.realizable:
        return solvable
    reasons = [solvable.reason]
    for x in _four_subsets(g):
        cert = _condition2(g, x, catalog.forbidden_code, reasons)
        if cert is not None:
            return Verdict(True, 2, cert, None)
    for x in _four_subsets(g):
        cert = _condition3(g, x, catalog, reasons)
        if cert is not None:
            return Verdict(True, 3, cert, None)
    return Verdict(False, None, None, "; ".join(reasons))


def classify_sz8(g: gr.LabeledGraph, catalog: Catalog, strict: bool = False) -> Verdict:
    if catalog.family != "sz8":
        raise CatalogError(f"expected an sz8 catalog, got {catalog.family!r}")
    return _classify_with_catalog(g, catalog, strict)


def classify_psl232(g: gr.LabeledGraph, catalog: Catalog, strict: bool = False) -> Verdict:
    if catalog.family != "psl232":
        raise CatalogError(f"expected a psl232 catalog, got {catalog.family!r}")
    return _classify_with_catalog(g, catalog, strict)


def classify(family: str, g: gr.LabeledGraph, catalog: Optional[Catalog] = None,
             strict: bool = False) -> Verdict:
    if family == "solvable":
        return classify_solvable(g)
    if family == "sz32":
        return classify_sz32(g)
    if family == "sz8":
        return classify_sz8(g, catalog, strict)
    if family == "psl232":
        return classify_psl232(g, catalog, strict)
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Certificate soundness
# ---------------------------------------------------------------------------

def check_certificate(g: gr.LabeledGraph, verdict: Verdict,
                      catalog: Optional[Catalog] = None) -> bool:
    """Re-validate an accepting verdict from scratch; True iff it holds up."""
    if not verdict.realizable:
        return verdict.certificate is None
    cert = verdict.certificate
    if verdict.condition == 1:
        return (
            cert.coloring is not None
            and cert.coloring.is_proper(g)
            and gr.is_triangle_free(g)
        )
    xs = frozenset(cert.x_set or ())
    if len(xs) != 4 or not xs <= g.vertices:
        return False
    induced = gr.induced_subgraph(g, xs)
    rest = gr.remove_vertices(g, xs)
    if not (cert.coloring is not None and cert.coloring.is_proper(rest)):
        return False
    if not gr.is_triangle_free(rest):
        return False
    nx = gr.closed_neighborhood(g, xs)
    if verdict.condition == 2:
        if nx != xs or gr.is_triangle_free(induced):
            return False
        if catalog is not None and catalog.forbidden_code is not None:
            return gr.unrooted_canonical_form(induced).hex() != catalog.forbidden_code
        return True
    if verdict.condition == 3:
        # the triangle here may run through the attachment vertex, so it is
        # required of the matched 5-vertex graph, not of X alone
        if catalog is None or cert.attach is None:
            return False
        if nx != xs | {cert.attach}:
            return False
        attached = gr.induced_subgraph(g, nx)
        if gr.is_triangle_free(attached):
            return False
        code = gr.canonical_form(gr.rooted(attached, cert.attach)).hex()
        return code == cert.matched_code and code in catalog.f4_codes()
    return False
