"""A small exact permutation-group engine.

Covers what the toolkit needs from witness groups: breadth-first element
enumeration with order spectra, a deterministic stabilizer-chain order
computation, seeded random-word spectrum sampling, prime graph complements
straight from spectra, and the shape test for p-groups (cyclic, Klein-4,
dihedral, generalized quaternion).

Permutations are stored internally as 0-based image tuples (bytes when the
degree fits) so that enumeration of groups up to a few hundred thousand
elements stays fast and compact. Enumeration of one group is single-threaded;
distinct groups may be processed concurrently and all results are immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Iterable, Optional

from .numutil import factorization, prime_factors

#: default breadth-first closure bound; covers Aut(PSL(2,32)) at 163,680
DEFAULT_ELEMENT_LIMIT = 200_000

P_GROUP_LIMIT = 4096  # 2**12

# 64-bit linear congruential generator used for reproducible random words:
# state <- (LCG_MULT * state + LCG_INC) mod 2**64, generator index taken from
# the top bits. Constants are Knuth's MMIX parameters.
LCG_MULT = 6364136223846793005
LCG_INC = 1442695040888963407
LCG_MASK = (1 << 64) - 1


class GroupError(ValueError):
    """Malformed permutation data or an unsupported group input."""


class EnumerationLimitError(GroupError):
    """Breadth-first closure exceeded its element bound."""


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}, given by its 1-based image array."""

    images: tuple

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise GroupError(f"images are not a bijection on 1..{n}")

    @property
    def degree(self) -> int:
        return len(self.images)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise GroupError("a group needs at least one generator")
        for g in self.generators:
            if g.degree != self.degree:
                raise GroupError(
                    f"generator degree {g.degree} does not match group degree {self.degree}"
                )


@dataclass(frozen=True)
class OrderSpectrum:
    """The set of element orders of a group (or of a sampled subset)."""

    group_order: int
    orders: frozenset
    exhaustive: bool

    def __post_init__(self):
        if 1 not in self.orders:
            raise GroupError("1 must be in every order spectrum")
        for d in self.orders:
            if self.group_order % d != 0:
                raise GroupError(f"order {d} does not divide {self.group_order}")


@dataclass(frozen=True)
class PGroupShape:
    tag: str  # cyclic | klein4 | dihedral | generalized_quaternion | other

    @property
    def satisfies_frobenius_criterion(self) -> bool:
        return self.tag != "other"


def perm_group(degree: int, image_arrays: Iterable) -> PermGroup:
    return PermGroup(degree, tuple(Permutation(tuple(imgs)) for imgs in image_arrays))


# ---------------------------------------------------------------------------
# Internal 0-based representation
# ---------------------------------------------------------------------------

def _identity(n: int):
    return bytes(range(n)) if n <= 256 else tuple(range(n))


def _internal(p: Permutation):
    imgs = [i - 1 for i in p.images]
    return bytes(imgs) if len(imgs) <= 256 else tuple(imgs)


def _compose(p, q):
    """Apply p, then q."""
    return (bytes if isinstance(p, bytes) else tuple)(map(q.__getitem__, p))


def _inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return bytes(inv) if isinstance(p, bytes) else tuple(inv)


def _element_order(p) -> int:
    order = 1
    seen = bytearray(len(p))
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = 1
            x = p[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


def _closure(gens, limit: int):
    """All products of the generators, or raise past the element bound."""
    n = len(gens[0])
    seen = {_identity(n)}
    frontier = [_identity(n)]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = _compose(p, s)
                if q not in seen:
                    if len(seen) >= limit:
                        raise EnumerationLimitError(
                            f"group exceeds the enumeration bound of {limit} elements"
                        )
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def _group_elements(g: PermGroup, limit: int):
    return _closure([_internal(p) for p in g.generators], limit)


# ---------------------------------------------------------------------------
# Spectra
# ---------------------------------------------------------------------------

def enumerate_elements(g: PermGroup, limit: int = DEFAULT_ELEMENT_LIMIT) -> OrderSpectrum:
    """Exhaustive order spectrum via breadth-first closure of the generators.

    Raises EnumerationLimitError (naming the bound) if the group has more
    than `limit` elements.
    """
    elements = _group_elements(g, limit)
    orders = {_element_order(p) for p in elements}
    return OrderSpectrum(len(elements), frozenset(orders), exhaustive=True)


def _closed_under_divisors(orders) -> frozenset:
    out = set()
    for d in orders:
        out.add(d)
        for e in range(1, d + 1):
            if d % e == 0:
                out.add(e)
    return frozenset(out)


def sample_spectrum(g: PermGroup, trials: int, seed: int) -> OrderSpectrum:
    """Orders of `trials` pseudo-random generator words; never authoritative.

    The word sequence is a random walk driven by the documented 64-bit LCG,
    so runs are reproducible for a fixed seed. The group order itself is
    exact (deterministic stabilizer-chain construction). The sampled order
    set is closed under divisors, since every power of a sampled word is
    also a group element.
    """
    if trials < 1:
        raise GroupError("trials must be at least 1")
    gens = [_internal(p) for p in g.generators]
    state = seed & LCG_MASK
    word = _identity(g.degree)
    orders = {1}
    for _ in range(trials):
        state = (LCG_MULT * state + LCG_INC) & LCG_MASK
        word = _compose(word, gens[(state >> 32) % len(gens)])
        orders.add(_element_order(word))
    return OrderSpectrum(group_order(g), _closed_under_divisors(orders), exhaustive=False)


def prime_graph_complement(s: OrderSpectrum, allow_sampled: bool = False):
    """The complement of the Gruenberg-Kegel graph described by a spectrum.

    Vertices are the primes dividing the group order; the edge p-q is present
    iff pq is not an element order. Refuses sampled spectra unless the caller
    passes allow_sampled=True, in which case the result is only advisory.
    """
    from .graphs import graph

    if not s.exhaustive and not allow_sampled:
        raise GroupError(
            "refusing to build a prime graph complement from a sampled spectrum"
            " (pass allow_sampled=True for an advisory graph)"
        )
    primes = prime_factors(s.group_order)
    labels = [str(p) for p in primes]
    edges = [
        (str(p), str(q))
        for i, p in enumerate(primes)
        for q in primes[i + 1:]
        if p * q not in s.orders
    ]
    return graph(labels, edges)


# ---------------------------------------------------------------------------
# Stabilizer chain (deterministic, no base change)
# ---------------------------------------------------------------------------

def _orbit_transversal(base: int, gens: list, identity):
    transversal = {base: identity}
    frontier = [base]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = s[x]
            if y not in transversal:
                transversal[y] = _compose(transversal[x], s)
                frontier.append(y)
    return transversal


class _Chain:
    """Stabilizer chain built by the classic deterministic Schreier-Sims.

    A strong generator recorded at level l fixes the first l base points, so
    the generating set for the stabilizer at level i is every strong
    generator recorded at a level >= i.
    """

    def __init__(self, degree: int, gens: list):
        self.identity = _identity(degree)
        self.bases: list = []
        self.strong: list = []  # (level, perm) pairs
        self.transversals: list = []
        for g in gens:
            self._add(g)
        self._close()

    def _gens_at(self, i: int) -> list:
        return [g for level, g in self.strong if level >= i]

    def _sift(self, g, start: int = 0):
        for i in range(start, len(self.bases)):
            x = g[self.bases[i]]
            t = self.transversals[i]
            if x not in t:
                return g, i
            g = _compose(g, _inverse(t[x]))
        return g, len(self.bases)

    def _add(self, g, level: Optional[int] = None):
        if g == self.identity:
            return False
        if level is None:
            g, level = self._sift(g)
            if g == self.identity:
                return False
        if level == len(self.bases):
            moved = next(i for i, j in enumerate(g) if i != j)
            self.bases.append(moved)
            self.transversals.append({})
        self.strong.append((level, g))
        for j in range(level + 1):
            self.transversals[j] = _orbit_transversal(
                self.bases[j], self._gens_at(j), self.identity
            )
        return True

    def _close(self):
        # Fixed-point pass over Schreier generators; each pass either closes
        # every level or strictly grows the chain, so this terminates.
        changed = True
        while changed:
            changed = False
            for i in range(len(self.bases)):
                t = dict(self.transversals[i])
                gens_i = self._gens_at(i)
                for x, ux in t.items():
                    for s in gens_i:
                        residue = _compose(
                            _compose(ux, s), _inverse(self.transversals[i][s[x]])
                        )
                        r, level = self._sift(residue, i + 1)
                        if r != self.identity:
                            self._add(r, level)
                            changed = True

    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def contains(self, g) -> bool:
        r, _ = self._sift(g)
        return r == self.identity


def group_order(g: PermGroup) -> int:
    """Exact group order by deterministic stabilizer-chain construction."""
    return _Chain(g.degree, [_internal(p) for p in g.generators]).order()


# ---------------------------------------------------------------------------
# p-group shape / Frobenius Criterion
# ---------------------------------------------------------------------------

def p_group_shape(g: PermGroup, limit: int = P_GROUP_LIMIT) -> PGroupShape:
    """Classify a p-group as cyclic/Klein-4/dihedral/generalized quaternion.

    The Frobenius Criterion holds exactly when the tag is not "other".
    Recognition is by order statistics: an element of full order means
    cyclic; a noncyclic 2-group with a unique involution is generalized
    quaternion; a 2-group with a cyclic subgroup of index 2 and 2^(k-1)+1
    involutions is dihedral. Raises GroupError for non-prime-power orders.
    """
    elements = _group_elements(g, limit)
    n = len(elements)
    if n == 1:
        return PGroupShape("cyclic")
    fact = factorization(n)
    if len(fact) != 1:
        raise GroupError(f"group order {n} is not a prime power")
    orders = [_element_order(p) for p in elements]
    max_order = max(orders)
    if max_order == n:
        return PGroupShape("cyclic")
    if n == 4:
        return PGroupShape("klein4")
    (p,) = fact
    if p == 2:
        involutions = sum(1 for d in orders if d == 2)
        if involutions == 1:
            return PGroupShape("generalized_quaternion")
        if max_order == n // 2 and involutions == n // 2 + 1:
            return PGroupShape("dihedral")
    return PGroupShape("other")


# ---------------------------------------------------------------------------
# Permutation-group files
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupFile:
    name: str
    group: PermGroup
    subgroups: dict  # name -> PermGroup


def read_group_file(path) -> GroupFile:
    """Read the JSON permutation-group format.

    Layout: {"name": str, "degree": int, "generators": [[1-based images]],
    "subgroups": {label: [[1-based images]]}}. The subgroups section names
    generator subsets (e.g. "sylow2") for shape tests.
    """
    data = json.loads(Path(path).read_text())
    try:
        degree = int(data["degree"])
        group = perm_group(degree, data["generators"])
        subgroups = {
            name: perm_group(degree, gens)
            for name, gens in data.get("subgroups", {}).items()
        }
    except (KeyError, TypeError) as exc:
        raise GroupError(f"{path}: malformed group file ({exc})") from exc
    return GroupFile(str(data.get("name", "")), group, subgroups)


def write_group_file(path, name: str, group: PermGroup, subgroups: Optional[dict] = None) -> None:
    payload = {
        "name": name,
        "degree": group.degree,
        "generators": [list(p.images) for p in group.generators],
    }
    if subgroups:
        payload["subgroups"] = {
            label: [list(p.images) for p in sub.generators]
            for label, sub in subgroups.items()
        }
    Path(path).write_text(json.dumps(payload) + "\n")
