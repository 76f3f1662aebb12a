"""Exact labeled and rooted graph primitives.

Vertices are arbitrary string labels (prime labels like "13" or opaque
symbols like "a"); nothing here assumes primality, so the same structures
serve both prime graph complements and abstract catalog enumeration.

All types are immutable values and all operations are pure functions, so
everything is safe for unrestricted concurrent use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

THREE_COLOR_LIMIT = 64
CANONICAL_LIMIT = 10
ENUMERATE_LIMIT = 7

#: synthetic label used to root an unrooted graph for canonical coding
PHANTOM_ROOT = "\x00unrooted"


class GraphError(ValueError):
    """Malformed graph data or a violated size bound."""


def _label_key(label: str):
    """Sort numeric labels by value, everything else lexicographically after."""
    return (0, int(label), "") if label.isdigit() else (1, 0, label)


def sorted_labels(labels: Iterable[str]) -> list[str]:
    return sorted(labels, key=_label_key)


@dataclass(frozen=True)
class LabeledGraph:
    """A finite simple graph with unique string vertex labels."""

    vertices: frozenset
    edges: frozenset  # frozenset of 2-element frozensets

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, v: str) -> frozenset:
        return frozenset(w for e in self.edges if v in e for w in e if w != v)

    def degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)

    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def edge_pairs(self) -> list[tuple]:
        """Edges as sorted label pairs, deterministically ordered."""
        pairs = [tuple(sorted_labels(e)) for e in self.edges]
        return sorted(pairs, key=lambda p: (_label_key(p[0]), _label_key(p[1])))


@dataclass(frozen=True)
class RootedGraph:
    """A labeled graph with one distinguished root vertex."""

    graph: LabeledGraph
    root: str


@dataclass(frozen=True)
class ColoringWitness:
    """A proper coloring certificate with color indices in {0, 1, 2}."""

    assignment: tuple  # sorted tuple of (label, color) pairs

    def color_of(self, v: str) -> int:
        return dict(self.assignment)[v]

    def is_proper(self, g: LabeledGraph) -> bool:
        colors = dict(self.assignment)
        if set(colors) != set(g.vertices):
            return False
        if any(c not in (0, 1, 2) for c in colors.values()):
            return False
        return all(colors[u] != colors[v] for u, v in (tuple(e) for e in g.edges))


def graph(vertices: Iterable[str], edges: Iterable = ()) -> LabeledGraph:
    """Validating constructor for LabeledGraph.

    Raises GraphError on self-loops or edge endpoints outside the vertex set.
    """
    vs = list(vertices)
    vset = frozenset(vs)
    if len(vs) != len(vset):
        raise GraphError("duplicate vertex labels")
    es = set()
    for e in edges:
        u, v = tuple(e)
        if u == v:
            raise GraphError(f"self-loop at {u!r}")
        if u not in vset or v not in vset:
            raise GraphError(f"edge endpoint not a vertex: {u!r}-{v!r}")
        es.add(frozenset((u, v)))
    return LabeledGraph(vset, frozenset(es))


def rooted(g: LabeledGraph, root: str) -> RootedGraph:
    if root not in g.vertices:
        raise GraphError(f"root {root!r} is not a vertex")
    return RootedGraph(g, root)


def complete_graph(labels: Iterable[str]) -> LabeledGraph:
    vs = list(labels)
    return graph(vs, itertools.combinations(vs, 2))


# ---------------------------------------------------------------------------
# Predicates and basic operations
# ---------------------------------------------------------------------------

def is_triangle_free(g: LabeledGraph) -> bool:
    """True iff no three vertices are mutually adjacent."""
    adj = g.adjacency()
    for e in g.edges:
        u, v = tuple(e)
        if adj[u] & adj[v]:
            return False
    return True


def three_color(g: LabeledGraph) -> Optional[ColoringWitness]:
    """Exact backtracking 3-coloring.

    Returns a proper witness when one exists, None otherwise. Exact, never
    heuristic; graphs above THREE_COLOR_LIMIT vertices are rejected.
    """
    n = len(g.vertices)
    if n > THREE_COLOR_LIMIT:
        raise GraphError(f"3-coloring limited to {THREE_COLOR_LIMIT} vertices, got {n}")
    adj = g.adjacency()
    # most-constrained-first ordering keeps the search shallow
    order = sorted(g.vertices, key=lambda v: (-len(adj[v]), _label_key(v)))
    colors: dict = {}

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        taken = {colors[w] for w in adj[v] if w in colors}
        # symmetry breaking: allow at most one fresh color
        for c in range(min(used + 1, 3)):
            if c not in taken:
                colors[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
                del colors[v]
        return False

    if not place(0, 0):
        return None
    witness = ColoringWitness(tuple(sorted(colors.items(), key=lambda kv: _label_key(kv[0]))))
    assert witness.is_proper(g)
    return witness


def is_solvable_realizable(g: LabeledGraph) -> bool:
    """True iff g is both triangle-free and 3-colorable."""
    return is_triangle_free(g) and three_color(g) is not None


def labeled_graph_product(a: LabeledGraph, b: LabeledGraph) -> LabeledGraph:
    """Label-aware graph product.

    Vertices are the union (equal labels identified). An edge of the complete
    graph on the union survives iff it is missing from neither operand's
    complement; a pair with an endpoint outside an operand's vertex set is
    unconstrained by that operand. Commutative and associative.
    """
    vs = a.vertices | b.vertices
    es = []
    for u, v in itertools.combinations(sorted_labels(vs), 2):
        ok_a = not (u in a.vertices and v in a.vertices) or a.has_edge(u, v)
        ok_b = not (u in b.vertices and v in b.vertices) or b.has_edge(u, v)
        if ok_a and ok_b:
            es.append((u, v))
    return graph(vs, es)


def induced_subgraph(g: LabeledGraph, s: Iterable[str]) -> LabeledGraph:
    sset = frozenset(s)
    unknown = sset - g.vertices
    if unknown:
        raise GraphError(f"unknown labels: {sorted_labels(unknown)}")
    return LabeledGraph(sset, frozenset(e for e in g.edges if e <= sset))


def closed_neighborhood(g: LabeledGraph, x: Iterable[str]) -> frozenset:
    xset = frozenset(x)
    unknown = xset - g.vertices
    if unknown:
        raise GraphError(f"unknown labels: {sorted_labels(unknown)}")
    out = set(xset)
    for e in g.edges:
        u, v = tuple(e)
        if u in xset:
            out.add(v)
        if v in xset:
            out.add(u)
    return frozenset(out)


def remove_vertices(g: LabeledGraph, s: Iterable[str]) -> LabeledGraph:
    return induced_subgraph(g, g.vertices - frozenset(s))


# ---------------------------------------------------------------------------
# Canonical forms and enumeration
# ---------------------------------------------------------------------------

def _adjacency_bits(order: list, adj: dict) -> tuple:
    """Upper-triangle adjacency bits, row-major, for a fixed vertex ordering."""
    n = len(order)
    return tuple(
        1 if order[j] in adj[order[i]] else 0
        for i in range(n) for j in range(i + 1, n)
    )


def _pack_code(n: int, bits: tuple) -> bytes:
    out = bytearray([n])
    acc, k = 0, 0
    for b in bits:
        acc = (acc << 1) | b
        k += 1
        if k == 8:
            out.append(acc)
            acc, k = 0, 0
    if k:
        out.append(acc << (8 - k))
    return bytes(out)


def canonical_form(rg: RootedGraph) -> bytes:
    """Canonical code of a rooted graph.

    Two rooted graphs have equal codes iff some graph isomorphism maps root
    to root. Computed as the lexicographically least adjacency-matrix bit
    string over all vertex orderings that place the root first.
    """
    g = rg.graph
    n = len(g.vertices)
    if n > CANONICAL_LIMIT:
        raise GraphError(f"canonical form limited to {CANONICAL_LIMIT} vertices, got {n}")
    adj = g.adjacency()
    rest = sorted_labels(g.vertices - {rg.root})
    best = None
    for perm in itertools.permutations(rest):
        bits = _adjacency_bits([rg.root, *perm], adj)
        if best is None or bits < best:
            best = bits
    return _pack_code(n, best if best is not None else ())


def unrooted_canonical_form(g: LabeledGraph) -> bytes:
    """Canonical code of an unrooted graph.

    Obtained by appending a synthetic isolated root, so codes here are
    directly comparable across catalogs.
    """
    if PHANTOM_ROOT in g.vertices:
        raise GraphError("reserved phantom label in vertex set")
    aug = LabeledGraph(g.vertices | {PHANTOM_ROOT}, g.edges)
    return canonical_form(RootedGraph(aug, PHANTOM_ROOT))


def _refined_code(root: str, labels: list, adj: dict) -> tuple:
    """Isomorphism-invariant dedup key, cheaper than the full canonical code.

    Vertices are grouped by a one-round degree refinement (root pinned
    first) and the adjacency bit string is minimized only over orderings
    that respect the group sequence. Equal keys iff rooted-isomorphic, but
    the byte layout is internal; canonical_form is the public code.
    """
    base = {v: (v == root, len(adj[v])) for v in labels}
    color = {
        v: (base[v], tuple(sorted(base[w] for w in adj[v])))
        for v in labels
    }
    classes: dict = {}
    for v in labels:
        classes.setdefault(color[v], []).append(v)
    keys = sorted(classes, key=repr)
    signature = tuple((repr(k), len(classes[k])) for k in keys)
    root_first = sorted(keys, key=lambda k: (not k[0][0], repr(k)))
    best = None
    for combo in itertools.product(*(itertools.permutations(classes[k]) for k in root_first)):
        order = [v for block in combo for v in block]
        bits = _adjacency_bits(order, adj)
        if best is None or bits < best:
            best = bits
    return (signature, best)


def enumerate_rooted_graphs(
    n: int, predicate: Optional[Callable[[RootedGraph], bool]] = None
) -> list[RootedGraph]:
    """One representative per rooted-isomorphism class on n vertices.

    The filter predicate, when given, must be invariant under rooted
    isomorphism; it is applied to the class representative. The result is
    deterministically ordered by canonical code.
    """
    if n > ENUMERATE_LIMIT:
        raise GraphError(f"enumeration limited to {ENUMERATE_LIMIT} vertices, got {n}")
    if n == 0:
        return []
    labels = [chr(ord("a") + i) for i in range(n)]
    root = labels[0]
    pairs = list(itertools.combinations(labels, 2))
    seen = set()
    found = []
    for mask in range(1 << len(pairs)):
        adj = {v: set() for v in labels}
        edges = []
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                adj[u].add(v)
                adj[v].add(u)
                edges.append((u, v))
        key = _refined_code(root, labels, adj)
        if key in seen:
            continue
        seen.add(key)
        rg = RootedGraph(graph(labels, edges), root)
        if predicate is None or predicate(rg):
            found.append(rg)
    found.sort(key=canonical_form)
    return found


def enumerate_unrooted_graphs(n: int) -> list[LabeledGraph]:
    """One representative per (unrooted) isomorphism class on n vertices."""
    if n + 1 > ENUMERATE_LIMIT:
        raise GraphError(f"enumeration limited to {ENUMERATE_LIMIT - 1} vertices, got {n}")
    reps = {}
    labels = [chr(ord("a") + i) for i in range(n)]
    pairs = list(itertools.combinations(labels, 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        g = graph(labels, edges)
        code = unrooted_canonical_form(g)
        if code not in reps:
            reps[code] = g
    return [reps[c] for c in sorted(reps)]


def contains_triangle(g: LabeledGraph) -> bool:
    return not is_triangle_free(g)


def rooted_isomorphic(a: RootedGraph, b: RootedGraph) -> bool:
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# Graph file format
# ---------------------------------------------------------------------------

def parse_graph_text(text: str):
    """Parse the line-oriented graph format.

    Fields: one ``vertices:`` line, any number of ``edge:`` lines, an
    optional ``root:`` line; blank lines and ``#`` comments are ignored.
    Duplicate edges and self-loops are rejected with a line-numbered error.
    Returns a RootedGraph when a root is given, else a LabeledGraph.
    """
    vertices: Optional[list] = None
    edges = []
    seen_edges = set()
    root = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise GraphError(f"line {lineno}: expected 'field: values', got {raw!r}")
        field, _, rest = line.partition(":")
        field = field.strip()
        parts = rest.split()
        if field == "vertices":
            if vertices is not None:
                raise GraphError(f"line {lineno}: duplicate vertices line")
            if len(set(parts)) != len(parts):
                raise GraphError(f"line {lineno}: duplicate vertex labels")
            vertices = parts
        elif field == "edge":
            if vertices is None:
                raise GraphError(f"line {lineno}: edge before vertices line")
            if len(parts) != 2:
                raise GraphError(f"line {lineno}: edge needs exactly two labels")
            u, v = parts
            if u == v:
                raise GraphError(f"line {lineno}: self-loop at {u!r}")
            if u not in vertices or v not in vertices:
                raise GraphError(f"line {lineno}: unknown edge endpoint in {u!r}-{v!r}")
            key = frozenset((u, v))
            if key in seen_edges:
                raise GraphError(f"line {lineno}: duplicate edge {u}-{v}")
            seen_edges.add(key)
            edges.append((u, v))
        elif field == "root":
            if len(parts) != 1:
                raise GraphError(f"line {lineno}: root needs exactly one label")
            if vertices is None or parts[0] not in vertices:
                raise GraphError(f"line {lineno}: root {parts[0]!r} is not a vertex")
            root = parts[0]
        else:
            raise GraphError(f"line {lineno}: unknown field {field!r}")
    if vertices is None:
        raise GraphError("missing vertices line")
    g = graph(vertices, edges)
    return RootedGraph(g, root) if root is not None else g


def format_graph(g, root: Optional[str] = None) -> str:
    """Serialize a graph in the line-oriented format, deterministically."""
    if isinstance(g, RootedGraph):
        root = g.root
        g = g.graph
    lines = ["vertices: " + " ".join(sorted_labels(g.vertices))]
    lines += [f"edge: {u} {v}" for u, v in g.edge_pairs()]
    if root is not None:
        lines.append(f"root: {root}")
    return "\n".join(lines) + "\n"


def read_graph_file(path):
    from pathlib import Path

    return parse_graph_text(Path(path).read_text())


def write_graph_file(path, g, root: Optional[str] = None) -> None:
    from pathlib import Path

    Path(path).write_text(format_graph(g, root))
