"""Exact cyclotomic arithmetic and character-table fixed-point machinery.

Character values are kept as redundant sums of roots of unity (sparse
exponent -> rational maps over a conductor); no basis reduction is ever
performed. Rationality of the quantities we need is decided by averaging
over the Galois action, which is exact and basis-free: for a sum z over
conductor n, the average of all conjugates of zeta_n^e is the Ramanujan
quotient mu(n/g)/phi(n/g) with g = gcd(e, n). A value that character theory
says must be a rational integer is recovered as that average; the averages
of z and of z*z must then be consistent, which is the data-corruption
tripwire used by every fixed-point computation.

Tables themselves are external data (exported from a CAS or synthesized
elsewhere in this package); this module validates and consumes them but
never computes character tables from a group.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .numutil import euler_phi, is_prime, moebius, prime_factors


class TableError(ValueError):
    """Malformed or internally inconsistent character-table data."""


# ---------------------------------------------------------------------------
# Cyclotomic numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cyclotomic:
    """An element of Q(zeta_n) as a sparse exponent -> rational sum.

    Zero coefficients are pruned and purely rational values are stored with
    conductor 1. Equality is structural; use rational_average for the exact
    rational content.
    """

    conductor: int
    terms: tuple  # sorted tuple of (exponent, Fraction) with nonzero Fraction

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        n = lcm(self.conductor, other.conductor)
        acc: dict = {}
        for z in (self, other):
            scale = n // z.conductor
            for e, c in z.terms:
                key = e * scale % n
                acc[key] = acc.get(key, Fraction(0)) + c
        return cyclotomic(n, acc.items())

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.conductor, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        return self + (-other)

    def __mul__(self, other: "Cyclotomic") -> "Cyclotomic":
        n = lcm(self.conductor, other.conductor)
        sa, sb = n // self.conductor, n // other.conductor
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                key = (e1 * sa + e2 * sb) % n
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return cyclotomic(n, acc.items())

    @property
    def is_zero(self) -> bool:
        return not self.terms


def cyclotomic(conductor: int, terms: Iterable) -> Cyclotomic:
    """Normalizing constructor: exponents mod n, merged, zeros pruned."""
    if conductor < 1:
        raise TableError(f"conductor must be positive, got {conductor}")
    acc: dict = {}
    for e, c in terms:
        c = Fraction(c)
        if c:
            key = int(e) % conductor
            acc[key] = acc.get(key, Fraction(0)) + c
    acc = {e: c for e, c in acc.items() if c}
    if all(e == 0 for e in acc):
        return Cyclotomic(1, ((0, acc[0]),) if acc.get(0) else ())
    return Cyclotomic(conductor, tuple(sorted(acc.items())))


def rational(q) -> Cyclotomic:
    return cyclotomic(1, [(0, Fraction(q))])


def root_of_unity(n: int, e: int = 1) -> Cyclotomic:
    return cyclotomic(n, [(e, Fraction(1))])


def cyclotomic_arith(a: Cyclotomic, b: Optional[Cyclotomic], op: str) -> Cyclotomic:
    """Dispatching surface over the exact operations: add, mul, neg."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise TableError(f"unknown cyclotomic operation {op!r}")


def galois_twist(z: Cyclotomic, k: int) -> Cyclotomic:
    """Apply zeta -> zeta^k; an automorphism when gcd(k, conductor) = 1."""
    if gcd(k, z.conductor) != 1:
        raise TableError(f"{k} is not coprime to the conductor {z.conductor}")
    return cyclotomic(z.conductor, (((e * k) % z.conductor, c) for e, c in z.terms))


def rational_average(z: Cyclotomic) -> Fraction:
    """Average of z over the Galois group of Q(zeta_n)/Q, exactly.

    Equals z itself whenever z is rational; computed termwise through the
    Ramanujan sums, so no basis reduction is needed.
    """
    n = z.conductor
    total = Fraction(0)
    for e, c in z.terms:
        m = n // gcd(e, n)
        total += c * Fraction(moebius(m), euler_phi(m))
    return total


def equals_rational(z: Cyclotomic, q) -> bool:
    """Exact, basis-free test that z is the rational number q.

    Checks that both z and z*z average to the right rationals; a value whose
    average happens to match but which is not rational fails on the square.
    """
    q = Fraction(q)
    return rational_average(z) == q and rational_average(z * z) == q * q


# ---------------------------------------------------------------------------
# Character tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjClass:
    name: str
    element_order: int
    size: int


@dataclass(frozen=True)
class CharacterTable:
    """An ordinary (modulus 0) or Brauer (modulus p) character table."""

    group_name: str
    group_order: int
    modulus: int
    classes: tuple  # of ConjClass, identity first
    power_maps: dict  # prime -> tuple of class indices (class of x^prime)
    characters: tuple  # rows, each a tuple of Cyclotomic

    def class_index_of_power(self, cls: int, j: int) -> int:
        """Class of g^j for g in class cls, by chaining prime power maps."""
        j = j % self.classes[cls].element_order
        if j == 0:
            return 0
        c = cls
        m, f = j, 2
        while m > 1:
            while m % f == 0:
                c = self.power_maps[f][c]
                m //= f
            f += 1 if f == 2 else 2
        return c


def validate_table(t: CharacterTable) -> None:
    """Check every structural invariant; errors carry row/column coordinates."""
    if t.group_order < 1:
        raise TableError("group order must be positive")
    if t.modulus and not is_prime(t.modulus):
        raise TableError(f"modulus {t.modulus} is neither 0 nor prime")
    if not t.classes:
        raise TableError("table has no classes")
    if t.classes[0].element_order != 1 or t.classes[0].size != 1:
        raise TableError("class 0 must be the identity class")
    for i, c in enumerate(t.classes):
        if c.size < 1 or t.group_order % c.size != 0:
            raise TableError(f"class {i} ({c.name}): size {c.size} does not divide the group order")
        if c.element_order < 1 or t.group_order % c.element_order != 0:
            raise TableError(f"class {i} ({c.name}): order {c.element_order} does not divide the group order")
        if t.modulus and c.element_order % t.modulus == 0:
            raise TableError(
                f"class {i} ({c.name}): order divisible by the modulus {t.modulus}"
            )
    if t.modulus == 0 and sum(c.size for c in t.classes) != t.group_order:
        raise TableError("class sizes do not sum to the group order")
    max_order = max(c.element_order for c in t.classes)
    for q in range(2, max_order):
        if not is_prime(q):
            continue
        if q not in t.power_maps:
            raise TableError(f"missing power map for prime {q}")
    for q, pmap in t.power_maps.items():
        if len(pmap) != len(t.classes):
            raise TableError(f"power map for {q} has wrong length")
        for i, target in enumerate(pmap):
            if not 0 <= target < len(t.classes):
                raise TableError(f"power map for {q}, class {i}: index {target} out of range")
            o = t.classes[i].element_order
            expected = o // q if o % q == 0 else o
            if t.classes[target].element_order != expected:
                raise TableError(
                    f"power map for {q}, class {i}: target order "
                    f"{t.classes[target].element_order}, expected {expected}"
                )
    for r, row in enumerate(t.characters):
        if len(row) != len(t.classes):
            raise TableError(f"character {r}: wrong number of values")
        deg = rational_average(row[0])
        if deg.denominator != 1 or deg <= 0 or not equals_rational(row[0], deg):
            raise TableError(f"character {r}, class 0: degree is not a positive integer")


def character_table(
    group_name: str,
    group_order: int,
    modulus: int,
    classes: Sequence,
    power_maps: dict,
    characters: Sequence,
) -> CharacterTable:
    t = CharacterTable(
        group_name,
        group_order,
        modulus,
        tuple(ConjClass(*c) if not isinstance(c, ConjClass) else c for c in classes),
        {int(q): tuple(pm) for q, pm in power_maps.items()},
        tuple(tuple(row) for row in characters),
    )
    validate_table(t)
    return t


# ---------------------------------------------------------------------------
# Fixed points and edge-removal sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeRemovalSet:
    character_index: int
    edges: frozenset  # of frozenset({str(p), str(q)}) pairs


def fixed_point_dimension(t: CharacterTable, chi: int, cls: int) -> int:
    """dim of the fixed subspace of a prime-order class element.

    Computes (1/r) * sum over the cyclic group generated by g of the
    character values, r the element order; asserts the result is a
    nonnegative integer before returning it.
    """
    c = t.classes[cls]
    r = c.element_order
    if not is_prime(r):
        raise TableError(f"class {cls} ({c.name}): unsupported composite order {r}")
    if t.modulus and r == t.modulus:
        raise TableError(f"class {cls}: order equals the table modulus {t.modulus}")
    row = t.characters[chi]
    total = row[0]  # g^r = identity
    for j in range(1, r):
        total = total + row[t.class_index_of_power(cls, j)]
    avg = rational_average(total)
    if avg.denominator != 1 or avg % r != 0 or avg < 0 or not equals_rational(total, avg):
        raise TableError(
            f"inconsistent table data: character {chi}, class {cls} ({c.name}) "
            f"gives fixed-point sum {avg}, not a nonnegative multiple of {r}"
        )
    return int(avg) // r


def edge_removal_set(t: CharacterTable, chi: int) -> EdgeRemovalSet:
    """Edges p-q removed by the module of row chi, p the table modulus."""
    if not t.modulus:
        raise TableError("edge-removal sets need a Brauer table (nonzero modulus)")
    p = t.modulus
    removed = set()
    for q in prime_factors(t.group_order):
        if q == p:
            continue
        for cls, c in enumerate(t.classes):
            if c.element_order == q and fixed_point_dimension(t, chi, cls) > 0:
                removed.add(frozenset({str(p), str(q)}))
                break
    return EdgeRemovalSet(chi, frozenset(removed))


def removal_union_closure(removal_sets: Sequence[frozenset]) -> set:
    """All unions of nonempty subsets of the given edge sets."""
    distinct = set(removal_sets)
    out = set(distinct)
    frontier = set(distinct)
    while frontier:
        fresh = set()
        for u in frontier:
            for s in distinct:
                w = u | s
                if w not in out:
                    out.add(w)
                    fresh.add(w)
        frontier = fresh
    return out


def apply_removals(base, removals: Iterable) -> set:
    """base minus each removal edge-set, deduplicated as labeled graphs."""
    from .graphs import graph

    out = set()
    for rem in removals:
        edges = [e for e in base.edges if e not in rem]
        out.add(graph(base.vertices, edges))
    return out


def achievable_graphs(t: CharacterTable, base) -> set:
    """Prime graph complements achievable by extensions with a p-group.

    Every graph of the form base minus the union of the removal sets of a
    nonempty set of table rows; base itself appears exactly when some row
    removes nothing.
    """
    sets = [edge_removal_set(t, chi).edges for chi in range(len(t.characters))]
    return apply_removals(base, removal_union_closure(sets))


def fixed_dim_lower_bound(degree: int, r: int, abs_bounds: Sequence) -> Fraction:
    """Exact lower bound (degree - sum of bounds) / r for a fixed-point dim.

    abs_bounds holds, for each of the r-1 nontrivial powers, an upper bound
    on the absolute character value there.
    """
    if degree <= 0:
        raise TableError("degree must be positive")
    if not is_prime(r):
        raise TableError(f"order {r} must be prime")
    bounds = [Fraction(b) for b in abs_bounds]
    if len(bounds) != r - 1:
        raise TableError(f"expected {r - 1} bounds, got {len(bounds)}")
    if any(b < 0 for b in bounds):
        raise TableError("bounds must be nonnegative")
    return Fraction(degree - sum(bounds), r)


# ---------------------------------------------------------------------------
# Table files
# ---------------------------------------------------------------------------

def _cyc_to_json(z: Cyclotomic) -> dict:
    return {"n": z.conductor, "terms": [[e, c.numerator, c.denominator] for e, c in z.terms]}


def _cyc_from_json(d: dict) -> Cyclotomic:
    return cyclotomic(int(d["n"]), ((int(e), Fraction(num, den)) for e, num, den in d["terms"]))


def read_table_file(path) -> CharacterTable:
    data = json.loads(Path(path).read_text())
    try:
        t = character_table(
            data["group_name"],
            int(data["group_order"]),
            int(data["modulus"]),
            [(c["name"], int(c["element_order"]), int(c["size"])) for c in data["classes"]],
            {int(q): [int(i) for i in pm] for q, pm in data["power_maps"].items()},
            [[_cyc_from_json(v) for v in row] for row in data["characters"]],
        )
    except (KeyError, TypeError) as exc:
        raise TableError(f"{path}: malformed table file ({exc})") from exc
    return t


def write_table_file(path, t: CharacterTable) -> None:
    payload = {
        "group_name": t.group_name,
        "group_order": t.group_order,
        "modulus": t.modulus,
        "classes": [
            {"name": c.name, "element_order": c.element_order, "size": c.size}
            for c in t.classes
        ],
        "power_maps": {str(q): list(pm) for q, pm in sorted(t.power_maps.items())},
        "characters": [[_cyc_to_json(v) for v in row] for row in t.characters],
    }
    Path(path).write_text(json.dumps(payload) + "\n")


# ---------------------------------------------------------------------------
# Yes/No stub oracles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RemovalStub:
    """A Yes/No removal oracle standing in for unavailable table values.

    Each pattern row states, for a block of `rows` characters, which primes
    q have some order-q element with nonzero fixed points (so edge p-q is
    removed, p the modulus).
    """

    group_name: str
    modulus: int
    columns: tuple  # primes q, as ints
    patterns: tuple  # of (rows, frozenset of removed primes)

    def removal_sets(self) -> list:
        p = self.modulus
        return [
            frozenset(frozenset({str(p), str(q)}) for q in removed)
            for _, removed in self.patterns
        ]

    def pattern_multiset(self) -> dict:
        """Yes/No pattern -> number of character rows carrying it."""
        out: dict = {}
        for rows, removed in self.patterns:
            key = tuple(q in removed for q in self.columns)
            out[key] = out.get(key, 0) + rows
        return out


def read_stub_file(path) -> RemovalStub:
    data = json.loads(Path(path).read_text())
    try:
        stub = RemovalStub(
            data["group_name"],
            int(data["modulus"]),
            tuple(int(q) for q in data["columns"]),
            tuple(
                (int(p["rows"]), frozenset(int(q) for q in p["removes"]))
                for p in data["patterns"]
            ),
        )
    except (KeyError, TypeError) as exc:
        raise TableError(f"{path}: malformed stub file ({exc})") from exc
    for i, (rows, removed) in enumerate(stub.patterns):
        if rows < 1:
            raise TableError(f"{path}: pattern {i}: empty row block")
        if not removed <= set(stub.columns):
            raise TableError(f"{path}: pattern {i}: removes a prime outside the columns")
    return stub


def write_stub_file(path, stub: RemovalStub) -> None:
    payload = {
        "group_name": stub.group_name,
        "modulus": stub.modulus,
        "columns": list(stub.columns),
        "patterns": [
            {"rows": rows, "removes": sorted(removed)} for rows, removed in stub.patterns
        ],
    }
    Path(path).write_text(json.dumps(payload) + "\n")
