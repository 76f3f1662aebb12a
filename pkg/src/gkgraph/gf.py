"""Exact arithmetic over GF(p^k) and semidirect-product prime graphs.

Field elements are coefficient vectors (length k, low-to-high) with
schoolbook multiplication and explicit reduction by the modulus; no
precomputed log tables. The payoff operation is `semidirect_pgc`, which
reads off the prime graph complement of T ⋉ V for a vector space V in
characteristic p from the eigenvalue-1 test on representing matrices of
prime-order class representatives.

Everything here is a pure value computation, re-entrant and safe to use
concurrently.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .numutil import is_prime


class GFError(ValueError):
    """Malformed field/matrix data or violated preconditions."""


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) presented as GF(p)[x] modulo a monic irreducible of degree k."""

    p: int
    k: int
    modulus: tuple  # k+1 coefficients, low-to-high, monic


def _poly_trim(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_divmod(a: list, b: list, p: int):
    """Polynomial division over GF(p); b must be nonzero."""
    a = list(a)
    binv = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and _poly_trim(a):
        shift = len(a) - len(b)
        c = a[-1] * binv % p
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _poly_trim(a)
    return q, a


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic divisor of degree up to k/2."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            _, rem = _poly_divmod(list(modulus), divisor, p)
            if not rem:
                return False
    return True


def default_modulus(p: int, k: int) -> tuple:
    """Lexicographically least monic irreducible of degree k over GF(p)."""
    if k == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=k):
        cand = tuple(tail) + (1,)
        if cand[0] != 0 and _is_irreducible(cand, p):
            return cand
    raise GFError(f"no irreducible of degree {k} over GF({p})")  # unreachable


class Field:
    """Runtime arithmetic for a FieldSpec; elements are coefficient tuples."""

    def __init__(self, spec: FieldSpec):
        if not is_prime(spec.p):
            raise GFError(f"characteristic {spec.p} is not prime")
        if spec.k < 1:
            raise GFError("extension degree must be >= 1")
        if len(spec.modulus) != spec.k + 1 or spec.modulus[-1] != 1:
            raise GFError("modulus must be monic of degree k")
        if any(c % spec.p != c for c in spec.modulus):
            raise GFError("modulus coefficients must be reduced mod p")
        if not _is_irreducible(spec.modulus, spec.p):
            raise GFError(f"modulus {spec.modulus} is reducible over GF({spec.p})")
        self.spec = spec
        self.p = spec.p
        self.k = spec.k
        self.zero = (0,) * spec.k
        self.one = (1,) + (0,) * (spec.k - 1)
        self.order = spec.p ** spec.k

    def element(self, coeffs: Iterable[int]) -> tuple:
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.k:
            cs = self._reduce(cs)
        return tuple(cs + [0] * (self.k - len(cs)))

    def scalar(self, c: int) -> tuple:
        return self.element([c])

    def _reduce(self, cs: list) -> list:
        m = self.spec.modulus
        for i in range(len(cs) - 1, self.k - 1, -1):
            c = cs[i]
            if c:
                cs[i] = 0
                for j in range(self.k + 1):
                    cs[i - self.k + j] = (cs[i - self.k + j] - c * m[j]) % self.p
        del cs[self.k:]
        return cs

    def add(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        return tuple(self._reduce(prod) + [0] * (self.k - min(self.k, len(prod))))

    def inv(self, a: tuple) -> tuple:
        """Inverse by extended Euclid over the modulus."""
        if a == self.zero:
            raise GFError("zero has no inverse")
        p = self.p
        r0, r1 = list(self.spec.modulus), _poly_trim(list(a))
        s0, s1 = [0], [1]
        while True:
            q, r = _poly_divmod(r0, r1, p)
            if not r:
                break
            s = [0] * max(len(s0), len(q) + len(s1) - 1)
            for i, c in enumerate(s0):
                s[i] = c
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        s[i + j] = (s[i + j] - qc * sc) % p
            r0, r1, s0, s1 = r1, r, s1, s
        lead_inv = pow(r1[-1], p - 2, p)
        return self.element([c * lead_inv % p for c in s1])

    def pow(self, a: tuple, e: int) -> tuple:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def elements(self):
        for tail in itertools.product(range(self.p), repeat=self.k):
            yield tuple(tail)

    def multiplicative_order(self, a: tuple) -> int:
        if a == self.zero:
            raise GFError("zero has no multiplicative order")
        x, n = a, 1
        while x != self.one:
            x = self.mul(x, a)
            n += 1
        return n

    def eval_poly(self, coeffs: Sequence[int], x: tuple) -> tuple:
        """Evaluate a GF(p)-polynomial at a point of this field."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), self.scalar(c))
        return acc


def field(p: int, k: int, modulus: Optional[Sequence[int]] = None) -> Field:
    mod = tuple(modulus) if modulus is not None else default_modulus(p, k)
    return Field(FieldSpec(p, k, mod))


def find_embedding(src: Field, dst: Field) -> tuple:
    """A root of src's modulus in dst, defining GF(p^j) -> GF(p^k), j | k."""
    if src.p != dst.p or dst.k % src.k != 0:
        raise GFError("no field embedding exists")
    for x in dst.elements():
        if dst.eval_poly(src.spec.modulus, x) == dst.zero:
            return x
    raise GFError("embedding root not found")  # unreachable for valid fields


def embed_element(a: tuple, root: tuple, dst: Field) -> tuple:
    return dst.eval_poly(a, root) if len(a) > 1 else dst.scalar(a[0])


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GFMatrix:
    field: FieldSpec
    n: int
    entries: tuple  # n rows, each a tuple of n coefficient tuples


def matrix(f: Field, rows) -> GFMatrix:
    ents = tuple(tuple(f.element(e) for e in row) for row in rows)
    n = len(ents)
    if any(len(row) != n for row in ents):
        raise GFError("matrix must be square")
    return GFMatrix(f.spec, n, ents)


def identity_matrix(f: Field, n: int) -> GFMatrix:
    return GFMatrix(
        f.spec, n,
        tuple(tuple(f.one if i == j else f.zero for j in range(n)) for i in range(n)),
    )


def mat_mul(f: Field, a: GFMatrix, b: GFMatrix) -> GFMatrix:
    if a.field != f.spec or b.field != f.spec or a.n != b.n:
        raise GFError("matrix dimension/field mismatch")
    n = a.n
    bt = tuple(zip(*b.entries))  # columns of b
    rows = []
    for arow in a.entries:
        row = []
        for bcol in bt:
            acc = f.zero
            for x, y in zip(arow, bcol):
                if x != f.zero and y != f.zero:
                    acc = f.add(acc, f.mul(x, y))
            row.append(acc)
        rows.append(tuple(row))
    return GFMatrix(f.spec, n, tuple(rows))


def mat_pow(f: Field, a: GFMatrix, e: int) -> GFMatrix:
    out = identity_matrix(f, a.n)
    base = a
    while e:
        if e & 1:
            out = mat_mul(f, out, base)
        base = mat_mul(f, base, base)
        e >>= 1
    return out


def mat_sub(f: Field, a: GFMatrix, b: GFMatrix) -> GFMatrix:
    return GFMatrix(
        f.spec, a.n,
        tuple(
            tuple(f.sub(x, y) for x, y in zip(ra, rb))
            for ra, rb in zip(a.entries, b.entries)
        ),
    )


def rank(f: Field, m: GFMatrix) -> int:
    """Exact rank by Gaussian elimination over the field."""
    rows = [list(r) for r in m.entries]
    n = m.n
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, n) if rows[i][col] != f.zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = f.inv(rows[r][col])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] != f.zero:
                c = rows[i][col]
                rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == n:
            break
    return r


def nullity(f: Field, m: GFMatrix) -> int:
    return m.n - rank(f, m)


def has_nonzero_fixed_vector(m: GFMatrix) -> bool:
    """True iff 1 is an eigenvalue, i.e. rank(m - I) < n."""
    f = Field(m.field)
    return rank(f, mat_sub(f, m, identity_matrix(f, m.n))) < m.n


def direct_sum(ms: Sequence[GFMatrix]) -> GFMatrix:
    """Block-diagonal sum; all matrices must live over the same field."""
    if not ms:
        raise GFError("direct_sum needs at least one matrix")
    spec = ms[0].field
    if any(m.field != spec for m in ms):
        raise GFError("direct_sum over mixed fields")
    f = Field(spec)
    n = sum(m.n for m in ms)
    rows = []
    offset = 0
    for m in ms:
        for row in m.entries:
            rows.append(
                tuple(f.zero for _ in range(offset))
                + row
                + tuple(f.zero for _ in range(n - offset - m.n))
            )
        offset += m.n
    return GFMatrix(spec, n, tuple(rows))


def tensor_product(f: Field, a: GFMatrix, b: GFMatrix) -> GFMatrix:
    """Kronecker product, used to assemble tensor-product modules."""
    n = a.n * b.n
    rows = []
    for i1 in range(a.n):
        for i2 in range(b.n):
            row = []
            for j1 in range(a.n):
                for j2 in range(b.n):
                    row.append(f.mul(a.entries[i1][j1], b.entries[i2][j2]))
            rows.append(tuple(row))
    return GFMatrix(f.spec, n, tuple(rows))


def entrywise_frobenius(f: Field, m: GFMatrix, times: int = 1) -> GFMatrix:
    """Apply x -> x^(p^times) to every entry."""
    q = f.p ** times
    return GFMatrix(
        f.spec, m.n,
        tuple(tuple(f.pow(x, q) for x in row) for row in m.entries),
    )


def restrict_scalars(f: Field, m: GFMatrix) -> GFMatrix:
    """View an n x n matrix over GF(p^k) as nk x nk over GF(p).

    Coordinates are taken in the basis {1, x, ..., x^(k-1)} of each factor,
    so an entry c becomes the k x k multiplication-by-c matrix.
    """
    prime = field(f.p, 1)
    k = f.k
    basis = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]

    def mult_block(c: tuple):
        cols = [f.mul(c, e) for e in basis]
        return [[cols[j][i] for j in range(k)] for i in range(k)]

    blocks = [[mult_block(c) for c in row] for row in m.entries]
    n = m.n * k
    rows = []
    for bi in range(m.n):
        for i in range(k):
            row = []
            for bj in range(m.n):
                for j in range(k):
                    row.append(prime.scalar(blocks[bi][bj][i][j]))
            rows.append(tuple(row))
    return GFMatrix(prime.spec, n, tuple(rows))


def frobenius_restricted(f: Field, n: int) -> GFMatrix:
    """The GF(p)-matrix of the entrywise Frobenius on GF(p^k)^n."""
    prime = field(f.p, 1)
    k = f.k
    basis = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
    frob_cols = [f.pow(e, f.p) for e in basis]
    block = [[frob_cols[j][i] for j in range(k)] for i in range(k)]
    size = n * k
    rows = []
    for bi in range(n):
        for i in range(k):
            row = []
            for bj in range(n):
                for j in range(k):
                    row.append(prime.scalar(block[i][j] if bi == bj else 0))
            rows.append(tuple(row))
    return GFMatrix(prime.spec, size, tuple(rows))


# ---------------------------------------------------------------------------
# Class representatives and semidirect-product prime graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassRep:
    """A matrix representing a prime-order class element acting on V."""

    element_order: int
    matrix: GFMatrix


def class_rep(f: Field, order: int, m: GFMatrix, verify: bool = True) -> ClassRep:
    if not is_prime(order):
        raise GFError(f"class representative order {order} is not prime")
    if order == f.p:
        raise GFError("class representative order equals the field characteristic")
    if verify and mat_pow(f, m, order) != identity_matrix(f, m.n):
        raise GFError(f"matrix does not have order dividing {order}")
    return ClassRep(order, m)


@dataclass(frozen=True)
class SemidirectResult:
    graph: object  # LabeledGraph
    warnings: tuple

    @property
    def clean(self) -> bool:
        return not self.warnings


def semidirect_pgc(
    base,
    pi_T: Iterable[int],
    char_p: int,
    reps: Sequence[ClassRep],
    trivial_module: bool = False,
) -> SemidirectResult:
    """Prime graph complement of T ⋉ V from class-representative matrices.

    `base` is the prime graph complement of T on vertex labels str(pi_T);
    V is a vector space in characteristic char_p. Edges not involving
    char_p are copied from base. The edge char_p-r survives iff base has it
    and no order-r representative fixes a nonzero vector. The caller must
    supply at least one representative per conjugacy class of order-r
    subgroups of T; a missing prime r whose edge is in base keeps the edge
    but is reported as a warning.
    """
    from .graphs import graph

    primes = sorted(set(pi_T))
    cp = int(char_p)
    if cp not in primes:
        raise GFError(f"characteristic {cp} is not in the prime set {primes}")
    if base.vertices != frozenset(str(p) for p in primes):
        raise GFError("base graph vertices do not match the prime set")
    for rep in reps:
        if rep.element_order == cp:
            raise GFError("representative order equals the acting characteristic")
        if rep.element_order not in primes:
            raise GFError(f"representative order {rep.element_order} not in the prime set")
        if rep.matrix.field.p != cp:
            raise GFError(
                f"representative field characteristic {rep.matrix.field.p} != {cp}"
            )
    if trivial_module:
        return SemidirectResult(base, ())

    cp_label = str(cp)
    edges = [e for e in base.edge_pairs() if cp_label not in e]
    warnings = []
    for r in primes:
        if r == cp or not base.has_edge(cp_label, str(r)):
            continue
        order_reps = [rep for rep in reps if rep.element_order == r]
        if not order_reps:
            warnings.append(
                f"no representative of order {r}: edge {cp}-{r} kept unexamined"
            )
            edges.append((cp_label, str(r)))
        elif not any(has_nonzero_fixed_vector(rep.matrix) for rep in order_reps):
            edges.append((cp_label, str(r)))
    return SemidirectResult(graph(base.vertices, edges), tuple(warnings))


# ---------------------------------------------------------------------------
# Matrix files
# ---------------------------------------------------------------------------

def read_reps_file(path):
    """Read {"field": {p,k,modulus}, "reps": [{order, matrix}]} (exact round-trip)."""
    data = json.loads(Path(path).read_text())
    try:
        fd = data["field"]
        f = field(int(fd["p"]), int(fd["k"]), [int(c) for c in fd["modulus"]])
        reps = []
        for entry in data["reps"]:
            m = matrix(f, entry["matrix"])
            reps.append(class_rep(f, int(entry["order"]), m))
    except (KeyError, TypeError) as exc:
        raise GFError(f"{path}: malformed reps file ({exc})") from exc
    return f, reps


def write_reps_file(path, f: Field, reps: Sequence[ClassRep]) -> None:
    payload = {
        "field": {"p": f.p, "k": f.k, "modulus": list(f.spec.modulus)},
        "reps": [
            {
                "order": rep.element_order,
                "matrix": [[list(e) for e in row] for row in rep.matrix.entries],
            }
            for rep in reps
        ],
    }
    Path(path).write_text(json.dumps(payload) + "\n")
