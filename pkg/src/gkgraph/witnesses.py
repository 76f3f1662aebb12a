"""Constructions of the witness groups and their exact character data.

Builds Sz(q) for q = 8, 32 acting on its ovoid in PG(3,q) and PSL(2,32)
acting on the projective line, keeping the permutation action and the
natural matrix representation aligned generator by generator. The field
automorphism extends each group to its automorphism group.

From the natural modules the module closure under Frobenius twists and
tensor products yields every irreducible mod-2 Brauer character, whose
values are read off eigenvalue multiplicities over a big enough extension
field. The same machinery assembles the restricted-scalars matrices for
the large characteristic-2 modules of the automorphism groups (dimensions
48 over GF(2) for Aut(Sz(8)), 20 and 80 for Aut(PSL(2,32))).
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import CharacterTable, Cyclotomic, character_table, cyclotomic, galois_twist, rational
from .gf import (
    Field,
    GFMatrix,
    entrywise_frobenius,
    field,
    find_embedding,
    embed_element,
    frobenius_restricted,
    identity_matrix,
    mat_mul,
    matrix,
    nullity,
    restrict_scalars,
    tensor_product,
)
from .numutil import is_prime, prime_factors


@dataclass
class WitnessGroup:
    """A permutation group with matrix generators aligned to the perm ones."""

    name: str
    field: Field
    dim: int
    degree: int
    perm_gens: list      # 0-based image tuples, same order as mat_gens
    mat_gens: list       # GFMatrix over `field`
    frobenius_perm: tuple  # the field automorphism on points


# ---------------------------------------------------------------------------
# Suzuki groups
# ---------------------------------------------------------------------------

def suzuki_group(m: int) -> WitnessGroup:
    """Sz(q) for q = 2^(2m+1) on the q^2+1 points of the Tits ovoid.

    With t(x) = x^theta, theta = 2^(m+1), the ovoid consists of infinity
    together with the points (1 : x : y : x^(theta+2) + xy + y^theta). The
    generators are the unipotent maps U(a,b), the torus diag(1, l, l^(1+theta),
    l^(2+theta)) rescaled to determinant 1, and the antidiagonal involution.
    """
    k = 2 * m + 1
    q = 2**k
    f = field(2, k)
    theta = 2 ** (m + 1)

    def omega(x, y):
        return f.add(f.add(f.pow(x, theta + 2), f.mul(x, y)), f.pow(y, theta))

    infinity = (f.zero, f.zero, f.zero, f.one)
    points = [infinity]
    for x in f.elements():
        for y in f.elements():
            points.append((f.one, x, y, omega(x, y)))
    index = {p: i for i, p in enumerate(points)}
    if len(index) != q * q + 1:
        raise AssertionError("ovoid points are not distinct")

    def unipotent(a, b):
        at = f.pow(a, theta)
        return matrix(
            f,
            [
                [f.one, f.zero, f.zero, f.zero],
                [a, f.one, f.zero, f.zero],
                [b, at, f.one, f.zero],
                [omega(a, b), f.add(f.mul(a, at), b), a, f.one],
            ],
        )

    zeta = f.element([0, 1])
    inv4 = pow(4, -1, q - 1)
    scale_exp = (-(4 + 2 * theta) * inv4) % (q - 1)
    c = f.pow(zeta, scale_exp)
    torus = matrix(
        f,
        [
            [c, f.zero, f.zero, f.zero],
            [f.zero, f.mul(c, zeta), f.zero, f.zero],
            [f.zero, f.zero, f.mul(c, f.pow(zeta, 1 + theta)), f.zero],
            [f.zero, f.zero, f.zero, f.mul(c, f.pow(zeta, 2 + theta))],
        ],
    )
    flip = matrix(
        f,
        [
            [f.zero, f.zero, f.zero, f.one],
            [f.zero, f.zero, f.one, f.zero],
            [f.zero, f.one, f.zero, f.zero],
            [f.one, f.zero, f.zero, f.zero],
        ],
    )
    mat_gens = [unipotent(f.one, f.zero), unipotent(zeta, f.zero), torus, flip]
    perm_gens = [_matrix_to_perm(f, g, points, index) for g in mat_gens]
    frob = _frobenius_perm(f, points, index)
    return WitnessGroup(f"Sz({q})", f, 4, q * q + 1, perm_gens, mat_gens, frob)


def suzuki_sylow2_matrices(group: WitnessGroup) -> list:
    """Unipotent generators of the Sylow 2-subgroup fixing infinity."""
    f = group.field
    theta = {8: 4, 32: 8}[f.order]

    def unipotent(a, b):
        at = f.pow(a, theta)
        return matrix(
            f,
            [
                [f.one, f.zero, f.zero, f.zero],
                [a, f.one, f.zero, f.zero],
                [b, at, f.one, f.zero],
                [
                    f.add(f.add(f.pow(a, theta + 2), f.mul(a, b)), f.pow(b, theta)),
                    f.add(f.mul(a, at), b),
                    a,
                    f.one,
                ],
            ],
        )

    gens = []
    for e in range(f.k):
        coeffs = [0] * f.k
        coeffs[e] = 1
        gens.append(unipotent(f.element(coeffs), f.zero))
    return gens


# ---------------------------------------------------------------------------
# PSL(2, 2^k)
# ---------------------------------------------------------------------------

def psl2_group(k: int) -> WitnessGroup:
    """PSL(2, 2^k) = SL(2, 2^k) on the 2^k + 1 points of the projective line."""
    f = field(2, k)
    q = 2**k
    # first-nonzero-normalized representatives: (1 : t) plus (0 : 1)
    points = [(f.one, t) for t in f.elements()] + [(f.zero, f.one)]
    index = {p: i for i, p in enumerate(points)}
    zeta = f.element([0, 1])
    mat_gens = [
        matrix(f, [[f.one, f.one], [f.zero, f.one]]),
        matrix(f, [[zeta, f.zero], [f.zero, f.inv(zeta)]]),
        matrix(f, [[f.zero, f.one], [f.one, f.zero]]),
    ]
    perm_gens = [_matrix_to_perm(f, g, points, index) for g in mat_gens]
    frob = _frobenius_perm(f, points, index)
    return WitnessGroup(f"PSL(2,{q})", f, 2, q + 1, perm_gens, mat_gens, frob)


# ---------------------------------------------------------------------------
# Matrix action on projective points
# ---------------------------------------------------------------------------

def matrix_from_rows(f: Field, rows) -> GFMatrix:
    return matrix(f, rows)


def _normalize(f: Field, v: tuple) -> tuple:
    lead = next((c for c in v if c != f.zero), None)
    if lead is None:
        raise AssertionError("zero vector has no projective class")
    if lead == f.one:
        return v
    inv = f.inv(lead)
    return tuple(f.mul(inv, c) for c in v)


def _matrix_to_perm(f: Field, m: GFMatrix, points: list, index: dict) -> tuple:
    images = []
    for pt in points:
        w = tuple(
            _dot(f, row, pt)
            for row in m.entries
        )
        images.append(index[_normalize(f, w)])
    if len(set(images)) != len(points):
        raise AssertionError("matrix does not permute the point set")
    return tuple(images)


def _dot(f: Field, row: tuple, v: tuple):
    acc = f.zero
    for x, y in zip(row, v):
        if x != f.zero and y != f.zero:
            acc = f.add(acc, f.mul(x, y))
    return acc


def _frobenius_perm(f: Field, points: list, index: dict) -> tuple:
    images = []
    for pt in points:
        w = _normalize(f, tuple(f.mul(c, c) for c in pt))
        images.append(index[w])
    return tuple(images)


# ---------------------------------------------------------------------------
# Element enumeration with word recovery, conjugacy classes, power maps
# ---------------------------------------------------------------------------

def _compose(p, q):
    return tuple(map(q.__getitem__, p))


def _perm_order(p) -> int:
    from math import gcd

    order = 1
    seen = bytearray(len(p))
    for start in range(len(p)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = 1
            x = p[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


def enumerate_with_parents(perm_gens: list) -> dict:
    """BFS closure mapping each element to (parent, generator index)."""
    n = len(perm_gens[0])
    identity = tuple(range(n))
    parents = {identity: None}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for gi, s in enumerate(perm_gens):
                w = _compose(p, s)
                if w not in parents:
                    parents[w] = (p, gi)
                    nxt.append(w)
        frontier = nxt
    return parents


def matrix_of_element(f: Field, mat_gens: list, parents: dict, element: tuple) -> GFMatrix:
    """Rebuild the aligned matrix by walking the BFS word of a permutation.

    Matrices act on column vectors, so composing permutations left to right
    multiplies the matrices right to left; the ascending parent walk already
    yields the factors in matrix-product order.
    """
    out = identity_matrix(f, mat_gens[0].n)
    cur = element
    while parents[cur] is not None:
        parent, gi = parents[cur]
        out = mat_mul(f, out, mat_gens[gi])
        cur = parent
    return out


@dataclass
class ClassData:
    reps: list          # class representative permutations, identity first
    class_of: dict      # permutation -> class index
    sizes: list
    orders: list
    names: list

    def power_map(self, e: int) -> list:
        return [self.class_of[_perm_power(rep, e)] for rep in self.reps]


def _perm_power(p: tuple, e: int) -> tuple:
    out = tuple(range(len(p)))
    base = p
    while e:
        if e & 1:
            out = _compose(out, base)
        base = _compose(base, base)
        e >>= 1
    return out


def conjugacy_classes(perm_gens: list, elements) -> ClassData:
    """Conjugacy classes by orbit closure under generator conjugation."""
    inv_gens = []
    for s in perm_gens:
        inv = [0] * len(s)
        for i, j in enumerate(s):
            inv[j] = i
        inv_gens.append(tuple(inv))
    unseen = set(elements)
    raw = []
    while unseen:
        seed = min(unseen)
        members = {seed}
        frontier = [seed]
        while frontier:
            g = frontier.pop()
            for s, sinv in zip(perm_gens, inv_gens):
                h = _compose(_compose(sinv, g), s)
                if h not in members:
                    members.add(h)
                    frontier.append(h)
        unseen -= members
        raw.append((min(members), members))
    raw.sort(key=lambda item: (_perm_order(item[0]), len(item[1]), item[0]))
    reps = [rep for rep, _ in raw]
    class_of = {}
    for idx, (_, members) in enumerate(raw):
        for g in members:
            class_of[g] = idx
    sizes = [len(members) for _, members in raw]
    orders = [_perm_order(rep) for rep in reps]
    names = []
    letter: dict = {}
    for o in orders:
        letter[o] = letter.get(o, 0)
        names.append(f"{o}{chr(ord('a') + letter[o])}")
        letter[o] += 1
    return ClassData(reps, class_of, sizes, orders, names)


# ---------------------------------------------------------------------------
# Brauer character values from eigenvalue multiplicities
# ---------------------------------------------------------------------------

def _primitive_element(f: Field) -> tuple:
    n = f.order - 1
    primes = prime_factors(n)
    for x in f.elements():
        if x == f.zero:
            continue
        if all(f.pow(x, n // p) != f.one for p in primes):
            return x
    raise AssertionError("no primitive element found")


class BrauerValueExtractor:
    """Eigenvalue-multiplicity reader for matrices in odd order, char 2.

    Works over an extension field containing both the matrix entries and
    all needed roots of unity; the Brauer value at g is the sum of the
    complex roots of unity matching the eigenvalues of the matrix, encoded
    exactly as a cyclotomic over the element order.
    """

    def __init__(self, base: Field, ext_degree: int):
        self.base = base
        self.big = field(2, ext_degree)
        self.root = find_embedding(base, self.big)
        self.gamma = _primitive_element(self.big)
        self.unit_order = self.big.order - 1

    def embed_matrix(self, m: GFMatrix) -> GFMatrix:
        return GFMatrix(
            self.big.spec,
            m.n,
            tuple(
                tuple(embed_element(e, self.root, self.big) for e in row)
                for row in m.entries
            ),
        )

    def value(self, m: GFMatrix, element_order: int) -> Cyclotomic:
        if element_order == 1:
            return rational(m.n)
        if self.unit_order % element_order != 0:
            raise AssertionError(f"extension field lacks order-{element_order} roots")
        big = self.big
        alpha = big.pow(self.gamma, self.unit_order // element_order)
        me = self.embed_matrix(m)
        terms = []
        total = 0
        for d in range(element_order):
            shift = big.pow(alpha, d)
            shifted = GFMatrix(
                big.spec,
                me.n,
                tuple(
                    tuple(
                        big.sub(e, shift) if i == j else e
                        for j, e in enumerate(row)
                    )
                    for i, row in enumerate(me.entries)
                ),
            )
            mult = nullity(big, shifted)
            total += mult
            if mult:
                terms.append((d, mult))
        if total != m.n:
            raise AssertionError(
                f"matrix of order {element_order} is not diagonalizable over the extension"
            )
        return cyclotomic(element_order, terms)


def _twist_row(row: list, orders: list, k: int) -> list:
    """Frobenius twist of a Brauer character row: zeta -> zeta^(2^k)."""
    return [galois_twist(v, pow(2, k, o)) if o > 1 else v for v, o in zip(row, orders)]


def _product_row(a: list, b: list) -> list:
    return [x * y for x, y in zip(a, b)]


def build_mod2_table(
    group: WitnessGroup,
    class_data: ClassData,
    natural_values: list,
    twist_count: int,
    group_order: int,
) -> CharacterTable:
    """Assemble the full mod-2 Brauer table from the natural module.

    The irreducible characters in characteristic 2 for these groups are
    exactly the products of distinct Frobenius twists of the natural one
    (the empty product being the trivial character).
    """
    regular = [i for i, o in enumerate(class_data.orders) if o % 2 != 0]
    orders = [class_data.orders[i] for i in regular]
    sizes = [class_data.sizes[i] for i in regular]
    names = [class_data.names[i] for i in regular]
    reg_index = {old: new for new, old in enumerate(regular)}

    base_row = [natural_values[i] for i in regular]
    twists = [_twist_row(base_row, orders, k) for k in range(twist_count)]
    rows = []
    for mask in range(1 << twist_count):
        row = [rational(1)] * len(regular)
        for k in range(twist_count):
            if mask >> k & 1:
                row = _product_row(row, twists[k])
        rows.append((mask, row))

    def degree_of(row):
        from .characters import rational_average

        return rational_average(row[0])

    rows.sort(key=lambda item: (degree_of(item[1]), item[0]))

    max_order = max(orders)
    power_maps = {}
    for p in range(2, max_order):
        if not is_prime(p):
            continue
        full = class_data.power_map(p)
        power_maps[p] = [reg_index[full[i]] for i in regular]

    return character_table(
        group.name,
        group_order,
        2,
        [(names[i], orders[i], sizes[i]) for i in range(len(regular))],
        power_maps,
        [row for _, row in rows],
    )


# ---------------------------------------------------------------------------
# Restricted-scalars modules for the automorphism groups
# ---------------------------------------------------------------------------

def twisted_tensor_matrix(f: Field, m: GFMatrix, twists: list) -> GFMatrix:
    """Tensor product of the given Frobenius twists of a natural matrix."""
    out = None
    for k in twists:
        t = entrywise_frobenius(f, m, k) if k else m
        out = t if out is None else tensor_product(f, out, t)
    return out


def restricted_module_matrix(f: Field, m: GFMatrix, twists: list) -> GFMatrix:
    """GF(2)-matrix of a twisted tensor module after restriction of scalars."""
    return restrict_scalars(f, twisted_tensor_matrix(f, m, twists))


def frobenius_module_matrix(f: Field, tensor_dim: int) -> GFMatrix:
    """GF(2)-matrix of the field automorphism acting entrywise on GF(q)^d."""
    return frobenius_restricted(f, tensor_dim)
