#!/usr/bin/env python3
"""Regenerate every data file shipped under src/gkgraph/data/.

Constructs the witness groups from scratch, checks their orders and
spectra, synthesizes the mod-2 Brauer tables and the large restricted-
scalars modules, and writes the Yes/No stub oracles and the two
hand-entered seed graphs of the automorphism groups. Everything written here is verified before it
lands on disk; run time is a few minutes, dominated by Sz(32).
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gkgraph import characters as ch
from gkgraph import permgroups as pg
from gkgraph import witnesses as wit
from gkgraph.gf import class_rep, field, write_reps_file
from gkgraph.graphs import graph, write_graph_file

DATA = Path(__file__).resolve().parent.parent / "src" / "gkgraph" / "data"


def log(msg):
    print(f"[{time.strftime('%H:%M:%S')}] {msg}", flush=True)


def to_group(wg_gens, degree):
    return pg.perm_group(degree, [[i + 1 for i in p] for p in wg_gens])


def write_group(path, name, gens, degree, subgroups=None):
    group = to_group(gens, degree)
    subs = {
        label: to_group(sub, degree) for label, sub in (subgroups or {}).items()
    }
    pg.write_group_file(path, name, group, subs)
    return group


def build_suzuki8():
    log("constructing Sz(8) on its 65-point ovoid")
    sz8 = wit.suzuki_group(1)
    parents = wit.enumerate_with_parents(sz8.perm_gens)
    assert len(parents) == 29120, len(parents)

    sylow = [
        wit._matrix_to_perm(sz8.field, m, *_ovoid_points(sz8))
        for m in wit.suzuki_sylow2_matrices(sz8)
    ]
    sylow_size = len(wit.enumerate_with_parents(sylow))
    assert sylow_size == 64, sylow_size

    group = write_group(
        DATA / "sz8.json", "Sz(8)", sz8.perm_gens, 65, {"sylow2": sylow}
    )
    spec = pg.enumerate_elements(group)
    assert spec.group_order == 29120 and spec.orders == frozenset({1, 2, 4, 5, 7, 13})

    aut_gens = sz8.perm_gens + [sz8.frobenius_perm]
    aut = write_group(DATA / "aut_sz8.json", "Aut(Sz(8))", aut_gens, 65)
    aut_spec = pg.enumerate_elements(aut)
    assert aut_spec.group_order == 87360, aut_spec.group_order
    log("Sz(8) and Aut(Sz(8)) group files written")
    return sz8, parents


def _ovoid_points(wg):
    """Rebuild the deterministic point list/index used by the construction."""
    f = wg.field
    if wg.dim == 4:
        theta = {8: 4, 32: 8}[f.order]

        def omega(x, y):
            return f.add(f.add(f.pow(x, theta + 2), f.mul(x, y)), f.pow(y, theta))

        points = [(f.zero, f.zero, f.zero, f.one)]
        for x in f.elements():
            for y in f.elements():
                points.append((f.one, x, y, omega(x, y)))
    else:
        points = [(f.one, t) for t in f.elements()] + [(f.zero, f.one)]
    return points, {p: i for i, p in enumerate(points)}


def build_psl232():
    log("constructing PSL(2,32) on the 33-point projective line")
    psl = wit.psl2_group(5)
    f = psl.field
    points, index = _ovoid_points(psl)
    sylow = []
    for e in range(f.k):
        coeffs = [0] * f.k
        coeffs[e] = 1
        m = wit.matrix_from_rows(f, [[f.one, f.element(coeffs)], [f.zero, f.one]])
        sylow.append(wit._matrix_to_perm(f, m, points, index))
    assert len(wit.enumerate_with_parents(sylow)) == 32
    group = write_group(
        DATA / "psl232.json", "PSL(2,32)", psl.perm_gens, 33, {"sylow2": sylow}
    )
    spec = pg.enumerate_elements(group)
    assert spec.group_order == 32736 and spec.orders == frozenset({1, 2, 3, 11, 31, 33})

    aut_gens = psl.perm_gens + [psl.frobenius_perm]
    aut = write_group(DATA / "aut_psl232.json", "Aut(PSL(2,32))", aut_gens, 33)
    assert pg.enumerate_elements(aut).group_order == 163680
    log("PSL(2,32) and Aut(PSL(2,32)) group files written")
    return psl


def build_suzuki32():
    log("constructing Sz(32) on its 1025-point ovoid (slow)")
    sz32 = wit.suzuki_group(2)
    write_group(DATA / "sz32.json", "Sz(32)", sz32.perm_gens, 1025)
    write_group(
        DATA / "aut_sz32.json",
        "Aut(Sz(32))",
        sz32.perm_gens + [sz32.frobenius_perm],
        1025,
    )
    log("Sz(32) group files written (order checked by scripts/sz32_survey.py)")


def build_tables_and_reps(sz8, sz8_parents, psl):
    log("computing conjugacy classes")
    cd8 = wit.conjugacy_classes(sz8.perm_gens, sz8_parents.keys())
    psl_parents = wit.enumerate_with_parents(psl.perm_gens)
    cdp = wit.conjugacy_classes(psl.perm_gens, psl_parents.keys())

    log("extracting natural-module Brauer values")
    ext8 = wit.BrauerValueExtractor(sz8.field, 12)
    nat8 = [
        None
        if o % 2 == 0
        else ext8.value(wit.matrix_of_element(sz8.field, sz8.mat_gens, sz8_parents, rep), o)
        for rep, o in zip(cd8.reps, cd8.orders)
    ]
    extp = wit.BrauerValueExtractor(psl.field, 10)
    natp = [
        None
        if o % 2 == 0
        else extp.value(wit.matrix_of_element(psl.field, psl.mat_gens, psl_parents, rep), o)
        for rep, o in zip(cdp.reps, cdp.orders)
    ]

    log("assembling mod-2 Brauer tables")
    t8 = wit.build_mod2_table(sz8, cd8, nat8, 3, 29120)
    ch.write_table_file(DATA / "sz8_mod2_table.json", t8)
    tp = wit.build_mod2_table(psl, cdp, natp, 5, 32736)
    ch.write_table_file(DATA / "psl232_mod2_table.json", tp)

    log("writing representation files")
    f2 = field(2, 1)
    reps4, reps2 = {}, {}
    for rep, o in zip(cd8.reps, cd8.orders):
        if o in (5, 7, 13) and o not in reps4:
            reps4[o] = wit.matrix_of_element(sz8.field, sz8.mat_gens, sz8_parents, rep)
    for rep, o in zip(cdp.reps, cdp.orders):
        if o in (3, 11, 31) and o not in reps2:
            reps2[o] = wit.matrix_of_element(psl.field, psl.mat_gens, psl_parents, rep)

    write_reps_file(
        DATA / "sz8_nat4_reps.json",
        sz8.field,
        [class_rep(sz8.field, o, m) for o, m in sorted(reps4.items())],
    )
    write_reps_file(
        DATA / "aut_sz8_dim48_reps.json",
        f2,
        [class_rep(f2, 3, wit.frobenius_module_matrix(sz8.field, 16))]
        + [
            class_rep(f2, o, wit.restricted_module_matrix(sz8.field, m, [0, 1]))
            for o, m in sorted(reps4.items())
        ],
    )
    write_reps_file(
        DATA / "aut_psl232_dim20_reps.json",
        f2,
        [class_rep(f2, 5, wit.frobenius_module_matrix(psl.field, 4))]
        + [
            class_rep(f2, o, wit.restricted_module_matrix(psl.field, m, [0, 1]))
            for o, m in sorted(reps2.items())
        ],
    )
    write_reps_file(
        DATA / "aut_psl232_dim80_reps.json",
        f2,
        [class_rep(f2, 5, wit.frobenius_module_matrix(psl.field, 16))]
        + [
            class_rep(f2, o, wit.restricted_module_matrix(psl.field, m, [0, 1, 2, 3]))
            for o, m in sorted(reps2.items())
        ],
    )


def build_stubs():
    log("writing Yes/No removal stubs")
    stubs = [
        ("sz8", 2, (5, 7, 13), [(1, {5, 7, 13}), (3, set()), (3, {5, 7}), (1, {5, 7, 13})]),
        ("sz8", 5, (2, 7, 13), [(10, {2, 7, 13})]),
        ("sz8", 7, (2, 5, 13), [(8, {2, 5, 13})]),
        ("sz8", 13, (2, 5, 7), [(8, {2, 5, 7})]),
        ("psl232", 2, (3, 11, 31),
         [(1, {3, 11, 31}), (5, set()), (15, {3}), (10, {3, 11}), (1, {3, 11, 31})]),
        ("psl232", 3, (2, 11, 31), [(22, {2, 11, 31})]),
        ("psl232", 11, (2, 3, 31), [(18, {2, 3, 31})]),
        ("psl232", 31, (2, 3, 11), [(18, {2, 3, 11})]),
    ]
    names = {"sz8": "Sz(8)", "psl232": "PSL(2,32)"}
    for fam, p, cols, pats in stubs:
        stub = ch.RemovalStub(
            names[fam], p, cols, tuple((n, frozenset(s)) for n, s in pats)
        )
        ch.write_stub_file(DATA / f"{fam}_mod{p}_stub.json", stub)


def build_ordinary_tables():
    log("writing S4 and A5 ordinary tables")
    r = ch.rational
    s4 = ch.character_table(
        "S4", 24, 0,
        [("1a", 1, 1), ("2a", 2, 6), ("2b", 2, 3), ("3a", 3, 8), ("4a", 4, 6)],
        {2: [0, 0, 0, 3, 2], 3: [0, 1, 2, 0, 4]},
        [
            [r(1), r(1), r(1), r(1), r(1)],
            [r(1), r(-1), r(1), r(1), r(-1)],
            [r(2), r(0), r(2), r(-1), r(0)],
            [r(3), r(1), r(-1), r(0), r(-1)],
            [r(3), r(-1), r(-1), r(0), r(1)],
        ],
    )
    ch.write_table_file(DATA / "s4_table.json", s4)

    z = ch.root_of_unity
    gold1 = z(5, 1) + z(5, 4) + r(1)
    gold2 = z(5, 2) + z(5, 3) + r(1)
    a5 = ch.character_table(
        "A5", 60, 0,
        [("1a", 1, 1), ("2a", 2, 15), ("3a", 3, 20), ("5a", 5, 12), ("5b", 5, 12)],
        {2: [0, 0, 2, 4, 3], 3: [0, 1, 0, 4, 3]},
        [
            [r(1), r(1), r(1), r(1), r(1)],
            [r(3), r(-1), r(0), gold1, gold2],
            [r(3), r(-1), r(0), gold2, gold1],
            [r(4), r(0), r(1), r(-1), r(-1)],
            [r(5), r(1), r(-1), r(0), r(0)],
        ],
    )
    ch.write_table_file(DATA / "a5_table.json", a5)


def build_seed_graphs():
    log("writing the two hand-entered seed graphs")
    aut_sz8 = graph(
        ["2", "3", "5", "7", "13"],
        [("2", "5"), ("2", "7"), ("2", "13"), ("5", "7"), ("5", "13"),
         ("7", "13"), ("3", "7"), ("3", "13")],
    )
    write_graph_file(DATA / "aut_sz8_pgc.graph", aut_sz8, root="3")
    aut_psl = graph(
        ["2", "3", "5", "11", "31"],
        [("2", "3"), ("2", "11"), ("2", "31"), ("3", "31"), ("11", "31"),
         ("5", "11"), ("5", "31")],
    )
    write_graph_file(DATA / "aut_psl232_pgc.graph", aut_psl, root="5")


def main():
    DATA.mkdir(exist_ok=True)
    build_seed_graphs()
    build_stubs()
    build_ordinary_tables()
    sz8, parents = build_suzuki8()
    psl = build_psl232()
    build_tables_and_reps(sz8, parents, psl)
    if "--skip-sz32" not in sys.argv:
        build_suzuki32()
    log("done")


if __name__ == "__main__":
    main()
