import json
import shutil

import pytest

from gkgraph import catalog as cat
from gkgraph import graphs as gr
from gkgraph import permgroups as pg


# ---------------------------------------------------------------------------
# Profiles and the direct-product rule
# ---------------------------------------------------------------------------

def test_cyclic_profiles():
    c6 = cat.cyclic_profile(6)
    assert c6.primes == frozenset({2, 3})
    assert not c6.pgc.edges  # C6 has an element of order 6
    c10 = cat.cyclic_profile(10)
    assert not c10.pgc.edges
    c15_sq = cat.cyclic_profile(15)
    assert not c15_sq.pgc.edges
    c2x = cat.cyclic_profile(12)
    assert not c2x.pgc.edges
    c_p = cat.cyclic_profile(13)
    assert c_p.primes == frozenset({13}) and not c_p.pgc.edges
    # squarefree-coprime shape: C6 vs C(2*9)? both orders 2.3: edge only if pq does not divide n
    c18 = cat.cyclic_profile(18)
    assert not c18.pgc.edges


def test_direct_product_sz8_x_c2(data_dir):
    sz8 = pg.read_group_file(data_dir / "sz8.json").group
    prof = cat.spectrum_profile(pg.enumerate_elements(sz8))
    out = cat.direct_product_pgc(prof, cat.cyclic_profile(2))
    assert out.primes == frozenset({2, 5, 7, 13})
    assert out.pgc.degree("2") == 0
    assert len(out.pgc.edges) == 3  # the {5,7,13} triangle survives


def test_direct_product_coprime_is_disjoint_union():
    a = cat.profile([2, 3], gr.graph(["2", "3"], [("2", "3")]))
    b = cat.profile([5, 7], gr.graph(["5", "7"], [("5", "7")]))
    out = cat.direct_product_pgc(a, b)
    assert set(out.pgc.edge_pairs()) == {("2", "3"), ("5", "7")}


def test_direct_product_shared_primes_matches_enumeration():
    """Cross-oracle: the product rule against direct enumeration of G x H."""

    def direct_product_group(g: pg.PermGroup, h: pg.PermGroup) -> pg.PermGroup:
        dg, dh = g.degree, h.degree
        gens = []
        for p in g.generators:
            gens.append(list(p.images) + [dg + i for i in range(1, dh + 1)])
        for q in h.generators:
            gens.append(list(range(1, dg + 1)) + [dg + i for i in q.images])
        return pg.perm_group(dg + dh, gens)

    s4 = pg.perm_group(4, [[2, 1, 3, 4], [2, 3, 4, 1]])
    s3 = pg.perm_group(3, [[2, 1, 3], [2, 3, 1]])
    c5 = pg.perm_group(5, [[2, 3, 4, 5, 1]])
    c6 = pg.perm_group(6, [[2, 3, 4, 5, 6, 1]])
    cases = [(s4, s3), (s4, c5), (s3, c6), (s4, s4), (c6, c6), (s3, c5)]
    for g, h in cases:
        spec_g = pg.enumerate_elements(g)
        spec_h = pg.enumerate_elements(h)
        expected = cat.spectrum_profile(pg.enumerate_elements(direct_product_group(g, h)))
        got = cat.direct_product_pgc(cat.spectrum_profile(spec_g), cat.spectrum_profile(spec_h))
        assert got == expected, f"{spec_g.group_order} x {spec_h.group_order}"


def test_direct_product_rule_against_witness_group_enumeration(data_dir):
    """Enumerable witness products: the rule vs a real 58k/175k-element closure."""

    def padded(g: pg.PermGroup, h: pg.PermGroup) -> pg.PermGroup:
        dg, dh = g.degree, h.degree
        gens = [list(p.images) + [dg + i for i in range(1, dh + 1)] for p in g.generators]
        gens += [list(range(1, dg + 1)) + [dg + i for i in q.images] for q in h.generators]
        return pg.perm_group(dg + dh, gens)

    sz8 = pg.read_group_file(data_dir / "sz8.json").group
    sz8_profile = cat.spectrum_profile(pg.enumerate_elements(sz8))
    for n in (2, 6):
        cn = pg.perm_group(n, [[i % n + 1 for i in range(1, n + 1)]])
        product = padded(sz8, cn)
        expected = cat.spectrum_profile(pg.enumerate_elements(product))
        got = cat.direct_product_pgc(sz8_profile, cat.cyclic_profile(n))
        assert got == expected


# ---------------------------------------------------------------------------
# Recipes
# ---------------------------------------------------------------------------

def test_recipe_claim_mismatch_raises(data_dir):
    ctx = cat.RecipeContext(data_dir)
    wrong = gr.complete_graph(["2", "3"])
    recipe = cat.WitnessRecipe("s4ish", "group_file", path="sz8.json", claimed=wrong)
    with pytest.raises(cat.CatalogError, match="claimed"):
        cat.evaluate_recipe(recipe, ctx)


def test_recipe_missing_file_falls_back_to_claim(data_dir):
    ctx = cat.RecipeContext(data_dir)
    claimed = gr.complete_graph(["2", "5", "31", "41"])
    recipe = cat.WitnessRecipe("sz32", "group_file", path="no_such_file.json", claimed=claimed)
    out = cat.evaluate_recipe(recipe, ctx)
    assert out.provenance == cat.ASSERTED
    assert out.profile.pgc == claimed


def test_recipe_missing_file_without_claim_raises(data_dir):
    ctx = cat.RecipeContext(data_dir)
    recipe = cat.WitnessRecipe("nodata", "group_file", path="no_such_file.json")
    with pytest.raises(cat.CatalogError, match="no recorded adjacency"):
        cat.evaluate_recipe(recipe, ctx)


def test_brauer_recipe_rejects_unachievable_removal(data_dir):
    ctx = cat.RecipeContext(data_dir)
    base = cat.WitnessRecipe(
        "base", "group_file", path="sz8.json",
        claimed=gr.complete_graph(["2", "5", "7", "13"]))
    cat.evaluate_recipe(base, ctx)
    bad = cat.WitnessRecipe(
        "bad", "brauer_derived", path="sz8_mod2_table.json",
        operands=("base",), removal=((2, 13),))
    with pytest.raises(cat.CatalogError, match="not"):
        cat.evaluate_recipe(bad, ctx)


def test_frobenius_note_recipe(data_dir):
    ctx = cat.RecipeContext(data_dir)
    seed = gr.read_graph_file(data_dir / "aut_sz8_pgc.graph")
    aut = cat.WitnessRecipe("aut", "group_file", path="aut_sz8.json", claimed=seed.graph)
    cat.evaluate_recipe(aut, ctx)
    frob = cat.WitnessRecipe(
        "balloon", "frobenius_note", operands=("aut", "cyclic:7"), keep_edge=(3, 7))
    out = cat.evaluate_recipe(frob, ctx)
    assert set(out.profile.pgc.edge_pairs()) == {
        ("2", "5"), ("2", "13"), ("5", "13"), ("3", "13"), ("3", "7")}


# ---------------------------------------------------------------------------
# Built catalogs
# ---------------------------------------------------------------------------

def test_partition_counts(sz8_catalog, psl232_catalog):
    assert sz8_catalog.partition.counts() == {
        "f1": 26, "f2": 6, "f3": 3, "f4": 7, "f5": 13}
    assert psl232_catalog.partition.counts() == {
        "f1": 26, "f2": 3, "f3": 3, "f4": 8, "f5": 15}


def test_partition_total_is_all_rooted_triangle_classes(sz8_catalog, psl232_catalog):
    total = len(gr.enumerate_rooted_graphs(5, lambda r: gr.contains_triangle(r.graph)))
    for c in (sz8_catalog, psl232_catalog):
        assert sum(c.partition.counts().values()) == total
    assert total == 55


def test_partition_disjoint_and_f4_not_in_f5(sz8_catalog, psl232_catalog):
    for c in (sz8_catalog, psl232_catalog):
        buckets = [set(getattr(c.partition, k)) for k in ("f1", "f2", "f3", "f4", "f5")]
        for i in range(5):
            for j in range(i + 1, 5):
                assert not buckets[i] & buckets[j]
        assert {e.code for e in c.f4_entries} == set(c.partition.f4)


def test_f4_entries_all_have_triangles_and_legal_roots(sz8_catalog, psl232_catalog):
    for c, allowed in ((sz8_catalog, {"7", "13"}), (psl232_catalog, {"11", "31"})):
        for e in c.f4_entries:
            g, root = e.graph.graph, e.graph.root
            assert gr.contains_triangle(g)
            nbrs = g.neighbors(root)
            assert 1 <= len(nbrs) <= 2
            assert nbrs <= allowed
        if c.family == "psl232":
            for e in c.f4_entries:
                nbrs = e.graph.graph.neighbors(e.graph.root)
                if len(nbrs) == 1:
                    assert nbrs == {"31"}


def test_catalogs_fully_verified(sz8_catalog, psl232_catalog, sz32_catalog):
    assert sz8_catalog.fully_verified
    assert psl232_catalog.fully_verified
    assert not sz32_catalog.fully_verified  # enumeration out of desk range


def test_four_vertex_menus(sz8_catalog, psl232_catalog, sz32_catalog):
    shapes = cat._shape_codes()
    for c, forbidden in (
        (sz8_catalog, "k4_minus_edge"),
        (psl232_catalog, "k4"),
        (sz32_catalog, None),
    ):
        assert len(c.four_vertex) == 11
        allowed = [e for e in c.four_vertex if e.allowed]
        if forbidden is None:
            assert len(allowed) == 11
        else:
            assert len(allowed) == 10
            assert c.forbidden_code == shapes[forbidden]


def test_catalog_round_trip_bit_exact(tmp_path, sz8_catalog):
    p1 = cat.save_catalog(sz8_catalog, tmp_path)
    loaded = cat.load_catalog("sz8", tmp_path)
    p2 = cat.save_catalog(loaded, tmp_path / "again")
    assert p1.read_text() == p2.read_text()
    assert cat.catalog_to_payload(loaded) == cat.catalog_to_payload(sz8_catalog)


def test_catalog_load_rejects_tampered_code(tmp_path, sz8_catalog):
    cat.save_catalog(sz8_catalog, tmp_path)
    payload = json.loads((tmp_path / "sz8.json").read_text())
    payload["f4_entries"][0]["edges"] = payload["f4_entries"][0]["edges"][:-1]
    (tmp_path / "sz8.json").write_text(json.dumps(payload))
    with pytest.raises(cat.CatalogError, match="does not match"):
        cat.load_catalog("sz8", tmp_path)


def test_verify_catalog_detects_drift(tmp_path, sz8_catalog, data_dir):
    cat.save_catalog(sz8_catalog, tmp_path)
    assert cat.verify_catalog("sz8", tmp_path, data_dir) == []
    payload = cat.catalog_to_payload(sz8_catalog)
    payload["partition"]["f5"] = payload["partition"]["f5"][:-1]
    (tmp_path / "sz8.json").write_text(json.dumps(payload))
    diffs = cat.verify_catalog("sz8", tmp_path, data_dir)
    assert "partition" in diffs and "counts" in diffs


def test_missing_catalog_error(tmp_path):
    with pytest.raises(cat.CatalogError, match="catalog build"):
        cat.load_catalog("sz8", tmp_path / "nope")


def test_pending_reps_fall_back_to_asserted(tmp_path, data_dir):
    partial = tmp_path / "data"
    shutil.copytree(data_dir, partial)
    (partial / "aut_sz8_dim48_reps.json").unlink()
    built = cat.build_catalog("sz8", data_dir=partial)
    assert not built.fully_verified
    pending = {e.rid for e in built.f4_entries if e.provenance == cat.ASSERTED}
    assert pending == {"aut_mod2_dim48", "aut_mod2_dim48_x_c5"}
    # the recorded adjacency keeps the partition intact
    assert built.partition.counts()["f4"] == 7
    verified = cat.build_catalog("sz8", data_dir=data_dir)
    assert {e.code for e in built.f4_entries} == {e.code for e in verified.f4_entries}
