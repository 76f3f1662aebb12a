import random

import pytest

from gkgraph import permgroups as pg
from gkgraph.numutil import divisors


def s4():
    return pg.perm_group(4, [[2, 1, 3, 4], [2, 3, 4, 1]])


def cyclic(n):
    return pg.perm_group(n, [[i % n + 1 for i in range(1, n + 1)]])


def test_permutation_validation():
    with pytest.raises(pg.GroupError):
        pg.Permutation((1, 1, 3))
    with pytest.raises(pg.GroupError):
        pg.perm_group(3, [[1, 2, 3], [1, 2]])
    with pytest.raises(pg.GroupError):
        pg.PermGroup(3, ())


def test_s4_spectrum():
    spec = pg.enumerate_elements(s4())
    assert spec.group_order == 24
    assert spec.orders == frozenset({1, 2, 3, 4})
    assert spec.exhaustive


def test_c6_spectrum():
    spec = pg.enumerate_elements(cyclic(6))
    assert spec.orders == frozenset({1, 2, 3, 6})


def test_enumeration_limit_error():
    with pytest.raises(pg.EnumerationLimitError, match="10"):
        pg.enumerate_elements(s4(), limit=10)


def test_spectrum_divisor_closed_fuzz():
    rng = random.Random(5)
    for _ in range(20):
        degree = rng.randint(3, 7)
        gens = []
        for _ in range(rng.randint(1, 3)):
            images = list(range(1, degree + 1))
            rng.shuffle(images)
            gens.append(images)
        spec = pg.enumerate_elements(pg.perm_group(degree, gens), limit=50000)
        for d in spec.orders:
            assert set(divisors(d)) <= spec.orders


def test_subgroup_spectrum_contained():
    group = s4()
    parent = pg.enumerate_elements(group)
    rng = random.Random(11)
    elements = sorted(pg._group_elements(group, 100))
    for _ in range(10):
        sub = rng.sample(elements, rng.randint(1, 3))
        sub_group = pg.perm_group(4, [[i + 1 for i in p] for p in sub])
        sub_spec = pg.enumerate_elements(sub_group)
        assert sub_spec.orders <= parent.orders
        assert parent.group_order % sub_spec.group_order == 0


def test_sample_spectrum_reproducible_and_contained():
    full = pg.enumerate_elements(s4())
    a = pg.sample_spectrum(s4(), 500, seed=42)
    b = pg.sample_spectrum(s4(), 500, seed=42)
    assert a == b
    assert not a.exhaustive
    assert a.orders <= full.orders
    assert a.group_order == 24  # stabilizer chain, not sampling
    c = pg.sample_spectrum(s4(), 10000, seed=3)
    assert c.orders == full.orders


def test_sample_trivial_group():
    triv = pg.perm_group(3, [[1, 2, 3]])
    spec = pg.sample_spectrum(triv, 5, seed=0)
    assert spec.group_order == 1 and spec.orders == frozenset({1})


def test_prime_graph_complement_s4():
    g = pg.prime_graph_complement(pg.enumerate_elements(s4()))
    assert g.vertices == frozenset({"2", "3"})
    assert g.edge_pairs() == [("2", "3")]


def test_prime_graph_refuses_sampled():
    spec = pg.sample_spectrum(s4(), 10, seed=1)
    with pytest.raises(pg.GroupError, match="sampled"):
        pg.prime_graph_complement(spec)
    g = pg.prime_graph_complement(spec, allow_sampled=True)
    assert g.vertices == frozenset({"2", "3"})


def test_group_order_chain():
    assert pg.group_order(s4()) == 24
    assert pg.group_order(cyclic(12)) == 12
    a5 = pg.perm_group(5, [[2, 3, 1, 4, 5], [1, 2, 4, 5, 3], [2, 1, 4, 3, 5]])
    assert pg.group_order(a5) == 60


# ---------------------------------------------------------------------------
# p-group shapes
# ---------------------------------------------------------------------------

def dihedral(n):
    """Dihedral group of order 2n on n points."""
    rot = [i % n + 1 for i in range(1, n + 1)]
    ref = [n - i + 1 for i in range(1, n + 1)]
    return pg.perm_group(n, [rot, ref])


QI = [3, 4, 2, 1, 8, 7, 5, 6]
QJ = [5, 6, 7, 8, 2, 1, 4, 3]


@pytest.mark.parametrize(
    "group,tag",
    [
        (cyclic(8), "cyclic"),
        (cyclic(9), "cyclic"),
        (pg.perm_group(4, [[2, 1, 4, 3], [3, 4, 1, 2]]), "klein4"),
        (dihedral(4), "dihedral"),
        (dihedral(8), "dihedral"),
        (pg.perm_group(8, [QI, QJ]), "generalized_quaternion"),
        (pg.perm_group(6, [[2, 3, 4, 1, 5, 6], [1, 2, 3, 4, 6, 5]]), "other"),  # C4 x C2
    ],
)
def test_p_group_shapes(group, tag):
    shape = pg.p_group_shape(group)
    assert shape.tag == tag
    assert shape.satisfies_frobenius_criterion == (tag != "other")


def test_cyclic_prime_powers_all_cyclic():
    for n in (2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 64, 81, 128):
        assert pg.p_group_shape(cyclic(n)).tag == "cyclic"


def test_p_group_shape_rejects_non_p_group():
    with pytest.raises(pg.GroupError, match="not a prime power"):
        pg.p_group_shape(cyclic(6))


def test_sz8_sylow2_fails_frobenius_criterion(data_dir):
    gf = pg.read_group_file(data_dir / "sz8.json")
    sylow = gf.subgroups["sylow2"]
    assert pg.enumerate_elements(sylow).group_order == 64
    shape = pg.p_group_shape(sylow)
    assert shape.tag == "other"
    assert not shape.satisfies_frobenius_criterion


def test_psl232_sylow2_fails_frobenius_criterion(data_dir):
    gf = pg.read_group_file(data_dir / "psl232.json")
    sylow = gf.subgroups["sylow2"]
    spec = pg.enumerate_elements(sylow)
    assert spec.group_order == 32
    assert spec.orders == frozenset({1, 2})  # elementary abelian
    shape = pg.p_group_shape(sylow)
    assert shape.tag == "other"
    assert not shape.satisfies_frobenius_criterion


# ---------------------------------------------------------------------------
# Group files
# ---------------------------------------------------------------------------

def test_group_file_round_trip(tmp_path):
    path = tmp_path / "s4.json"
    pg.write_group_file(path, "S4", s4(), {"sub": cyclic(4)})
    back = pg.read_group_file(path)
    assert back.name == "S4"
    assert back.group == s4()
    assert pg.enumerate_elements(back.subgroups["sub"]).group_order == 4


def test_group_file_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"degree": 3}')
    with pytest.raises(pg.GroupError, match="malformed"):
        pg.read_group_file(path)
