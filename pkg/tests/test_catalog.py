import pytest

from treegrowth import catalog, perms
from treegrowth.catalog import (CatalogError, SpinalData, b_add, b_elements,
                                b_neg, hom_kernel, kernel_depth)


def test_b_arithmetic():
    orders = (2, 3)
    assert len(b_elements(orders)) == 6
    assert b_add((1, 2), (1, 2), orders) == (0, 1)
    assert b_neg((1, 2), orders) == (1, 1)


def test_hom_kernel():
    a = (1, 2, 0)
    hom = (a,)                     # generator of Z/3 -> full cycle
    assert hom_kernel(hom, (3,)) == {(0,)}
    hom_triv = (perms.identity(3),)
    assert hom_kernel(hom_triv, (3,)) == {(0,), (1,), (2,)}


def test_kernel_depth_fg():
    spec = catalog.fabrykowski_gupta()
    assert spec.meta["kernel_depth"] == 0


def test_kernel_depth_grigorchuk():
    spec = catalog.first_grigorchuk()
    # each defining epimorphism alone has nontrivial kernel; two consecutive
    # ones intersect trivially
    assert spec.meta["kernel_depth"] == 1


def test_fg_purely_periodic_single_class():
    spec = catalog.fabrykowski_gupta()
    assert spec.num_classes == 1
    assert spec.degree == 3
    level = spec.level(0)
    assert sorted(g.name for g in level.zero_generators) == ["a120", "a201"]
    assert sorted(g.name for g in level.unit_generators) == ["b1", "b2"]


def test_first_grigorchuk_shape():
    spec = catalog.first_grigorchuk()
    assert spec.degree == 2
    assert spec.num_classes == 3
    for c in spec.classes():
        level = spec.level(c)
        assert len(level.zero_generators) == 1      # the rooted swap
        assert len(level.unit_generators) == 3      # b, c, d analogues


def test_gupta_sidki_classes():
    assert catalog.gupta_sidki().num_classes == 1


def test_sunic_class_counts():
    assert catalog.sunic(3, 2, (0,)).num_classes == 4
    assert catalog.sunic(3, 2, (1,)).num_classes == 6
    assert catalog.sunic(3, 2, (2,)).num_classes == 3


def test_sunic_coefficient_count():
    with pytest.raises(CatalogError):
        catalog.sunic(3, 2, ())


def test_ggs_rejects_zero_vector():
    with pytest.raises(CatalogError, match="gcd_condition"):
        catalog.ggs(3, (0, 0))


def test_ggs_rejects_gcd_violation():
    with pytest.raises(CatalogError, match="gcd_condition"):
        catalog.ggs(4, (2, 0, 2))


def test_ggs_length_check():
    with pytest.raises(CatalogError):
        catalog.ggs(3, (1,))


def test_spinal_rejects_kernel_violation():
    with pytest.raises(CatalogError, match="kernel_condition"):
        catalog.grigorchuk_p(3, (), (0,))


def test_grigorchuk_p3_valid():
    spec = catalog.grigorchuk_p(3, (), (0, 3))
    assert spec.degree == 3
    assert spec.meta["kernel_depth"] == 1


def test_nekrashevych_bits_checked():
    with pytest.raises(CatalogError):
        catalog.nekrashevych_D((), (2,))


def test_nekrashevych_gens():
    spec = catalog.nekrashevych_D((), (0, 1))
    assert spec.num_classes == 2
    names = sorted(g.name for g in spec.level(0).generators)
    assert names == ["alpha", "beta", "gamma"]


def test_neumann_pairs_count():
    pairs = catalog.neumann_pairs()
    assert len(pairs) == 360
    ident = perms.identity(6)
    assert sum(1 for a, x in pairs if a == ident) == 6


def test_neumann6_generators():
    spec = catalog.neumann6()
    level = spec.level(0)
    assert len(level.generators) == 354
    assert all(g.pseudolength == 1 for g in level.generators)
    # symmetric: the inverse of each generator is in the set
    names = {g.name for g in level.generators}
    assert all(g.inverse in names for g in level.generators)


def test_spinal_rejects_intransitive_roots():
    # homomorphism images generate only a point stabilizer, so the root
    # group of level 1 is intransitive
    swap01 = ((1, 0, 2),)
    data = SpinalData(3, (2,), ((1, 2, 0),),
                      (), ((swap01, swap01),))
    with pytest.raises(CatalogError, match="level_transitivity"):
        catalog.spinal(data)
