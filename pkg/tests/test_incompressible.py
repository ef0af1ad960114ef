import pytest

from treegrowth import build_atlas, catalog
from treegrowth import incompressible as inc

FG_INCOMPRESSIBLE_COUNTS = [3, 18, 72, 216, 576, 1296, 2592]


def test_additive_on_generators(fg_atlas6):
    eng = fg_atlas6.engine
    for nm in ("a120", "a201", "b1", "b2"):
        assert inc.additive(fg_atlas6, 0, eng.gen_id(0, nm))


def test_witness_word_is_compressible(fg_atlas6):
    # b * (a b a^-1) * b has pseudolength 3 but child lengths summing to 2
    eng = fg_atlas6.engine
    g = eng.element_from_word(0, ["b1", "a120", "b1", "a201", "b1"])
    table = fg_atlas6.table(0)
    assert table.length(g) == 3
    child_sum = sum(table.length(x) for x in eng.children(0, g))
    assert child_sum == 2
    assert not inc.additive(fg_atlas6, 0, g)


def test_report_counts_frozen(fg_report6):
    assert fg_report6.counts[0][fg_report6.K] == FG_INCOMPRESSIBLE_COUNTS


def test_report_stabilizes(fg_report6):
    assert fg_report6.stabilization_depth == 2
    assert fg_report6.exact


def test_counts_nested_in_k(fg_report6):
    per_k = fg_report6.counts[0]
    for k in range(1, len(per_k) - 1):
        for n in range(len(per_k[k])):
            assert per_k[k + 1][n] <= per_k[k][n]


def test_membership_and_first_fail(fg_atlas6, fg_report6):
    eng = fg_atlas6.engine
    g = eng.element_from_word(0, ["b1", "a120", "b1", "a201", "b1"])
    assert not fg_report6.in_Ik(0, g, 1)
    assert fg_report6.first_fail[0][g] == 1
    b = eng.gen_id(0, "b1")
    assert fg_report6.in_Ik(0, b, 6)


def test_level_function(fg_atlas6, fg_report6):
    lf = inc.level_function(fg_atlas6, fg_report6, 0, 6)
    assert lf.value == 2
    assert lf.exact and not lf.lower_bound_only
    assert int(lf) == 2
    deep = inc.level_function(fg_atlas6, fg_report6, 0, 50)
    assert deep.lower_bound_only
    assert deep.value == 2


def test_level_function_empty_family(fg_atlas6, fg_report6):
    lf = inc.level_function(fg_atlas6, fg_report6, 0, 0)
    assert lf.empty_family and lf.value == 1


def test_incompressible_by_length(fg_atlas6, fg_report6):
    buckets = inc.incompressible_by_length(fg_atlas6, fg_report6, 0, 6)
    assert [len(b) for b in buckets] == [2] + FG_INCOMPRESSIBLE_COUNTS[1:]
    assert all(bucket == sorted(bucket) for bucket in buckets)


def test_factorization_dp_histogram(fg_atlas6, fg_report6):
    N, back = inc.factorization_dp(fg_atlas6, fg_report6, 0, 6)
    table = fg_atlas6.table(0)
    assert len(N) == table.gamma()[-1]     # every ball element is reached
    hist = {}
    for g, j in N.items():
        hist[j] = hist.get(j, 0) + 1
    assert hist == {0: 1, 1: 4772, 2: 13296, 3: 2736}
    # factorizations are additive and their factors are incompressible
    for g in table.spheres[5][:100]:
        factors = inc.factors_of(back, g)
        assert len(factors) == N[g]
        assert sum(table.length(h) for h in factors) == 5
        assert all(h in fg_report6.final[0] for h in factors)


def test_witness_minimal_count(fg_atlas6, fg_report6):
    eng = fg_atlas6.engine
    g = eng.element_from_word(0, ["b1", "a120", "b1", "a201", "b1"])
    N, back = inc.factorization_dp(fg_atlas6, fg_report6, 0, 6)
    assert N[g] == 2
    assert sorted(fg_atlas6.table(0).length(h)
                  for h in inc.factors_of(back, g)) == [1, 2]


def test_ternary_parse_single_letter(fg_atlas6):
    eng = fg_atlas6.engine
    spec = fg_atlas6.spec
    table = fg_atlas6.table(0)
    b = eng.gen_id(0, "b1")
    data = inc.extract_ternary_data(spec, table, 0, b)
    assert data.beta == ["b1"]
    assert data.c == [0]
    assert data.derivative == []
    assert data.two_run
    assert data.m_c == 1


def test_ternary_parse_exponents(fg_atlas6):
    eng = fg_atlas6.engine
    spec = fg_atlas6.spec
    table = fg_atlas6.table(0)
    g = eng.element_from_word(0, ["a120", "b1", "a120", "b1", "a201"])
    word = table.geodesic(g)
    data = inc.extract_ternary_data(spec, table, 0, g)
    assert len(data.beta) == table.length(g) == 2
    # conjugation exponents are prefix sums of the rooted exponents
    assert all(x in (0, 1, 2) for x in data.c)


def test_two_run_law_on_incompressibles(fg_atlas6, fg_report6):
    spec = fg_atlas6.spec
    table = fg_atlas6.table(0)
    for g in fg_report6.final[0]:
        if g == 0:
            continue
        data = inc.extract_ternary_data(spec, table, 0, g)
        assert data.two_run
        assert 1 <= data.m_c <= len(data.derivative) + 1


def test_not_ternary_spinal():
    atlas = build_atlas(catalog.first_grigorchuk(), 2)
    with pytest.raises(inc.NotTernarySpinal):
        inc.extract_ternary_data(atlas.spec, atlas.table(0), 0, 0)
    with pytest.raises(inc.NotTernarySpinal):
        inc.ternary_bound_params(atlas.spec)


def test_polynomial_bound_fg(fg_report6):
    spec = catalog.fabrykowski_gupta()
    l, constant, exponent = inc.ternary_bound_params(spec)
    assert (l, constant, exponent) == (0, 13122, 4)
    bc = inc.check_polynomial_bound(spec, fg_report6, 0)
    assert bc.ok
    assert bc.rows[0] == (1, 18, 13122)


def test_in_Ik_beyond_K_requires_exactness(fg_atlas6):
    rep = inc.approximate_I_infty(fg_atlas6, 1)
    assert rep.stabilization_depth is None
    with pytest.raises(ValueError):
        rep.in_Ik(0, 0, 5)
