from itertools import combinations

import pytest

from flagpos.coxeter import Perm, all_perms, bruhat_leq, demazure_reduce, word_to_perm
from flagpos.errors import ArgumentError, ResourceError
from flagpos.strata import (
    CellIndex, bip_vertices, cell_matroid, cell_matroid_via_reduction,
    enumerate_cells, grassmann_consistency_check, injectivity_experiment,
    minkowski_check, minkowski_terms, moment_point, random_cells,
)


def p(s):
    return Perm.from_string(s)


def all_K(n):
    return [K for r in range(1, n) for K in combinations(range(1, n), r)]


def brute_bases(v, w, k):
    return {tuple(sorted(x.one_line[:k])) for x in all_perms(v.n)
            if bruhat_leq(v, x) and bruhat_leq(x, w)}


def test_enumerate_n2():
    cells = enumerate_cells(2, (1,))
    e, s = Perm.identity(2), p("21")
    assert [(c.v, c.w) for c in cells] == [(e, e), (e, s), (s, s)]
    assert [c.dimension for c in cells] == [0, 1, 0]


def test_enumerate_complete_flags_count():
    comparable = sum(1 for v in all_perms(3) for w in all_perms(3) if bruhat_leq(v, w))
    assert len(enumerate_cells(3, (1, 2))) == comparable == 19


@pytest.mark.parametrize("n", [2, 3, 4])
def test_unique_top_cell(n):
    for K in all_K(n):
        cells = enumerate_cells(n, K)
        top = max(c.dimension for c in cells)
        tops = [c for c in cells if c.dimension == top]
        assert len(tops) == 1 and tops[0].v == Perm.identity(n)
        assert all(c.dimension >= 0 for c in cells)


def test_enumerate_rejects_empty_K():
    with pytest.raises(ArgumentError):
        enumerate_cells(3, ())


def test_cell_index_validation():
    with pytest.raises(ArgumentError):
        CellIndex(Perm.identity(4), p("4231"), (2,))  # descent at position 1
    with pytest.raises(ArgumentError):
        CellIndex(p("4231"), p("1324"), (1, 2, 3))


def test_zero_dimensional_cells():
    for c in enumerate_cells(4, (1, 3)):
        if c.dimension == 0:
            M = cell_matroid(c)
            assert all(M[k] == {tuple(sorted(c.v.one_line[:k]))} for k in c.K)
            assert len(bip_vertices(c).vertices) == 1


def test_top_grassmann_cell_is_uniform():
    cells = enumerate_cells(4, (2,))
    top = max(cells, key=lambda c: c.dimension)
    assert cell_matroid(top)[2] == set(combinations(range(1, 5), 2))


def test_stratum_matches_brute_force_and_reduction_n4():
    for K in all_K(4):
        for c in enumerate_cells(4, K):
            direct = cell_matroid(c)
            assert direct == cell_matroid_via_reduction(c)
            for k in K:
                assert direct[k] == brute_bases(c.v, c.w, k)


def test_example_collision_n4():
    a = CellIndex(p("1234"), p("4231"), (1, 3))
    b = CellIndex(p("1324"), p("4231"), (1, 3))
    assert cell_matroid(a) == cell_matroid(b)
    rep = injectivity_experiment(4, (1, 3))
    assert not rep.injective
    assert (a, b) in rep.collisions


@pytest.mark.parametrize("n, K, injective", [(4, (1, 2, 3), True), (4, (1, 3), False), (5, (2,), True),
                                             (3, (1,), True), (5, (1, 4), False)])
def test_injectivity_examples(n, K, injective):
    assert injectivity_experiment(n, K).injective is injective


def test_injectivity_dichotomy_n4():
    for K in all_K(4):
        rep = injectivity_experiment(4, K)
        interval = K[-1] - K[0] == len(K) - 1
        assert rep.injective is interval
        assert rep.stratum_count <= rep.cell_count


def test_injectivity_bound(monkeypatch):
    with pytest.raises(ResourceError):
        injectivity_experiment(6, (1,))
    monkeypatch.setenv("FLAGPOS_MAX_N", "3")
    with pytest.raises(ResourceError):
        injectivity_experiment(4, (1,))
    monkeypatch.setenv("FLAGPOS_MAX_N", "x")
    with pytest.raises(ArgumentError):
        injectivity_experiment(3, (1,))


def test_report_serialization():
    rep = injectivity_experiment(4, (1, 3))
    obj = rep.to_json()
    assert obj["n"] == 4 and obj["K"] == [1, 3] and obj["injective"] is False
    assert [[[1, 2, 3, 4], [4, 2, 3, 1]], [[1, 3, 2, 4], [4, 2, 3, 1]]] in obj["collisions"]
    header, row = rep.csv_rows()
    assert header[0] == "n" and row[0] == 4


def test_moment_point():
    assert moment_point(p("2143"), (1, 3)) == (1, 2, 0, 1)
    assert moment_point(p("2143"), (1,)) == (0, 1, 0, 0)


def test_bip_examples():
    c = CellIndex(Perm.identity(2), p("21"), (1,))
    assert bip_vertices(c).vertices == {(1, 0), (0, 1)}
    a = CellIndex(p("1234"), p("4231"), (1, 3))
    b = CellIndex(p("1324"), p("4231"), (1, 3))
    assert bip_vertices(a) == bip_vertices(b)


def test_minkowski_displayed_identity():
    c = CellIndex(p("1234"), p("4231"), (1, 3))
    t1, t3 = minkowski_terms(c)
    assert (t1.v, t1.w, t1.K) == (p("1234"), p("4123"), (1,))
    assert (t3.v, t3.w, t3.K) == (p("1234"), p("2341"), (3,))
    assert minkowski_check(c)


def test_minkowski_singleton_and_n4_k12():
    for c in enumerate_cells(3, (2,)):
        assert minkowski_check(c)
    for c in enumerate_cells(4, (1, 2)):
        assert minkowski_check(c)


def test_grassmann_consistency_n4():
    for K in all_K(4):
        for c in enumerate_cells(4, K):
            assert all(grassmann_consistency_check(c, k) for k in K)


def test_grassmann_consistency_n7_example():
    J = (1, 2, 4, 6)
    v = word_to_perm(7, [1, 4, 3, 2, 1, 5])
    w = word_to_perm(7, [1, 3, 4, 3, 2, 1, 5, 6, 5])
    v2, w2 = demazure_reduce(v, w, J)
    c = CellIndex(v2, w2, (3, 5))
    assert grassmann_consistency_check(c, 3)
    assert brute_bases(v, w, 3) == cell_matroid(c)[3]


def test_grassmann_check_rejects_k():
    c = CellIndex(Perm.identity(3), p("231"), (2,))
    with pytest.raises(ArgumentError):
        grassmann_consistency_check(c, 1)


def test_random_cells_deterministic():
    a = random_cells(4, 10, seed=3)
    b = random_cells(4, 10, seed=3)
    assert a == b and len(a) == 10
