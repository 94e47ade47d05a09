import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from flagpos.polytope import (
    LatticePolytope, extreme_points, in_hull, lp_feasible, minkowski_sum, same_polytope,
)


def monotone_chain(points):
    """Strict 2D convex hull vertices (collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return set(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return set(lower[:-1] + upper[:-1])


points2d = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=14)


@settings(max_examples=200, deadline=None)
@given(points2d)
def test_extreme_points_match_monotone_chain(pts):
    assert extreme_points(pts) == monotone_chain(pts)


def test_cube_vertices():
    cube = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    inner = [(Fraction(1, 2),) * 3]
    mids = [(0, 0, Fraction(1, 2)), (1, Fraction(1, 2), 1)]
    assert extreme_points(cube + inner + mids) == set(cube)


def test_in_hull_random_combinations():
    rng = random.Random(5)
    for _ in range(30):
        d = rng.randint(2, 4)
        pts = [tuple(rng.randint(-5, 5) for _ in range(d)) for _ in range(rng.randint(1, 6))]
        w = [Fraction(rng.randint(0, 5)) for _ in pts]
        if sum(w) == 0:
            w[0] = Fraction(1)
        s = sum(w)
        p = tuple(sum(wi * q[i] for wi, q in zip(w, pts)) / s for i in range(d))
        assert in_hull(p, pts)
        far = tuple(max(q[i] for q in pts) + 1 if i == 0 else p[i] for i in range(d))
        assert not in_hull(far, pts)


def test_lp_feasible_basic():
    assert lp_feasible([[1, 1]], [1])
    assert not lp_feasible([[1, 1]], [-1])
    assert lp_feasible([[1, -1]], [-2])
    assert not lp_feasible([[1, 0], [1, 0]], [1, 2])
    assert lp_feasible([], [])


def test_minkowski_sum_of_segments_is_square():
    a = LatticePolytope.hull([(0, 0), (1, 0)])
    b = LatticePolytope.hull([(0, 0), (0, 1)])
    assert minkowski_sum([a, b]).vertices == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_same_polytope():
    P = LatticePolytope.hull([(0, 0), (2, 0), (0, 2), (1, 0)])
    Q = LatticePolytope(2, frozenset({(0, 0), (2, 0), (0, 2)}))
    R = LatticePolytope(2, frozenset({(0, 0), (2, 0), (0, 1)}))
    assert same_polytope(P, Q) and not same_polytope(P, R)


def test_polytope_json():
    P = LatticePolytope.hull([(1, 0), (0, 1)])
    assert P.to_json() == {"dim": 2, "vertices": [[0, 1], [1, 0]]}
