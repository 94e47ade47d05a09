"""
Exact convex-hull membership and vertex extraction for small integer point sets.

Hull membership is a phase-one simplex over Fractions with Bland's rule.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["LatticePolytope", "lp_feasible", "in_hull", "extreme_points",
           "minkowski_sum", "same_polytope"]


def lp_feasible(A, b):
    """Whether {x >= 0 : A x = b} is nonempty (A given as a list of rows)."""
    m = len(A)
    if m == 0:
        return True
    N = len(A[0])
    T = []
    for row, rhs in zip(A, b):
        row = [Fraction(x) for x in row]
        rhs = Fraction(rhs)
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        T.append(row + [Fraction(0)] * m + [rhs])
    for i in range(m):
        T[i][N + i] = Fraction(1)
    basis = [N + i for i in range(m)]
    obj = [-sum((T[i][j] for i in range(m)), Fraction(0)) for j in range(N)]
    obj += [Fraction(0)] * m + [-sum((T[i][-1] for i in range(m)), Fraction(0))]
    while True:
        enter = next((j for j in range(N + m) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                key = (T[i][-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # unbounded direction; cannot happen for phase one
            break
        r = best[1]
        piv = T[r][enter]
        T[r] = [x / piv for x in T[r]]
        for i in range(m):
            f = T[i][enter]
            if i != r and f != 0:
                Ti, Tr = T[i], T[r]
                T[i] = [x - f * y for x, y in zip(Ti, Tr)]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, T[r])]
        basis[r] = enter
    return obj[-1] == 0


def in_hull(p, points):
    """Whether p is a convex combination of ``points``."""
    points = list(points)
    if not points:
        return False
    if tuple(p) in set(map(tuple, points)):
        return True
    d = len(p)
    A = [[q[i] for q in points] for i in range(d)] + [[1] * len(points)]
    return lp_feasible(A, list(p) + [1])


def _dot(c, p):
    return sum(a * b for a, b in zip(c, p))


def _unique_argmax(c, points):
    best, arg, unique = None, None, False
    for p in points:
        v = _dot(c, p)
        if best is None or v > best:
            best, arg, unique = v, p, True
        elif v == best:
            unique = False
    return arg if unique else None


def extreme_points(points, seed=0):
    """
    The vertex set of conv(points).

    A point is certified extreme when some linear functional has it as unique
    maximizer, and certified non-extreme when it is the midpoint of two other
    points or lies in the hull of the others (exact LP).
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return frozenset(pts)
    d = len(pts[0])
    centroid = [sum(p[i] for p in pts) for i in range(d)]
    vertices = set()
    # directions away from the centroid, then random ones
    for p in pts:
        c = [len(pts) * p[i] - centroid[i] for i in range(d)]
        q = _unique_argmax(c, pts)
        if q is not None:
            vertices.add(q)
    rng = random.Random(seed)
    for _ in range(4 * len(pts)):
        if len(vertices) == len(pts):
            break
        c = [rng.randint(-1000, 1000) for _ in range(d)]
        q = _unique_argmax(c, pts)
        if q is not None:
            vertices.add(q)
    ptset = set(pts)
    for p in pts:
        if p in vertices:
            continue
        twice = tuple(2 * x for x in p)
        if any(tuple(t - a for t, a in zip(twice, q)) in ptset and q != p for q in pts):
            continue
        if not in_hull(p, [q for q in pts if q != p]):
            vertices.add(p)
    return frozenset(vertices)


@dataclass(frozen=True)
class LatticePolytope:
    """A polytope given by its vertex set (integer points)."""

    dim: int
    vertices: frozenset

    @classmethod
    def hull(cls, points, dim=None):
        points = [tuple(p) for p in points]
        if dim is None:
            dim = len(points[0])
        return cls(dim, extreme_points(points))

    def sorted_vertices(self):
        return sorted(self.vertices)

    def contains(self, p):
        return in_hull(p, self.vertices)

    def to_json(self):
        return {"dim": self.dim, "vertices": [list(v) for v in self.sorted_vertices()]}


def minkowski_sum(polytopes):
    """Sum of polytopes: pairwise vertex sums, filtered to extreme points."""
    polytopes = list(polytopes)
    acc = polytopes[0].vertices
    for P in polytopes[1:]:
        sums = {tuple(a + b for a, b in zip(p, q)) for p in acc for q in P.vertices}
        acc = extreme_points(sums)
    return LatticePolytope(polytopes[0].dim, frozenset(acc))


def same_polytope(P, Q):
    """Mutual containment of vertex sets in the other hull."""
    return (all(v in Q.vertices or Q.contains(v) for v in P.vertices)
            and all(v in P.vertices or P.contains(v) for v in Q.vertices))
