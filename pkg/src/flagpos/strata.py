"""
Cells of the totally nonnegative partial flag variety, their matroid strata,
and Bruhat interval polytopes.

A cell is indexed by v <= w with w in W^J, J = [n-1] minus K.  Its matroid
stratum is read off from the zero-dimensional cells in its closure: for each
k in K, the bases are {x([k]) : x in [v, w]}.
"""

import os
import random
from dataclasses import dataclass
from itertools import combinations

from flagpos.coxeter import (
    Perm, bruhat_leq, complement, demazure_reduce, in_parabolic_quotient,
    interval, length, quotient_elements,
)
from flagpos.errors import ArgumentError, ResourceError
from flagpos.polytope import LatticePolytope, minkowski_sum, same_polytope

__all__ = [
    "CellIndex", "MatroidStratum", "InjectivityReport", "max_n",
    "enumerate_cells", "cell_matroid", "cell_matroid_via_reduction",
    "injectivity_experiment", "moment_point", "bip_vertices", "minkowski_terms",
    "minkowski_check", "grassmann_consistency_check", "random_cells",
]

DEFAULT_MAX_N = 5


def max_n():
    """Stratification size bound; FLAGPOS_MAX_N overrides the default of 5."""
    raw = os.environ.get("FLAGPOS_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise ArgumentError("FLAGPOS_MAX_N must be an integer, got %r" % raw) from None


def _check_K(n, K):
    K = tuple(sorted(set(K)))
    if not K:
        raise ArgumentError("K must be nonempty")
    if any(not 1 <= k <= n - 1 for k in K):
        raise ArgumentError("K must lie in [1, %d]" % (n - 1))
    return K


@dataclass(frozen=True)
class CellIndex:
    v: Perm
    w: Perm
    K: tuple

    def __post_init__(self):
        object.__setattr__(self, "K", _check_K(self.w.n, self.K))
        if not in_parabolic_quotient(self.w, self.J):
            raise ArgumentError("%s is not a minimal coset representative for J = %r"
                                % (self.w, self.J))
        if not bruhat_leq(self.v, self.w):
            raise ArgumentError("%s is not below %s" % (self.v, self.w))

    @property
    def n(self):
        return self.w.n

    @property
    def J(self):
        return complement(self.n, self.K)

    @property
    def dimension(self):
        return length(self.w) - length(self.v)

    def to_json(self):
        return [list(self.v.one_line), list(self.w.one_line)]

    def __str__(self):
        return "(%s,%s)" % (self.v, self.w)


@dataclass(frozen=True)
class MatroidStratum:
    """Per k in K, the bases M_k (sorted k-subsets of [n])."""

    bases: tuple  # ((k, frozenset of tuples), ...)

    def __getitem__(self, k):
        return dict(self.bases)[k]

    def to_json(self):
        return {str(k): [list(I) for I in sorted(M)] for k, M in self.bases}


def enumerate_cells(n, K):
    """All cells (v, w), ordered by w then v in one-line lexicographic order."""
    K = _check_K(n, K)
    J = complement(n, K)
    e = Perm.identity(n)
    return [CellIndex(v, w, K)
            for w in quotient_elements(n, J)
            for v in sorted(interval(e, w))]


def _bases(elems, k):
    return frozenset(tuple(sorted(x.image(k))) for x in elems)


def cell_matroid(c):
    elems = interval(c.v, c.w)
    return MatroidStratum(tuple((k, _bases(elems, k)) for k in c.K))


def cell_matroid_via_reduction(c):
    """Same stratum, each M_k computed from demazure_reduce with J' = [n-1] minus {k}."""
    out = []
    for k in c.K:
        v2, w2 = demazure_reduce(c.v, c.w, complement(c.n, (k,)))
        out.append((k, _bases(interval(v2, w2), k)))
    return MatroidStratum(tuple(out))


@dataclass
class InjectivityReport:
    n: int
    K: tuple
    cell_count: int
    stratum_count: int
    injective: bool
    collisions: list  # pairs of CellIndex

    def to_json(self):
        return {
            "n": self.n,
            "K": list(self.K),
            "cell_count": self.cell_count,
            "stratum_count": self.stratum_count,
            "injective": self.injective,
            "collisions": [[a.to_json(), b.to_json()] for a, b in self.collisions],
        }

    def csv_rows(self):
        header = ["n", "K", "cell_count", "stratum_count", "injective", "collisions"]
        row = [self.n, " ".join(map(str, self.K)), self.cell_count, self.stratum_count,
               self.injective, len(self.collisions)]
        return [header, row]


def injectivity_experiment(n, K, bound=None):
    """Map every cell to its stratum and report collisions."""
    bound = max_n() if bound is None else bound
    if n > bound:
        raise ResourceError("n = %d exceeds the stratification bound %d "
                            "(set FLAGPOS_MAX_N to override)" % (n, bound))
    K = _check_K(n, K)
    groups = {}
    cells = enumerate_cells(n, K)
    for c in cells:
        groups.setdefault(cell_matroid(c), []).append(c)
    collisions = []
    for group in groups.values():
        collisions.extend(combinations(group, 2))
    collisions.sort(key=lambda ab: (ab[0].w, ab[0].v, ab[1].w, ab[1].v))
    return InjectivityReport(n, K, len(cells), len(groups), not collisions, collisions)


# -- Bruhat interval polytopes ----------------------------------------------------

def moment_point(u, K):
    """sum over k in K of the indicator vector of u([k])."""
    p = [0] * u.n
    for k in K:
        for i in u.image(k):
            p[i - 1] += 1
    return tuple(p)


def bip_vertices(c):
    pts = {moment_point(x, c.K) for x in interval(c.v, c.w)}
    return LatticePolytope.hull(pts, c.n)


def minkowski_terms(c):
    """The single-k cells (v <| w_{J_k}^{-1}, w^{J_k}), J_k = [n-1] minus {k}."""
    terms = []
    for k in c.K:
        v2, w2 = demazure_reduce(c.v, c.w, complement(c.n, (k,)))
        terms.append(CellIndex(v2, w2, (k,)))
    return terms


def minkowski_check(c):
    lhs = bip_vertices(c)
    rhs = minkowski_sum(bip_vertices(t) for t in minkowski_terms(c))
    return same_polytope(lhs, rhs)


def grassmann_consistency_check(c, k):
    if k not in c.K:
        raise ArgumentError("%d is not in K = %r" % (k, c.K))
    v2, w2 = demazure_reduce(c.v, c.w, complement(c.n, (k,)))
    return cell_matroid(c)[k] == cell_matroid(CellIndex(v2, w2, (k,)))[k]


def random_cells(n, count, seed=0):
    """``count`` cells drawn uniformly over (K, cell) with a fixed seed."""
    rng = random.Random(seed)
    Ks = [K for r in range(1, n) for K in combinations(range(1, n), r)]
    by_K = {}
    out = []
    for _ in range(count):
        K = rng.choice(Ks)
        if K not in by_K:
            by_K[K] = enumerate_cells(n, K)
        out.append(rng.choice(by_K[K]))
    return out
