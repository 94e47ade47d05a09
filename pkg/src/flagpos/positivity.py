"""
Total positivity of matrices and Plücker positivity of Grassmannian points.
"""

from dataclasses import dataclass
from fractions import Fraction

from flagpos.errors import ArgumentError, StateError
from flagpos.exact import (
    Mat, all_minors, column_basis, diag, hstack, identity, in_span, minor,
    nullspace, rank, same_span, subsets, to_rat,
)

__all__ = [
    "GrPoint", "span", "weak_sign",
    "is_totally_positive", "f_family", "fekete_positive",
    "extend_up", "extend_down", "perp", "restrict",
    "counterexample_lemma_check",
    "elementary_lower", "elementary_upper", "random_tp_matrix", "random_tnn_matrix",
]


def weak_sign(values):
    """+1 if all values are >= 0 (not all zero), -1 if all <= 0, else 0."""
    values = list(values)
    if all(x >= 0 for x in values) and any(x > 0 for x in values):
        return 1
    if all(x <= 0 for x in values) and any(x < 0 for x in values):
        return -1
    return 0


@dataclass(frozen=True)
class GrPoint:
    """A k-dimensional subspace of Q^n, given by an n x k basis matrix."""

    n: int
    k: int
    rep: Mat

    def __post_init__(self):
        if self.rep.shape != (self.n, self.k):
            raise ArgumentError("rep shape %s != (%d, %d)" % (self.rep.shape, self.n, self.k))
        if not 0 <= self.k <= self.n:
            raise ArgumentError("need 0 <= k <= n")
        if rank(self.rep) != self.k:
            raise ArgumentError("rep does not have full column rank")

    def minors(self):
        """Maximal minors keyed by row subset, lexicographic."""
        return {I: minor(self.rep, I, tuple(range(1, self.k + 1)))
                for I in subsets(self.n, self.k)}

    def sign(self):
        return weak_sign(self.minors().values())

    def is_plucker_positive(self):
        vals = list(self.minors().values())
        return all(x > 0 for x in vals) or all(x < 0 for x in vals)

    def is_plucker_nonneg(self):
        return self.sign() != 0

    def contains(self, v):
        return in_span(self.rep, v)

    def contains_space(self, other):
        return all(self.contains(c) for c in other.rep.columns())

    def same_subspace(self, other):
        return self.n == other.n and self.k == other.k and same_span(self.rep, other.rep)


def span(vectors, n):
    """GrPoint spanned by the given vectors (need not be independent)."""
    vectors = [tuple(to_rat(x) for x in v) for v in vectors]
    if not vectors:
        return GrPoint(n, 0, Mat.zeros(n, 0))
    B = column_basis(Mat.from_columns(vectors, n))
    return GrPoint(n, B.cols, B)


def _unit(n, i):
    return tuple(Fraction(int(j == i)) for j in range(1, n + 1))


# -- matrices ---------------------------------------------------------------

def is_totally_positive(A):
    if A.rows != A.cols:
        raise ArgumentError("total positivity is tested on square matrices")
    return all(val > 0 for order in range(1, A.rows + 1)
               for _, _, val in all_minors(A, order))


def f_family(n, t):
    """The n x n matrix (t^((i-j)^2)), totally positive for 0 < t < 1."""
    t = to_rat(t)
    if not 0 <= t < 1:
        raise ArgumentError("f_family needs 0 <= t < 1, got %s" % t)
    return Mat([[t ** ((i - j) ** 2) for j in range(n)] for i in range(n)], n)


def fekete_positive(A):
    """
    Fekete's criterion for an n x (k+1) matrix: all left-justified k x k minors
    and all consecutive-row (k+1) x (k+1) minors positive.
    """
    n, k1 = A.shape
    if k1 < 1 or n < k1:
        raise ArgumentError("fekete_positive needs n x (k+1) with n >= k+1 >= 1")
    k = k1 - 1
    left = tuple(range(1, k + 1))
    if any(minor(A, I, left) <= 0 for I in subsets(n, k)):
        return False
    full = tuple(range(1, k1 + 1))
    return all(minor(A, tuple(range(i, i + k1)), full) > 0
               for i in range(1, n - k + 1))


# -- Grassmannian constructions ---------------------------------------------

def _normalized_rep(V):
    # flip the first column so that the leading consecutive minor is positive
    if V.k == 0:
        return V.rep
    lead = minor(V.rep, tuple(range(1, V.k + 1)), tuple(range(1, V.k + 1)))
    if lead < 0:
        cols = V.rep.columns()
        cols[0] = tuple(-x for x in cols[0])
        return Mat.from_columns(cols, V.n)
    return V.rep


def extend_up(V):
    """
    A (k+1)-dimensional W containing V with all maximal minors positive.

    Appends a column w with w_1 = ... = w_k = 0 and, for i = k+1, ..., n, w_i
    the least positive integer making the consecutive minor on rows
    [i-k, i] positive.
    """
    n, k = V.n, V.k
    if k >= n:
        raise StateError("cannot extend a subspace of dimension %d in Q^%d" % (k, n))
    A = _normalized_rep(V)
    cols = tuple(range(1, k + 1))
    w = [Fraction(0)] * n
    for i in range(k + 1, n + 1):
        rows = tuple(range(i - k, i + 1))
        coef = minor(A, rows[:-1], cols) if k else Fraction(1)
        if coef <= 0:
            raise StateError("consecutive minor on rows %r is not positive" % (rows[:-1],))
        w[i - 1] = Fraction(0)
        base = minor(hstack(A, Mat.from_columns([w], n)), rows, cols + (k + 1,))
        # base + w_i * coef > 0
        wi = max(1, (-base // coef) + 1)
        w[i - 1] = Fraction(wi)
    B = hstack(A, Mat.from_columns([w], n))
    W = GrPoint(n, k + 1, B)
    if not all(x > 0 for x in W.minors().values()):
        raise StateError("input is not Plücker positive; extension failed")
    return W


def _pairing(n):
    return diag([(-1) ** i for i in range(n)])


def perp(V):
    """Orthogonal complement for <v, w> = v1 w1 - v2 w2 + v3 w3 - ..."""
    n = V.n
    M = V.rep.T @ _pairing(n)
    basis = nullspace(M)
    if not basis:
        return GrPoint(n, 0, Mat.zeros(n, 0))
    return GrPoint(n, len(basis), Mat.from_columns(basis, n))


def extend_down(V):
    """A (k-1)-dimensional Plücker-positive subspace of V."""
    if V.k < 1:
        raise StateError("cannot shrink the zero subspace")
    return perp(extend_up(perp(V)))


def restrict(V, m):
    """V intersected with span(e_1, ..., e_m), as a point of Gr(d, m)."""
    n, k = V.n, V.k
    if not 0 <= m <= n:
        raise ArgumentError("restriction size %d outside 0..%d" % (m, n))
    if k == 0:
        return GrPoint(m, 0, Mat.zeros(m, 0))
    bottom = V.rep.take_rows(range(m, n))
    coeffs = nullspace(bottom)
    vecs = [V.rep.apply(x)[:m] for x in coeffs]
    if not vecs:
        return GrPoint(m, 0, Mat.zeros(m, 0))
    return GrPoint(m, len(vecs), Mat.from_columns(vecs, m))


def counterexample_lemma_check(V, W, c):
    """
    Given Plücker-nonnegative V in W with dim W = dim V + 1 and
    e_1 + c e_n in V, report whether e_1 lies in W (it always should).
    """
    c = to_rat(c)
    n = V.n
    if W.n != n or W.k != V.k + 1:
        raise ArgumentError("need dim W = dim V + 1 in the same ambient space")
    if not W.contains_space(V):
        raise ArgumentError("V is not contained in W")
    if not (V.is_plucker_nonneg() and W.is_plucker_nonneg()):
        raise ArgumentError("V and W must be Plücker nonnegative")
    v = list(_unit(n, 1))
    v[n - 1] += c
    if not V.contains(v):
        raise ArgumentError("e_1 + c e_n is not in V")
    return W.contains(_unit(n, 1))


# -- random totally nonnegative matrices -------------------------------------

def elementary_lower(n, i, a):
    """Identity plus a in position (i+1, i), 1-based i."""
    m = identity(n).tolist()
    m[i][i - 1] = to_rat(a)
    return Mat(m, n)


def elementary_upper(n, i, a):
    m = identity(n).tolist()
    m[i - 1][i] = to_rat(a)
    return Mat(m, n)


def _w0_word(n):
    return [i for top in range(n - 1, 0, -1) for i in range(1, top + 1)]


def _rand_pos(rng, hi=4):
    return Fraction(rng.randint(1, hi), rng.randint(1, 3))


def random_tp_matrix(n, rng):
    """L D U with L, U products of positive elementary factors along a reduced word of w0."""
    g = identity(n)
    for i in _w0_word(n):
        g = g @ elementary_lower(n, i, _rand_pos(rng))
    g = g @ diag([_rand_pos(rng) for _ in range(n)])
    for i in _w0_word(n):
        g = g @ elementary_upper(n, i, _rand_pos(rng))
    return g


def random_tnn_matrix(n, rng, factors=None, zero_prob=Fraction(1, 3)):
    """Product of random nonnegative bidiagonal factors; often on the boundary."""
    if factors is None:
        factors = n * (n - 1)
    g = identity(n)
    for _ in range(factors):
        if n < 2:
            break
        if rng.random() < zero_prob:
            continue
        i = rng.randint(1, n - 1)
        a = _rand_pos(rng)
        g = g @ (elementary_lower(n, i, a) if rng.random() < 0.5 else elementary_upper(n, i, a))
    return g
