"""
Exact linear algebra over the rationals.

Entries are :class:`fractions.Fraction`.  Row/column subsets passed to
:func:`minor` and friends are 1-based increasing tuples, matching the usual
mathematical notation; direct element access ``A[i, j]`` is 0-based.

>>> A = Mat([[1, 2], [3, 4]])
>>> minor(A, (1, 2), (1, 2))
Fraction(-2, 1)
"""

from fractions import Fraction
from itertools import combinations
from math import lcm

from flagpos.errors import ArgumentError

__all__ = [
    "Mat", "to_rat", "identity", "diag", "hstack",
    "det", "minor", "all_minors", "subsets",
    "rref", "rank", "column_echelon", "nullspace", "column_basis",
    "in_span", "same_span", "cauchy_binet_check",
    "mat_to_json", "mat_from_json", "rat_to_str",
]


def to_rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError("exact entries only, got %r" % (x,))
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError("cannot convert %r to a rational" % (x,))


class Mat:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries, cols=None):
        data = tuple(tuple(to_rat(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ArgumentError("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [tuple(c) for c in columns]
        if rows is None:
            if not columns:
                raise ArgumentError("row count needed for an empty column list")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise ArgumentError("columns of unequal length")
        return cls([[c[i] for c in columns] for i in range(rows)], len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def col(self, j):
        return tuple(r[j] for r in self._data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def tolist(self):
        return [list(r) for r in self._data]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self):
        return Mat([[self._data[i][j] for i in range(self.rows)]
                    for j in range(self.cols)], self.rows)

    def take_columns(self, idxs):
        """Columns at the given 0-based positions."""
        return Mat([[r[j] for j in idxs] for r in self._data], len(idxs))

    def take_rows(self, idxs):
        return Mat([self._data[i] for i in idxs], self.cols)

    def first_columns(self, k):
        return self.take_columns(range(k))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ArgumentError("shape mismatch %s @ %s" % (self.shape, other.shape))
        ocols = other.columns()
        return Mat([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols]
                    for r in self._data], other.cols)

    def __neg__(self):
        return Mat([[-x for x in r] for r in self._data], self.cols)

    def scale(self, c):
        c = to_rat(c)
        return Mat([[c * x for x in r] for r in self._data], self.cols)

    def apply(self, vec):
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self._data)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = ", ".join("[%s]" % ", ".join(rat_to_str(x) for x in r) for r in self._data)
        return "Mat(%dx%d: %s)" % (self.rows, self.cols, body)


def identity(n):
    return Mat([[int(i == j) for j in range(n)] for i in range(n)], n)


def diag(values):
    values = list(values)
    n = len(values)
    return Mat([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)


def hstack(*mats):
    rows = mats[0].rows
    for m in mats:
        if m.rows != rows:
            raise ArgumentError("hstack needs equal row counts")
    return Mat([sum((m.row(i) for m in mats), ()) for i in range(rows)],
               sum(m.cols for m in mats))


def subsets(n, k):
    """All k-subsets of [1, n] in lexicographic order."""
    return list(combinations(range(1, n + 1), k))


# -- determinants -----------------------------------------------------------

def _bareiss(m):
    # fraction-free elimination; m is a square list of int lists, destroyed
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - a * rk[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _det_rows(rows):
    scale = 1
    lifted = []
    for r in rows:
        d = lcm(*(x.denominator for x in r)) if r else 1
        scale *= d
        lifted.append([x.numerator * (d // x.denominator) for x in r])
    return Fraction(_bareiss(lifted), scale)


def det(A):
    if A.rows != A.cols:
        raise ArgumentError("determinant of a non-square %dx%d matrix" % A.shape)
    return _det_rows([list(A.row(i)) for i in range(A.rows)])


def _check_subset(S, bound, what):
    S = tuple(S)
    if any(not 1 <= s <= bound for s in S):
        raise ArgumentError("%s index out of range 1..%d: %r" % (what, bound, S))
    if any(a >= b for a, b in zip(S, S[1:])):
        raise ArgumentError("%s indices must be strictly increasing: %r" % (what, S))
    return S


def minor(A, I, J):
    """Determinant of the submatrix of A in rows I and columns J (1-based)."""
    I = _check_subset(I, A.rows, "row")
    J = _check_subset(J, A.cols, "column")
    if len(I) != len(J):
        raise ArgumentError("minor needs |I| == |J|, got %d and %d" % (len(I), len(J)))
    return _det_rows([[A[i - 1, j - 1] for j in J] for i in I])


def all_minors(A, order):
    """Every minor of the given order as (I, J, value), lexicographic in (I, J)."""
    if not 1 <= order <= min(A.rows, A.cols):
        raise ArgumentError("order %d outside 1..%d" % (order, min(A.rows, A.cols)))
    rows = subsets(A.rows, order)
    cols = subsets(A.cols, order)
    return [(I, J, minor(A, I, J)) for I in rows for J in cols]


# -- elimination ------------------------------------------------------------

def rref(A):
    """Reduced row echelon form and the 0-based pivot columns."""
    m = [list(A.row(i)) for i in range(A.rows)]
    pivots = []
    r = 0
    for c in range(A.cols):
        if r == A.rows:
            break
        p = next((i for i in range(r, A.rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(A.rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return Mat(m, A.cols), pivots


def rank(A):
    return len(rref(A)[1])


def column_echelon(A):
    """
    Reduced column echelon form of A and its pivot rows.

    The pivot rows (1-based) form the lexicographically minimal row set whose
    maximal minor is nonzero.  Zero columns, if any, sit at the right.
    """
    R, pivots = rref(A.T)
    return R.T, tuple(p + 1 for p in pivots)


def nullspace(A):
    """Basis of {x : Ax = 0}, one vector per free column of the RREF."""
    R, pivots = rref(A)
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * A.cols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -R[r, f]
        basis.append(tuple(x))
    return basis


def column_basis(A):
    """The nonzero columns of the reduced column echelon form."""
    E, pivots = column_echelon(A)
    return E.first_columns(len(pivots))


def in_span(A, v):
    v = tuple(to_rat(x) for x in v)
    if A.cols == 0:
        return all(x == 0 for x in v)
    return rank(hstack(A, Mat.from_columns([v], A.rows))) == rank(A)


def same_span(A, B):
    if A.rows != B.rows:
        return False
    r = rank(A)
    return r == rank(B) and (A.cols + B.cols == 0 or rank(hstack(A, B)) == r)


def cauchy_binet_check(A, B, k):
    """Check the Cauchy-Binet expansion of every order-k minor of AB."""
    if A.cols != B.rows:
        raise ArgumentError("shape mismatch %s, %s" % (A.shape, B.shape))
    if not 1 <= k <= min(A.rows, B.cols):
        raise ArgumentError("order %d outside 1..%d" % (k, min(A.rows, B.cols)))
    AB = A @ B
    middle = subsets(A.cols, k)
    for I in subsets(A.rows, k):
        left = [minor(A, I, L) for L in middle]
        for J in subsets(B.cols, k):
            rhs = sum((a * minor(B, L, J) for a, L in zip(left, middle)), Fraction(0))
            if minor(AB, I, J) != rhs:
                return False
    return True


# -- serialization ----------------------------------------------------------

def rat_to_str(x):
    return "%d/%d" % (x.numerator, x.denominator)


def mat_to_json(A):
    return [[rat_to_str(x) for x in A.row(i)] for i in range(A.rows)]


def mat_from_json(obj, cols=None):
    if not isinstance(obj, list) or any(not isinstance(r, list) for r in obj):
        raise ArgumentError("matrix must be an array of arrays")
    for r in obj:
        for x in r:
            if not isinstance(x, (str, int)) or isinstance(x, bool):
                raise ArgumentError("matrix entries must be 'p/q' strings, got %r" % (x,))
    try:
        return Mat(obj, cols)
    except (ValueError, ZeroDivisionError) as exc:
        raise ArgumentError("bad matrix entry: %s" % exc) from None
