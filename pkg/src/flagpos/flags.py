"""
Points of partial flag varieties: Plücker vectors, positivity classes,
totally positive witnesses, completion, cyclic shifts, and the explicit
counterexample families with checkable obstruction certificates.
"""

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from flagpos.errors import ArgumentError, StateError
from flagpos.exact import (
    Mat, diag, identity, in_span, mat_from_json, mat_to_json, minor,
    nullspace, rank, subsets,
)
from flagpos.positivity import (
    GrPoint, extend_down, extend_up, is_totally_positive, restrict,
)

log = logging.getLogger(__name__)

__all__ = [
    "Flag", "PluckerVector", "PluckerStatus", "LusztigStatus", "PositivityClass",
    "ObstructionCertificate", "is_interval",
    "plucker", "classify_plucker", "witness_matrix", "tp_witness_complete",
    "complete_flag", "is_lusztig_positive", "shift_matrix", "cyclic_shift",
    "converse_counterexample", "cyclic_counterexample", "certify_not_tnn",
]

# t is searched over 1, 2, 4, ..., 2**64
MAX_T_EXPONENT = 64


def is_interval(K):
    K = sorted(K)
    return bool(K) and K[-1] - K[0] == len(K) - 1


class Flag:
    """
    A partial flag (V_k)_{k in K} in Q^n, where V_k is spanned by the first k
    columns of ``rep``.
    """

    __slots__ = ("n", "K", "rep")

    def __init__(self, n, K, rep):
        K = tuple(sorted(set(K)))
        if n < 1:
            raise ArgumentError("ambient dimension must be positive")
        if not K and n != 1:
            raise ArgumentError("K must be nonempty")
        if any(not 1 <= k <= n - 1 for k in K):
            raise ArgumentError("K must lie in [1, %d]" % (n - 1))
        if rep.rows != n:
            raise ArgumentError("rep has %d rows, expected %d" % (rep.rows, n))
        if K and rep.cols < K[-1]:
            raise ArgumentError("rep needs at least %d columns" % K[-1])
        for k in K:
            if rank(rep.first_columns(k)) != k:
                raise ArgumentError("first %d columns of rep are not independent" % k)
        self.n, self.K, self.rep = n, K, rep

    def subspace(self, k):
        if k not in self.K:
            raise ArgumentError("%d is not in K = %r" % (k, self.K))
        return GrPoint(self.n, k, self.rep.first_columns(k))

    def act(self, g):
        """The flag g . V."""
        return Flag(self.n, self.K, g @ self.rep)

    def project(self, K):
        """Forget the subspaces outside K."""
        if not set(K) <= set(self.K):
            raise ArgumentError("%r is not a subset of %r" % (K, self.K))
        return Flag(self.n, K, self.rep)

    def to_json(self):
        return {"n": self.n, "K": list(self.K), "rep": mat_to_json(self.rep)}

    @classmethod
    def from_json(cls, obj):
        try:
            n, K, rep = obj["n"], obj["K"], obj["rep"]
        except (KeyError, TypeError):
            raise ArgumentError("flag JSON needs keys n, K, rep") from None
        if not isinstance(n, int) or not isinstance(K, list):
            raise ArgumentError("flag JSON: n must be an integer and K a list")
        return cls(n, K, mat_from_json(rep, None if rep else 0))

    def __eq__(self, other):
        return (isinstance(other, Flag) and (self.n, self.K, self.rep)
                == (other.n, other.K, other.rep))

    def __hash__(self):
        return hash((self.n, self.K, self.rep))

    def __repr__(self):
        return "Flag(n=%d, K=%r, rep=%r)" % (self.n, self.K, self.rep)


@dataclass(frozen=True)
class PluckerVector:
    """Projective Plücker coordinates, stored as a primitive integer vector
    whose first nonzero coordinate (lexicographically) is positive."""

    n: int
    k: int
    coords: dict

    @classmethod
    def from_values(cls, n, k, values):
        values = {I: Fraction(x) for I, x in values.items()}
        nonzero = [x for _, x in sorted(values.items()) if x != 0]
        if not nonzero:
            raise ArgumentError("Plücker vector is identically zero")
        den = lcm(*(x.denominator for x in nonzero))
        ints = {I: int(x * den) for I, x in values.items()}
        g = reduce(gcd, (abs(v) for v in ints.values()))
        s = 1 if nonzero[0] > 0 else -1
        return cls(n, k, {I: s * v // g for I, v in sorted(ints.items())})

    def __getitem__(self, I):
        return self.coords[tuple(I)]

    def values(self):
        return [self.coords[I] for I in sorted(self.coords)]

    def support(self):
        return frozenset(I for I, v in self.coords.items() if v != 0)

    def reindexed(self, f):
        """Apply the index map f : I -> I' and renormalize."""
        return PluckerVector.from_values(
            self.n, len(f(next(iter(self.coords)))),
            {tuple(sorted(f(I))): v for I, v in self.coords.items()})

    def to_json(self):
        return {",".join(map(str, I)): str(v) for I, v in sorted(self.coords.items())}

    def __eq__(self, other):
        return (isinstance(other, PluckerVector)
                and (self.n, self.k) == (other.n, other.k) and self.coords == other.coords)

    def __hash__(self):
        return hash((self.n, self.k, tuple(sorted(self.coords.items()))))


class PluckerStatus(enum.Enum):
    PLUCKER_POSITIVE = "PLUCKER_POSITIVE"
    PLUCKER_NONNEG_NOT_POSITIVE = "PLUCKER_NONNEG_NOT_POSITIVE"
    NOT_PLUCKER_NONNEG = "NOT_PLUCKER_NONNEG"


class LusztigStatus(enum.Enum):
    POSITIVE_WITH_WITNESS = "POSITIVE_WITH_WITNESS"
    # not totally positive; totally nonnegative when K is an interval
    NOT_POSITIVE = "NOT_POSITIVE"
    # some Plücker coordinate has the wrong sign
    NOT_TNN_NEGATIVE_COORDINATE = "NOT_TNN_NEGATIVE_COORDINATE"
    NOT_TNN_WITH_CERTIFICATE = "NOT_TNN_WITH_CERTIFICATE"
    UNDECIDED = "UNDECIDED"


@dataclass
class PositivityClass:
    plucker: PluckerStatus
    lusztig: LusztigStatus = None
    witness: Mat = None
    certificate: "ObstructionCertificate" = None

    def __post_init__(self):
        if (self.lusztig is LusztigStatus.POSITIVE_WITH_WITNESS
                and self.plucker is not PluckerStatus.PLUCKER_POSITIVE):
            raise StateError("a totally positive flag must be Plücker positive")

    def to_json(self):
        out = {"plucker": self.plucker.value}
        if self.lusztig is not None:
            out["lusztig"] = self.lusztig.value
        if self.witness is not None:
            out["witness"] = mat_to_json(self.witness)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def plucker(V, k):
    if k not in V.K:
        raise ArgumentError("%d is not in K = %r" % (k, V.K))
    cols = tuple(range(1, k + 1))
    A = V.rep
    return PluckerVector.from_values(V.n, k, {I: minor(A, I, cols) for I in subsets(V.n, k)})


def classify_plucker(V):
    positive = True
    for k in V.K:
        vals = plucker(V, k).values()
        if any(x < 0 for x in vals):
            return PositivityClass(PluckerStatus.NOT_PLUCKER_NONNEG)
        positive = positive and all(x > 0 for x in vals)
    if positive:
        return PositivityClass(PluckerStatus.PLUCKER_POSITIVE)
    return PositivityClass(PluckerStatus.PLUCKER_NONNEG_NOT_POSITIVE)


# -- witnesses and completion -----------------------------------------------

def _require_complete(V):
    if V.K != tuple(range(1, V.n)):
        raise ArgumentError("expected a complete flag, got K = %r" % (V.K,))


def _lower_triangular_rep(V):
    """
    Square lower-triangular representative of a Plücker-positive complete flag
    with all left-justified minors positive.
    """
    n = V.n
    cols = [list(c) for c in V.rep.first_columns(n - 1).columns()]
    # column operations left to right: clear row r to the right of the pivot
    for r in range(n - 1):
        p = cols[r][r]
        if p == 0:
            raise StateError("leading principal minor of order %d vanishes" % (r + 1))
        for j in range(r + 1, n - 1):
            f = cols[j][r] / p
            if f:
                cols[j] = [a - f * b for a, b in zip(cols[j], cols[r])]
    # make the diagonal positive
    for j in range(n - 1):
        if cols[j][j] < 0:
            cols[j] = [-a for a in cols[j]]
    cols.append([Fraction(int(i == n - 1)) for i in range(n)])
    return Mat.from_columns(cols, n)


def witness_matrix(V, t):
    """g = A Diag(t^(n-1), ..., t, 1) A^T for the lower-triangular representative A."""
    _require_complete(V)
    n = V.n
    A = _lower_triangular_rep(V)
    return A @ diag([Fraction(t) ** (n - 1 - i) for i in range(n)]) @ A.T


def tp_witness_complete(V, t=None):
    """
    A totally positive matrix representing the Plücker-positive complete flag V.

    t is searched over 1, 2, 4, ... unless given explicitly.
    """
    _require_complete(V)
    if V.n == 1:
        return identity(1)
    if classify_plucker(V).plucker is not PluckerStatus.PLUCKER_POSITIVE:
        raise StateError("flag is not Plücker positive")
    candidates = [Fraction(t)] if t is not None else [Fraction(2) ** e for e in range(MAX_T_EXPONENT + 1)]
    for tt in candidates:
        g = witness_matrix(V, tt)
        if is_totally_positive(g):
            return g
        if tt == 1 and t is None:
            log.warning("witness at t = 1 is not totally positive for %r", V)
    raise StateError("no totally positive witness found up to t = %s" % candidates[-1])


def _extend_basis(basis, target, n):
    """Append columns of ``target`` to ``basis`` until it spans target's space."""
    out = list(basis)
    for c in target.rep.columns():
        if len(out) == target.k:
            break
        if not in_span(Mat.from_columns(out, n) if out else Mat.zeros(n, 0), c):
            out.append(c)
    if len(out) != target.k:
        raise StateError("subspaces are not nested")
    return out


def complete_flag(V):
    """Extend a Plücker-positive flag with interval K to a Plücker-positive complete flag."""
    if not is_interval(V.K):
        raise ArgumentError("K = %r is not an interval" % (V.K,))
    if V.K == tuple(range(1, V.n)):
        if classify_plucker(V).plucker is not PluckerStatus.PLUCKER_POSITIVE:
            raise StateError("flag is not Plücker positive")
        return V
    if classify_plucker(V).plucker is not PluckerStatus.PLUCKER_POSITIVE:
        raise StateError("flag is not Plücker positive")
    n, k, l = V.n, V.K[0], V.K[-1]
    below = []
    W = V.subspace(k)
    for _ in range(k - 1):
        W = extend_down(W)
        below.append(W)
    below.reverse()
    above = []
    W = V.subspace(l)
    for _ in range(n - 1 - l):
        W = extend_up(W)
        above.append(W)
    cols = []
    for W in below:
        cols = _extend_basis(cols, W, n)
    cols = _extend_basis(cols, V.subspace(k), n)
    cols += V.rep.take_columns(range(k, l)).columns()
    for W in above:
        cols = _extend_basis(cols, W, n)
    out = Flag(n, range(1, n), Mat.from_columns(cols, n))
    if classify_plucker(out).plucker is not PluckerStatus.PLUCKER_POSITIVE:
        raise StateError("completion is not Plücker positive")
    return out


def is_lusztig_positive(V, extension=None):
    """
    Classify V and fill in its Lusztig status.

    ``extension`` optionally supplies a flag over an interval K' containing K
    that agrees with V on K; if it is Plücker positive it yields a witness.
    """
    cls = classify_plucker(V)
    if cls.plucker is PluckerStatus.NOT_PLUCKER_NONNEG:
        cls.lusztig = LusztigStatus.NOT_TNN_NEGATIVE_COORDINATE
        return cls
    if is_interval(V.K) or V.n == 1:
        if cls.plucker is PluckerStatus.PLUCKER_POSITIVE:
            cls.witness = tp_witness_complete(complete_flag(V))
            cls.lusztig = LusztigStatus.POSITIVE_WITH_WITNESS
        else:
            cls.lusztig = LusztigStatus.NOT_POSITIVE
        return cls
    if extension is not None and cls.plucker is PluckerStatus.PLUCKER_POSITIVE:
        _check_extension(V, extension)
        if classify_plucker(extension).plucker is PluckerStatus.PLUCKER_POSITIVE:
            cls.witness = tp_witness_complete(complete_flag(extension))
            cls.lusztig = LusztigStatus.POSITIVE_WITH_WITNESS
            return cls
    cert = certify_not_tnn(V)
    if cert is not None:
        cls.certificate = cert
        cls.lusztig = LusztigStatus.NOT_TNN_WITH_CERTIFICATE
    elif cls.plucker is PluckerStatus.PLUCKER_NONNEG_NOT_POSITIVE:
        cls.lusztig = LusztigStatus.NOT_POSITIVE
    else:
        cls.lusztig = LusztigStatus.UNDECIDED
    return cls


def _check_extension(V, E):
    if E.n != V.n or not set(V.K) <= set(E.K) or not is_interval(E.K):
        raise ArgumentError("extension must be over an interval containing K")
    for k in V.K:
        if not V.subspace(k).same_subspace(E.subspace(k)):
            raise ArgumentError("extension disagrees with V at level %d" % k)


# -- cyclic shift -------------------------------------------------------------

def shift_matrix(n, eps):
    """sigma_eps : (v_1, ..., v_n) -> (v_2, ..., v_n, (-1)^(eps-1) v_1)."""
    m = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = 1
    m[n - 1][0] = 1 if eps % 2 == 1 else -1
    return Mat(m, n)


def cyclic_shift(V, eps):
    return V.act(shift_matrix(V.n, eps))


# -- obstruction certificates -------------------------------------------------

@dataclass
class ObstructionCertificate:
    """
    Evidence that a flag is not totally nonnegative.

    With W_i = V_i cut down to span(e_1..e_m): W_k contains e_1 + c e_m with
    c != 0, dim W_l > dim W_k and e_1 is not in W_l.  Any totally nonnegative
    completion would contain some W_j, k <= j <= l, of dimension dim W_k + 1
    containing W_k, forcing e_1 into W_j and hence into W_l.
    """

    k: int
    l: int
    m: int
    c: Fraction
    restricted_k: GrPoint
    restricted_l: GrPoint
    negative_minor: tuple = field(default=None)

    def validate(self, V):
        if self.k not in V.K or self.l not in V.K or not self.k < self.l:
            return False
        if not 2 <= self.m <= V.n or self.c == 0:
            return False
        Wk = restrict(V.subspace(self.k), self.m)
        Wl = restrict(V.subspace(self.l), self.m)
        if not (Wk.same_subspace(self.restricted_k) and Wl.same_subspace(self.restricted_l)):
            return False
        m = self.m
        v = [Fraction(0)] * m
        v[0], v[m - 1] = Fraction(1), self.c
        e1 = [Fraction(int(i == 0)) for i in range(m)]
        return Wk.contains(v) and Wl.k > Wk.k and not Wl.contains(e1)

    def to_json(self):
        out = {
            "k": self.k, "l": self.l, "m": self.m, "c": "%d/%d" % (self.c.numerator, self.c.denominator),
            "dim_restricted_k": self.restricted_k.k,
            "dim_restricted_l": self.restricted_l.k,
            "restricted_k": mat_to_json(self.restricted_k.rep),
            "restricted_l": mat_to_json(self.restricted_l.rep),
        }
        if self.negative_minor is not None:
            rows, value = self.negative_minor
            out["negative_minor"] = {"rows": list(rows), "value": "%d/%d" % (value.numerator, value.denominator)}
        return out


def _e1_em_vector(W, m):
    """The c with e_1 + c e_m in W (W in Q^m), or None; None also if e_1 is in W."""
    if W.k == 0:
        return None
    coeffs = nullspace(W.rep.take_rows(range(1, m - 1)))
    vecs = [W.rep.apply(x) for x in coeffs]
    if not vecs:
        return None
    if in_span(Mat.from_columns(vecs, m), [int(i == 0) for i in range(m)]):
        return None
    for v in vecs:
        if v[0] != 0:
            return v[m - 1] / v[0]
    return None


def certify_not_tnn(V):
    """Search for a restriction obstruction; None means inconclusive."""
    for m in range(2, V.n + 1):
        for a, k in enumerate(V.K):
            Wk = restrict(V.subspace(k), m)
            c = _e1_em_vector(Wk, m)
            if c is None or c == 0:
                continue
            for l in V.K[a + 1:]:
                Wl = restrict(V.subspace(l), m)
                if Wl.k > Wk.k and not Wl.contains([int(i == 0) for i in range(m)]):
                    cert = ObstructionCertificate(k, l, m, c, Wk, Wl)
                    assert cert.validate(V)
                    return cert
    return None


def _first_negative_left_minor(A, order):
    cols = tuple(range(1, order + 1))
    for I in subsets(A.rows, order):
        val = minor(A, I, cols)
        if val < 0:
            return I, val
    return None


def converse_counterexample(n, K, k, l):
    """
    A Plücker-nonnegative flag that is not totally nonnegative, for K with
    consecutive elements k < l, l - k >= 2.
    """
    K = tuple(sorted(set(K)))
    if k not in K or l not in K or l - k < 2 or any(k < x < l for x in K):
        raise ArgumentError("k, l must be consecutive elements of K with l - k >= 2")
    if n < k + 3 or K[-1] > n - 1 or K[0] < 1:
        raise ArgumentError("need n >= k + 3 and K within [1, n-1]")
    s = (-1) ** (k - 1)
    # columns: e_5..e_{k+3}, s(e_1 + e_4), s e_2, s e_3, e_{k+4}..e_n
    def e(i):
        return [int(j == i) for j in range(1, n + 1)]
    cols = [e(i) for i in range(5, k + 4)]
    cols.append([s * x for x in (1, 0, 0, 1)] + [0] * (n - 4))
    cols.append([s * x for x in e(2)])
    cols.append([s * x for x in e(3)])
    cols += [e(i) for i in range(k + 4, n + 1)]
    A = Mat.from_columns(cols, n)
    V = Flag(n, K, A)
    cert = certify_not_tnn(V)
    if cert is None:
        raise StateError("no obstruction found for the constructed flag")
    cert.negative_minor = _first_negative_left_minor(A, k + 1)
    return V, cert


def cyclic_counterexample(n, K, eps, k=None, l=None):
    """
    W in PFl_K^{>=0} with sigma_eps(W) not totally nonnegative.

    Returns (W, X, certificate) where X = sigma_eps(W).
    """
    K = tuple(sorted(set(K)))
    if len(K) < 2:
        raise ArgumentError("need |K| >= 2")
    if n < 3 or K[0] < 1 or K[-1] > n - 1:
        raise ArgumentError("need n >= 3 and K within [1, n-1]")
    k = K[0] if k is None else k
    l = K[K.index(k) + 1] if l is None else l
    if k not in K or l not in K or not k < l:
        raise ArgumentError("k < l must lie in K")
    s = (-1) ** (k - 1)
    def e(i):
        return [int(j == i) for j in range(1, n + 1)]
    # columns: e_3..e_{k+1}, s(e_1 + e_2), e_{k+2}..e_n
    cols = [e(i) for i in range(3, k + 2)]
    cols.append([s, s] + [0] * (n - 2))
    cols += [e(i) for i in range(k + 2, n + 1)]
    A = Mat.from_columns(cols, n)
    full = Flag(n, range(1, n), A)
    if classify_plucker(full).plucker is PluckerStatus.NOT_PLUCKER_NONNEG:
        raise StateError("constructed complete flag is not Plücker nonnegative")
    W = Flag(n, K, A)
    X = cyclic_shift(W, eps)
    cert = certify_not_tnn(X)
    if cert is None:
        raise StateError("no obstruction found for the shifted flag")
    return W, X, cert
