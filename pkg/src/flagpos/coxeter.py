"""
The symmetric group S_n as a Coxeter group.

Permutations are in one-line notation, 1-based values; ``w * s_i`` swaps
positions i and i+1, so a word s_{i1} ... s_{il} is evaluated left to right
by successive position swaps.

>>> w = Perm.from_string("5214763")
>>> length(w)
9
>>> word_to_perm(7, [1, 3, 4, 3, 2, 1, 5, 6, 5]) == w
True
"""

from collections import deque
from functools import lru_cache
from itertools import combinations, permutations

from flagpos.errors import ArgumentError

__all__ = [
    "Perm", "word_to_perm", "length", "reduced_word", "is_reduced",
    "bruhat_leq", "bruhat_leq_subword", "covers_below",
    "parabolic_factor", "in_parabolic_quotient", "in_parabolic_subgroup",
    "demazure_star", "demazure_down", "demazure_star_bruteforce", "demazure_down_bruteforce",
    "interval", "interval_mod_parabolic", "demazure_reduce",
    "all_perms", "quotient_elements", "complement",
]


class Perm:
    """An element w of S_n, stored as the tuple (w(1), ..., w(n))."""

    __slots__ = ("one_line",)

    def __init__(self, one_line):
        one_line = tuple(int(x) for x in one_line)
        if sorted(one_line) != list(range(1, len(one_line) + 1)):
            raise ArgumentError("not a permutation of 1..%d: %r" % (len(one_line), one_line))
        self.one_line = one_line

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def from_string(cls, s):
        """'4231' -> Perm((4, 2, 3, 1)); only valid for n <= 9."""
        return cls(int(c) for c in s)

    @classmethod
    def longest(cls, n):
        return cls(range(n, 0, -1))

    @property
    def n(self):
        return len(self.one_line)

    def __call__(self, j):
        return self.one_line[j - 1]

    def __mul__(self, other):
        # (vw)(j) = v(w(j))
        if self.n != other.n:
            raise ArgumentError("size mismatch")
        return Perm(self.one_line[j - 1] for j in other.one_line)

    def inverse(self):
        inv = [0] * self.n
        for j, x in enumerate(self.one_line, 1):
            inv[x - 1] = j
        return Perm(inv)

    def times_s(self, i):
        """w s_i: swap positions i and i+1."""
        w = list(self.one_line)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Perm(w)

    def image(self, k):
        """The set w([k])."""
        return frozenset(self.one_line[:k])

    def is_identity(self):
        return self.one_line == tuple(range(1, self.n + 1))

    def __eq__(self, other):
        return isinstance(other, Perm) and self.one_line == other.one_line

    def __lt__(self, other):
        return self.one_line < other.one_line

    def __hash__(self):
        return hash(self.one_line)

    def __repr__(self):
        return "Perm(%s)" % str(self)

    def __str__(self):
        if self.n <= 9:
            return "".join(map(str, self.one_line))
        return ",".join(map(str, self.one_line))


def word_to_perm(n, word):
    w = Perm.identity(n)
    for i in word:
        if not 1 <= i <= n - 1:
            raise ArgumentError("letter s_%d outside s_1..s_%d" % (i, n - 1))
        w = w.times_s(i)
    return w


def length(w):
    """Number of inversions."""
    x = w.one_line
    return sum(1 for a, b in combinations(range(w.n), 2) if x[a] > x[b])


def reduced_word(w):
    """Reduced word built by repeatedly peeling off the smallest right descent."""
    word = []
    x = list(w.one_line)
    while True:
        i = next((i for i in range(len(x) - 1) if x[i] > x[i + 1]), None)
        if i is None:
            break
        x[i], x[i + 1] = x[i + 1], x[i]
        word.append(i + 1)
    word.reverse()
    return word


def is_reduced(n, word):
    return length(word_to_perm(n, word)) == len(word)


def _check_same_n(v, w):
    if v.n != w.n:
        raise ArgumentError("permutations of different sizes: %d, %d" % (v.n, w.n))


def bruhat_leq(v, w):
    """Rank-matrix criterion: #{a <= i : v(a) >= j} <= #{a <= i : w(a) >= j}."""
    _check_same_n(v, w)
    n = v.n
    cv = [0] * (n + 2)
    cw = [0] * (n + 2)
    for i in range(n):
        # cv[j] = #{a <= i : v(a) >= j}
        for j in range(1, v.one_line[i] + 1):
            cv[j] += 1
        for j in range(1, w.one_line[i] + 1):
            cw[j] += 1
        if any(cv[j] > cw[j] for j in range(1, n + 1)):
            return False
    return True


def bruhat_leq_subword(v, w):
    """v <= w iff some subword of a reduced word of w is a reduced word for v."""
    _check_same_n(v, w)
    n = w.n
    word = reduced_word(w)
    target = length(v)
    for sub in combinations(range(len(word)), target):
        letters = [word[i] for i in sub]
        if word_to_perm(n, letters) == v:
            return True
    return False


def covers_below(w):
    """Elements covered by w in Bruhat order: w t with l(w t) = l(w) - 1."""
    x = w.one_line
    out = []
    for a, b in combinations(range(w.n), 2):
        if x[a] > x[b] and all(not x[b] < x[c] < x[a] for c in range(a + 1, b)):
            y = list(x)
            y[a], y[b] = y[b], y[a]
            out.append(Perm(y))
    return out


# -- parabolic subgroups --------------------------------------------------------

def complement(n, J):
    return tuple(i for i in range(1, n) if i not in set(J))


def _blocks(n, J):
    """Position blocks [1, k1], [k1+1, k2], ..., cut at [n-1] minus J."""
    cuts = complement(n, J)
    bounds = [0] + list(cuts) + [n]
    return [range(a, b) for a, b in zip(bounds, bounds[1:])]


def in_parabolic_quotient(w, J):
    return all(w(j) < w(j + 1) for j in J)


def in_parabolic_subgroup(w, J):
    return all(set(w.one_line[i] for i in blk) == set(x + 1 for x in blk)
               for blk in _blocks(w.n, J))


def parabolic_factor(w, J):
    """The factorization w = w^J w_J with w^J in W^J and w_J in W_J."""
    J = tuple(sorted(set(J)))
    if any(not 1 <= j <= w.n - 1 for j in J):
        raise ArgumentError("J must lie in [1, %d]" % (w.n - 1))
    x = list(w.one_line)
    for blk in _blocks(w.n, J):
        vals = sorted(x[i] for i in blk)
        for i, val in zip(blk, vals):
            x[i] = val
    wJ_up = Perm(x)
    return wJ_up, wJ_up.inverse() * w


# -- Demazure products ------------------------------------------------------------

def demazure_star(v, w):
    _check_same_n(v, w)
    x = v
    for i in reduced_word(w):
        if x(i) < x(i + 1):
            x = x.times_s(i)
    return x


def demazure_down(v, w):
    _check_same_n(v, w)
    x = v
    for i in reduced_word(w):
        if x(i) > x(i + 1):
            x = x.times_s(i)
    return x


def all_perms(n):
    return [Perm(p) for p in permutations(range(1, n + 1))]


def _lower_ideal(w):
    return [x for x in all_perms(w.n) if bruhat_leq(x, w)]


def _bruhat_extreme(elems, pick_max):
    for a in elems:
        if all((bruhat_leq(b, a) if pick_max else bruhat_leq(a, b)) for b in elems):
            return a
    raise ArgumentError("no Bruhat extremum")


def demazure_star_bruteforce(v, w):
    """max{vx : x <= w}, by enumeration."""
    return _bruhat_extreme({v * x for x in _lower_ideal(w)}, True)


def demazure_down_bruteforce(v, w):
    """min{vx : x <= w}, by enumeration."""
    return _bruhat_extreme({v * x for x in _lower_ideal(w)}, False)


# -- intervals --------------------------------------------------------------------

@lru_cache(maxsize=None)
def interval(v, w):
    """The Bruhat interval [v, w], by descent from w filtered by v <= x."""
    if not bruhat_leq(v, w):
        raise ArgumentError("%s is not below %s in Bruhat order" % (v, w))
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for y in covers_below(x):
            if y not in seen and bruhat_leq(v, y):
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def interval_mod_parabolic(v, w, J):
    """{x^J : x in [v, w]}."""
    return frozenset(parabolic_factor(x, J)[0] for x in interval(v, w))


def demazure_reduce(v, w, J):
    """(v <| w_J^{-1}, w^J); the interval modulo W_J is unchanged."""
    if not bruhat_leq(v, w):
        raise ArgumentError("%s is not below %s in Bruhat order" % (v, w))
    w_up, w_low = parabolic_factor(w, J)
    return demazure_down(v, w_low.inverse()), w_up


def quotient_elements(n, J):
    """W^J in lexicographic order of one-line notation."""
    return [w for w in all_perms(n) if in_parabolic_quotient(w, J)]
