"""Baire-class function codes: pointwise Cauchy sequences of lower-rank codes."""
import enum
from fractions import Fraction

from .contfun import ContCode, Exhausted, interpolate, value_real, ceil_log2
from .exactreal import (FastReal, Ordering, as_real, compare_budgeted, pow2,
                        sqrt2_over_2)


class NoModulus(Exception):
    pass


class BaireCmp(enum.Enum):
    GEQ_SO_FAR = "GeqSoFar"
    REFUTED_BELOW = "RefutedBelow"
    LEQ_SO_FAR = "LeqSoFar"
    REFUTED_ABOVE = "RefutedAbove"


class BaireCode:
    """rank 0: a ContCode.  rank r >= 1: a sequence i -> code of rank r-1.

    modulus(x, eps) -> index M with |f_m(x) - f_n(x)| <= eps for m, n >= M,
    or None when no bound can be produced for that x."""

    def __init__(self, rank, base=None, seq=None, modulus=None, exact_limit=None,
                 description="baire code"):
        if rank == 0 and not isinstance(base, ContCode):
            raise TypeError("a rank-0 code wraps a ContCode")
        if rank > 0 and seq is None:
            raise TypeError("a positive-rank code needs a sequence")
        self.rank = rank
        self.base = base
        self._seq = seq
        self.modulus = modulus
        self.exact_limit = exact_limit
        self.description = description
        self.lifted_from = None

    def term(self, i):
        t = self._seq(i)
        if isinstance(t, ContCode):
            t = of_cont(t)
        if t.rank != self.rank - 1:
            raise ValueError("term %d has rank %d, expected %d" % (i, t.rank, self.rank - 1))
        return t

    def __repr__(self):
        return "<%s rank %d>" % (self.description, self.rank)


def of_cont(f):
    return BaireCode(0, base=f, exact_limit=f.exact_at, description=f.description)


def lift(f):
    if isinstance(f, ContCode):
        f = of_cont(f)
    g = BaireCode(f.rank + 1, seq=lambda i: f, modulus=lambda x, eps: 0,
                  exact_limit=f.exact_limit, description="lift(%s)" % f.description)
    g.lifted_from = f
    return g


def limit_real(f, x):
    """The value f(x) as a coded real, read off through the Cauchy moduli."""
    x = as_real(x)
    if f.rank == 0:
        return value_real(f.base, x)
    if f.lifted_from is not None:
        return limit_real(f.lifted_from, x)
    if f.modulus is None:
        raise NoModulus(repr(f))

    def approx(n):
        M = f.modulus(x, pow2(-n - 2))
        if M is None:
            raise NoModulus("no modulus for %r at this point" % (f,))
        return limit_real(f.term(M), x).approx(n + 2)

    return FastReal(approx, ("composite", "limit"))


def cmp_geq_budgeted(f, x, y, budget):
    """Decide f(x) >= y as far as the budget allows; only refutations are definitive."""
    try:
        v = compare_budgeted(limit_real(f, x), as_real(y), budget)
    except (NoModulus, Exhausted):
        return BaireCmp.GEQ_SO_FAR
    return BaireCmp.REFUTED_BELOW if v == Ordering.LESS else BaireCmp.GEQ_SO_FAR


def cmp_leq_budgeted(f, x, y, budget):
    try:
        v = compare_budgeted(limit_real(f, x), as_real(y), budget)
    except (NoModulus, Exhausted):
        return BaireCmp.LEQ_SO_FAR
    return BaireCmp.REFUTED_ABOVE if v == Ordering.GREATER else BaireCmp.LEQ_SO_FAR


def distance_lower_bound(x, c, budget=64):
    """A rational b > 0 with |x - c| >= b, or None (x may equal c)."""
    x = as_real(x)
    c = Fraction(c)
    if x.exact is not None:
        d = abs(x.exact - c)
        return d if d > 0 else None
    for k in range(budget + 1):
        d = abs(x.approx(k) - c) - pow2(-k)
        if d > 0:
            return d
    return None


def _ceil(q):
    return -((-q.numerator) // q.denominator)


# -- Heaviside step ---------------------------------------------------------

def heaviside_term(n):
    """f_n restricted to [0,1]: n x below 1/n, then 1."""
    if n < 1:
        raise ValueError("n starts at 1")
    if n == 1:
        return interpolate([(0, 0), (1, 1)], description="step_1")
    return interpolate([(0, 0), (Fraction(1, n), 1), (1, 1)], description="step_%d" % n)


def heaviside():
    def modulus(x, eps):
        x = as_real(x)
        if x.exact == 0:
            return 0
        b = distance_lower_bound(x, 0)
        if b is None:
            return None
        # f_n(x) = 1 once n >= 1/x; index i holds f_(i+1)
        return max(0, _ceil(1 / b) - 1)

    def exact(q):
        return Fraction(0) if Fraction(q) == 0 else Fraction(1)

    return BaireCode(1, seq=lambda i: heaviside_term(i + 1), modulus=modulus,
                     exact_limit=exact, description="heaviside")


# -- gauge with no Riemann-style partition for limit point z ------------------

def half_distance(z):
    z = Fraction(z)
    pts = [(Fraction(0), abs(z) / 2)]
    if 0 < z < 1:
        pts.append((z, Fraction(0)))
    pts.append((Fraction(1), abs(1 - z) / 2))
    f = interpolate(pts, description="half-distance %s" % z)
    f.lipschitz = Fraction(1, 2)
    return f


def clb1_gauge(z, cauchy_rate, description="clb1 gauge"):
    """delta_n(x) = |x - z_n| / 2 for rational z_n converging at the given rate.

    cauchy_rate(eps) = N with |z_m - z_n| <= eps for m, n >= N."""
    return BaireCode(1, seq=lambda i: half_distance(z(i)),
                     modulus=lambda x, eps: cauchy_rate(2 * eps),
                     description=description)


def sqrt2_truncations():
    r = sqrt2_over_2()

    def z(n):
        # floor(2^n * sqrt2/2) / 2^n, within 2^-n of the limit
        v = r.approx(n + 1)
        return Fraction((v.numerator << n) // v.denominator, 1 << n)

    return z


def truncation_rate(eps):
    return max(0, ceil_log2(1 / Fraction(eps)))


def clb1_sqrt2_over_2():
    return clb1_gauge(sqrt2_truncations(), truncation_rate, "clb1-gauge sqrt2-over-2")


# -- no dyadic partition is fine for this gauge ------------------------------

THIRD = Fraction(1, 3)


def dyadic_cex_term(n):
    """delta_n: |x-1/3|/2 away from 1/3, rising to 1 at 1/3 inside radius 1/n."""
    if n < 3:
        raise ValueError("n starts at 3")
    r = Fraction(1, n)
    pts = []
    for x in (Fraction(0), THIRD - r, THIRD, THIRD + r, Fraction(1)):
        if 0 <= x <= 1 and (not pts or x > pts[-1][0]):
            pts.append((x, dyadic_cex_value(n, x)))
    return interpolate(pts, description="cex_%d" % n)


def dyadic_cex_value(n, x):
    d = abs(Fraction(x) - THIRD)
    if d >= Fraction(1, n):
        return d / 2
    return 1 - (n - Fraction(1, 2)) * d


def dyadic_cex():
    def modulus(x, eps):
        x = as_real(x)
        if x.exact == THIRD:
            return 0
        b = distance_lower_bound(x, THIRD)
        if b is None:
            return None
        # delta_n(x) is already |x-1/3|/2 once 1/n <= b; index i holds delta_(i+3)
        return max(0, _ceil(1 / b) - 3)

    def exact(q):
        q = Fraction(q)
        return Fraction(1) if q == THIRD else abs(q - THIRD) / 2

    return BaireCode(1, seq=lambda i: dyadic_cex_term(i + 3), modulus=modulus,
                     exact_limit=exact, description="dyadic-cex")


def dyadic_cex_envelope():
    """|x - 1/3| / 2, the continuous part of the dyadic counterexample."""
    return half_distance(THIRD)


# -- explicit sequences ------------------------------------------------------

GENERATORS = {
    "heaviside": (lambda i: heaviside_term(i + 1), "heaviside"),
    "dyadic-cex": (lambda i: dyadic_cex_term(i + 3), "dyadic-cex"),
}


def baire_seq(items, generator=None):
    """Sequence e_0, ..., e_(k-1) followed by a named generator, or by e_(k-1) forever."""
    items = [of_cont(t) if isinstance(t, ContCode) else t for t in items]
    if not items:
        raise ValueError("empty sequence")
    k = len(items)
    rank = items[0].rank + 1
    if generator is None:
        return BaireCode(rank, seq=lambda i: items[min(i, k - 1)],
                         modulus=lambda x, eps: k - 1, description="baire-seq")
    gen, name = GENERATORS[generator]
    reference = {"heaviside": heaviside, "dyadic-cex": dyadic_cex}[name]()

    def modulus(x, eps):
        m = reference.modulus(x, eps)
        return None if m is None else max(m, k)

    return BaireCode(rank, seq=lambda i: items[i] if i < k else gen(i),
                     modulus=modulus, description="baire-seq %s" % name)
