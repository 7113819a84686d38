"""Coded reals: fast-converging Cauchy sequences of rationals.

A FastReal x is an approximation oracle n -> x_n with |x_m - x_n| <= 2^-m for
m <= n.  Comparisons are budgeted and three-valued.
"""
import enum
import threading
from fractions import Fraction
from math import isqrt


def pow2(k):
    """2^k as an exact rational, k may be negative."""
    return Fraction(1 << k) if k >= 0 else Fraction(1, 1 << -k)


class Ordering(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    UNKNOWN = "UnknownAtBudget"


class Equality(enum.Enum):
    EQUAL_SO_FAR = "EqualSoFar"
    APART = "Apart"


class FastReal:
    """Immutable coded real.  approx(n) is memoized under a lock."""

    def __init__(self, fn, provenance=("composite", "opaque")):
        self._fn = fn
        self._memo = {}
        self._lock = threading.Lock()
        self.provenance = provenance

    def approx(self, n):
        if n < 0:
            raise ValueError("negative index")
        with self._lock:
            v = self._memo.get(n)
        if v is None:
            v = Fraction(self._fn(n))
            with self._lock:
                v = self._memo.setdefault(n, v)
        return v

    @property
    def exact(self):
        """The rational value if this real was built from a rational, else None."""
        if self.provenance[0] == "rational":
            return self.provenance[1]
        return None

    @property
    def is_certified_irrational(self):
        return self.provenance[0] == "irrational"

    def __add__(self, other):
        return arith("+", self, as_real(other))

    def __radd__(self, other):
        return arith("+", as_real(other), self)

    def __sub__(self, other):
        return arith("-", self, as_real(other))

    def __rsub__(self, other):
        return arith("-", as_real(other), self)

    def __mul__(self, other):
        return arith("*", self, as_real(other))

    def __rmul__(self, other):
        return arith("*", as_real(other), self)

    def __neg__(self):
        return abs_neg("neg", self)

    def __abs__(self):
        return abs_neg("abs", self)

    def __repr__(self):
        kind, what = self.provenance
        if kind == "rational":
            return "FastReal(%s)" % what
        return "FastReal<%s %s>" % (kind, what)


def from_rational(q):
    q = Fraction(q)
    return FastReal(lambda n: q, ("rational", q))


def as_real(x):
    if isinstance(x, FastReal):
        return x
    return from_rational(x)


def arith(op, x, y):
    if x.exact is not None and y.exact is not None:
        a, b = x.exact, y.exact
        return from_rational(a + b if op == "+" else a - b if op == "-" else a * b)
    if op == "+":
        return FastReal(lambda n: x.approx(n + 1) + y.approx(n + 1), ("composite", "+"))
    if op == "-":
        return FastReal(lambda n: x.approx(n + 1) - y.approx(n + 1), ("composite", "-"))
    if op == "*":
        # |x| <= |x_0| + 1, so 2^k >= ceil|x_0| + ceil|y_0| + 2 bounds the error growth
        bound = _ceil_abs(x.approx(0)) + _ceil_abs(y.approx(0)) + 2
        k = (bound - 1).bit_length()
        return FastReal(lambda n: x.approx(n + k) * y.approx(n + k), ("composite", "*"))
    raise ValueError("unknown operation %r" % (op,))


def _ceil_abs(q):
    q = abs(q)
    return -((-q.numerator) // q.denominator)


def abs_neg(which, x):
    if which == "abs":
        if x.exact is not None:
            return from_rational(abs(x.exact))
        return FastReal(lambda n: abs(x.approx(n)), ("composite", "abs"))
    if which == "neg":
        if x.exact is not None:
            return from_rational(-x.exact)
        return FastReal(lambda n: -x.approx(n), ("composite", "neg"))
    raise ValueError(which)


def compare_budgeted(x, y, budget):
    """Less if some k <= budget has x_k + 2^(-k+1) < y_k, Greater symmetrically."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    for k in range(budget + 1):
        xk, yk = x.approx(k), y.approx(k)
        slack = pow2(-k + 1)
        if xk + slack < yk:
            return Ordering.LESS
        if yk + slack < xk:
            return Ordering.GREATER
    return Ordering.UNKNOWN


def eq_budgeted(x, y, budget):
    if budget < 1:
        raise ValueError("budget must be at least 1")
    for k in range(budget + 1):
        if abs(x.approx(k) - y.approx(k)) > pow2(-k + 1):
            return Equality.APART
    return Equality.EQUAL_SO_FAR


def compare_exact_or_budgeted(x, y, budget):
    """Like compare_budgeted, but decides exactly when both sides are rational."""
    if x.exact is not None and y.exact is not None:
        if x.exact < y.exact:
            return Ordering.LESS
        if x.exact > y.exact:
            return Ordering.GREATER
        return Ordering.UNKNOWN
    return compare_budgeted(x, y, budget)


def from_function(fn, name="opaque"):
    return FastReal(fn, ("composite", name))


def floor_truncations(value_at_scale, name):
    """Real from a map k -> floor(r * 2^k); approximant n is taken at scale n+1."""
    return FastReal(lambda n: Fraction(value_at_scale(n + 1), 1 << (n + 1)), name)


def sqrt_rational(q, name=None):
    """sqrt(q) for rational q >= 0.  Certified irrational when q is not a square."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    a, b = q.numerator, q.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return from_rational(Fraction(ra, rb))

    def scaled(k):
        # floor(sqrt(a/b) * 2^k) = floor(sqrt(a * 4^k / b))
        return isqrt((a << (2 * k)) // b)

    return floor_truncations(scaled, ("irrational", name or "sqrt(%s)" % q))


def sqrt2_over_2():
    return sqrt_rational(Fraction(1, 2), "sqrt2/2")


def dyadic_truncation(x, n):
    """floor(x_n+2 * 2^n) / 2^n: a dyadic within 2^-n + 2^-(n+2) of x."""
    v = x.approx(n + 2)
    return Fraction((v.numerator << n) // v.denominator, 1 << n)
