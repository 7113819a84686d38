"""Rational interval bases on R and on [0,1], and coded open sets."""
import enum
from dataclasses import dataclass
from fractions import Fraction

from .exactreal import Ordering, as_real, compare_exact_or_budgeted


class DegenerateInterval(ValueError):
    pass


@dataclass(frozen=True)
class IntervalR:
    """V_{p,q}: the open interval (p, q) of the real line."""
    p: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if not self.p < self.q:
            raise DegenerateInterval("V_{%s,%s} is empty" % (self.p, self.q))

    @property
    def length(self):
        return self.q - self.p

    @property
    def midpoint(self):
        return (self.p + self.q) / 2

    def __str__(self):
        return "V(%s,%s)" % (self.p, self.q)


@dataclass(frozen=True)
class IntervalUI:
    """U_{p,q} = (p, q) n [0,1]."""
    p: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if not self.pbar < self.qbar:
            raise DegenerateInterval("U_{%s,%s} is empty" % (self.p, self.q))

    @property
    def pbar(self):
        return max(self.p, Fraction(0))

    @property
    def qbar(self):
        return min(self.q, Fraction(1))

    @property
    def length(self):
        return length_ui(self)

    def __str__(self):
        return "U(%s,%s)" % (self.p, self.q)


def make_ui(p, q):
    """IntervalUI or None when the clamped interval is empty."""
    try:
        return IntervalUI(p, q)
    except DegenerateInterval:
        return None


def length_ui(U):
    if isinstance(U, IntervalR):
        return U.length
    return max(U.qbar - U.pbar, Fraction(0))


def intersects(A, B):
    if isinstance(A, IntervalR) and isinstance(B, IntervalR):
        return A.p < B.q and B.p < A.q
    if isinstance(A, IntervalUI) and isinstance(B, IntervalUI):
        return A.pbar < B.qbar and B.pbar < A.qbar
    raise TypeError("mixed interval kinds")


def contains_interval(inner, outer):
    """inner <= outer, by the exact rational tests."""
    if isinstance(inner, IntervalR) and isinstance(outer, IntervalR):
        return inner.p >= outer.p and inner.q <= outer.q
    if isinstance(inner, IntervalUI) and isinstance(outer, IntervalUI):
        return ((outer.p < 0 or outer.p <= inner.p)
                and (outer.q > 1 or outer.q >= inner.q))
    raise TypeError("mixed interval kinds")


class Membership(enum.Enum):
    IN = "In"
    OUT = "Out"
    UNKNOWN = "UnknownAtBudget"


def member_budgeted(r, U, budget):
    """r in U_{p,q} means r in [0,1] and p < r < q.  In/Out are definitive."""
    r = as_real(r)
    if r.exact is not None:
        x = r.exact
        if isinstance(U, IntervalUI):
            ok = 0 <= x <= 1 and U.p < x < U.q
        else:
            ok = U.p < x < U.q
        return Membership.IN if ok else Membership.OUT

    def cmp(a, b):
        return compare_exact_or_budgeted(as_real(a), as_real(b), budget)

    lo = cmp(U.p, r)
    hi = cmp(r, U.q)
    if lo == Ordering.GREATER or hi == Ordering.GREATER:
        return Membership.OUT
    unit = isinstance(U, IntervalUI)
    if unit:
        if cmp(r, 0) == Ordering.LESS or cmp(1, r) == Ordering.LESS:
            return Membership.OUT
    if lo == Ordering.LESS and hi == Ordering.LESS:
        if not unit:
            return Membership.IN
        # r >= 0 is implied by p < r when p >= 0, otherwise needs 0 < r
        ge0 = U.p >= 0 or cmp(0, r) == Ordering.LESS
        le1 = U.q <= 1 or cmp(r, 1) == Ordering.LESS
        if ge0 and le1:
            return Membership.IN
    return Membership.UNKNOWN


class OpenSet:
    """A coded open set: a total enumerator i -> interval."""

    def __init__(self, enumerate_fn, description="open set"):
        self._enum = enumerate_fn
        self.description = description

    @classmethod
    def from_list(cls, intervals):
        items = list(intervals)
        if not items:
            raise ValueError("an enumerator needs at least one interval")
        return cls(lambda i: items[min(i, len(items) - 1)], "finite union")

    def __getitem__(self, i):
        return self._enum(i)

    def search_member(self, r, budget):
        """Least i < budget with r certified in the i-th interval, else None."""
        for i in range(budget):
            if member_budgeted(r, self._enum(i), budget) == Membership.IN:
                return i
        return None
