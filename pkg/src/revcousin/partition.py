"""Tagged partitions of [0,1], Riemann sums, fineness checks and integration drivers."""
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .codings import format_rat, parse_rat, stern_brocot_index
from .contfun import ContCode, Exhausted, NotAvailable, eval_at, value_real
from .bairefun import BaireCode, NoModulus, limit_real
from .exactreal import (Ordering, as_real, compare_budgeted, from_rational, pow2,
                        sqrt_rational)


# -- tags -------------------------------------------------------------------

@dataclass(frozen=True)
class RatTag:
    value: Fraction

    kind = "rat"

    @property
    def real(self):
        return from_rational(self.value)

    def __str__(self):
        return format_rat(self.value)


def _is_square(q):
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


@dataclass(frozen=True)
class IrrTag:
    """a + c * sqrt(d), certified irrational: c != 0 and d > 0 not a rational square."""
    a: Fraction
    c: Fraction
    d: Fraction

    kind = "irr"

    def __post_init__(self):
        for k in ("a", "c", "d"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.c == 0 or self.d <= 0 or _is_square(self.d):
            raise ValueError("not a certified irrational: %s" % self.name)

    @property
    def name(self):
        if self.a == 0 and self.c == Fraction(1, 2) and self.d == 2:
            return "sqrt2/2"
        return "%s+%s*sqrt(%s)" % (format_rat(self.a), format_rat(self.c), format_rat(self.d))

    @property
    def real(self):
        r = sqrt_rational(self.d)
        if self.c == 1 and self.a == 0:
            return r
        out = r * self.c + self.a
        out.provenance = ("irrational", self.name)
        return out

    def sign_minus(self, r):
        """Sign of (self - r) for rational r; never zero."""
        # c*sqrt(d) vs r - a
        t = Fraction(r) - self.a
        lhs_pos = self.c > 0
        if lhs_pos and t <= 0:
            return 1
        if not lhs_pos and t >= 0:
            return -1
        bigger = self.c * self.c * self.d > t * t
        if lhs_pos:
            return 1 if bigger else -1
        return -1 if bigger else 1

    def shift(self, r):
        """self - r, as a surd."""
        return IrrTag(self.a - Fraction(r), self.c, self.d)

    def scaled_into(self, lo, hi):
        """The point lo + (hi - lo) * self, for self in (0, 1)."""
        w = Fraction(hi) - Fraction(lo)
        return IrrTag(Fraction(lo) + w * self.a, w * self.c, self.d)

    def __str__(self):
        return self.name


SQRT2_OVER_2 = IrrTag(0, Fraction(1, 2), 2)

_SURD = re.compile(r"^\s*([-0-9/]+)\s*\+\s*([-0-9/]+)\s*\*\s*sqrt\(\s*([0-9/]+)\s*\)\s*$")


def irr_tag_from_name(name):
    if name.strip() == "sqrt2/2":
        return SQRT2_OVER_2
    m = _SURD.match(name)
    if not m:
        raise ValueError("unknown irrational tag %r" % name)
    return IrrTag(*(parse_rat(g) for g in m.groups()))


def as_tag(t):
    if isinstance(t, (RatTag, IrrTag)):
        return t
    return RatTag(Fraction(t))


def tag_minus(t, r):
    """t - r as ('exact', q) or ('surd', IrrTag)."""
    if isinstance(t, RatTag):
        return ("exact", t.value - Fraction(r))
    return ("surd", t.shift(r))


# -- partitions ---------------------------------------------------------------

class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class TaggedPartition:
    points: tuple
    tags: tuple

    @property
    def size(self):
        return len(self.tags)

    def blocks(self):
        return [(self.points[j], self.tags[j], self.points[j + 1]) for j in range(self.size)]

    def to_json_obj(self):
        tags = []
        for t in self.tags:
            if isinstance(t, RatTag):
                tags.append({"kind": "rat", "value": format_rat(t.value)})
            else:
                tags.append({"kind": "irr", "name": t.name})
        return {"points": [format_rat(x) for x in self.points], "tags": tags}

    def to_json(self):
        return json.dumps(self.to_json_obj(), indent=2) + "\n"


def _strictly_between(lo, t, hi):
    if isinstance(t, RatTag):
        return lo < t.value < hi
    return t.sign_minus(lo) > 0 and t.sign_minus(hi) < 0


def mk_partition(points, tags):
    points = tuple(Fraction(x) for x in points)
    tags = tuple(as_tag(t) for t in tags)
    if len(points) != len(tags) + 1 or not tags:
        raise PartitionError("need l+1 points for l tags, l >= 1")
    if points[0] != 0:
        raise PartitionError("x_0 must be 0, got %s" % points[0])
    if points[-1] != 1:
        raise PartitionError("x_l must be 1, got %s" % points[-1])
    for j, t in enumerate(tags):
        if not _strictly_between(points[j], t, points[j + 1]):
            raise PartitionError("block %d: need x_%d < t_%d < x_%d" % (j, j, j, j + 1))
    return TaggedPartition(points, tags)


def _tag_from_json(t):
    if isinstance(t, str):
        t = t.strip()
        if "sqrt" in t:
            return irr_tag_from_name(t)
        return RatTag(parse_rat(t))
    if not isinstance(t, dict):
        raise PartitionError("tag must be a string or an object, got %r" % (t,))
    if t.get("kind") == "rat":
        return RatTag(parse_rat(t["value"]))
    if t.get("kind") == "irr":
        return irr_tag_from_name(t["name"])
    raise PartitionError("unknown tag kind %r" % t.get("kind"))


def partition_from_json(text):
    """Read {"points": [...], "tags": [...]}; a tag is {"kind": ...} or a bare "1/3" / "sqrt2/2"."""
    obj = json.loads(text) if isinstance(text, str) else text
    try:
        tags = [_tag_from_json(t) for t in obj["tags"]]
        points = [parse_rat(x) for x in obj["points"]]
    except (KeyError, TypeError) as e:
        raise PartitionError("malformed partition: %s" % e) from e
    return mk_partition(points, tags)


def uniform_partition(n, tag="mid"):
    pts = [Fraction(i, n) for i in range(n + 1)]
    tags = []
    for a, b in zip(pts, pts[1:]):
        if tag == "mid":
            tags.append(RatTag((a + b) / 2))
        elif tag == "irr":
            tags.append(SQRT2_OVER_2.scaled_into(a, b))
        else:
            raise ValueError(tag)
    return mk_partition(pts, tags)


# -- integrands ---------------------------------------------------------------

class CharQ:
    """The characteristic function of the rationals, read off the tag's kind."""
    description = "chi_Q"


CHI_Q = CharQ()


class EvaluationFailed(Exception):
    def __init__(self, index, cause):
        super().__init__("evaluation failed at tag %d: %s" % (index, cause))
        self.index = index


def tag_value(f, t, precision):
    """(value, exact?) of f at tag t."""
    if isinstance(f, CharQ):
        return (Fraction(1) if isinstance(t, RatTag) else Fraction(0)), True
    if isinstance(f, ContCode):
        if isinstance(t, RatTag):
            v = f.exact_at(t.value)
            if v is not None:
                return v, True
        return eval_at(f, t.real, precision), False
    if callable(f):
        if isinstance(t, RatTag):
            return Fraction(f(t.value)), True
        raise TypeError("closed-form integrand evaluated at an irrational tag")
    raise TypeError("cannot evaluate %r at tags" % (f,))


def riemann_sum(f, P, precision=32):
    total = Fraction(0)
    for j, (a, t, b) in enumerate(P.blocks()):
        try:
            v, _ = tag_value(f, t, precision)
        except Exhausted as e:
            raise EvaluationFailed(j, e) from e
        total += v * (b - a)
    return total


# -- gauges -------------------------------------------------------------------

class SymbolicGauge:
    """A gauge given by an exact rule on tags."""

    def __init__(self, at_tag, description):
        self._at = at_tag
        self.description = description

    def at_tag(self, t):
        return Fraction(self._at(t))

    def __repr__(self):
        return "<%s>" % self.description


def dirichlet_gauge(eps, enum_index=None, max_depth=16):
    """delta(q_m) = 2^(-m-2) eps on the m-th rational of [0,1], delta = 1 off Q."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if enum_index is None:
        def enum_index(q):
            return stern_brocot_index(q, max_depth)

    def at(t):
        if isinstance(t, IrrTag):
            return Fraction(1)
        try:
            m = enum_index(t.value)
        except LookupError as e:
            raise GaugeDomainError(str(e)) from e
        return pow2(-m - 2) * eps

    g = SymbolicGauge(at, "dirichlet gauge eps=%s" % eps)
    g.eps = eps
    g.index = enum_index
    return g


def constant_gauge(k):
    k = Fraction(k)
    return SymbolicGauge(lambda t: k, "constant gauge %s" % k)


class GaugeDomainError(ValueError):
    pass


class Fine:
    def __init__(self, kind, index=None):
        self.kind = kind
        self.index = index

    def __eq__(self, other):
        return isinstance(other, Fine) and (self.kind, self.index) == (other.kind, other.index)

    def __repr__(self):
        return self.kind if self.index is None else "%s(%d)" % (self.kind, self.index)

    __str__ = __repr__


VERIFIED = Fine("Verified")
UNKNOWN = Fine("UnknownAtBudget")


def Refuted(j):
    return Fine("Refuted", j)


def _gauge_value(delta, t, budget):
    """('exact', q) when the gauge value at t is known exactly, else ('real', FastReal)."""
    if isinstance(delta, SymbolicGauge):
        return ("exact", delta.at_tag(t))
    if isinstance(delta, ContCode):
        if isinstance(t, RatTag):
            v = delta.exact_at(t.value)
            if v is not None:
                return ("exact", v)
        return ("real", value_real(delta, t.real))
    if isinstance(delta, BaireCode):
        if isinstance(t, RatTag) and delta.exact_limit is not None:
            return ("exact", Fraction(delta.exact_limit(t.value)))
        return ("real", limit_real(delta, t.real))
    if callable(delta):
        if isinstance(t, RatTag):
            return ("exact", Fraction(delta(t.value)))
        raise TypeError("closed-form gauge evaluated at an irrational tag")
    raise TypeError("not a gauge: %r" % (delta,))


def _geq(value, dist, budget):
    """Is value >= dist?  True / False definitively, None when undecided."""
    vk, v = value
    dk, d = dist
    if vk == "exact" and dk == "exact":
        return v >= d
    if vk == "exact" and dk == "surd":
        return d.sign_minus(v) < 0
    lhs = v if vk == "real" else from_rational(v)
    rhs = from_rational(d) if dk == "exact" else d.real
    try:
        c = compare_budgeted(lhs, rhs, budget)
    except (Exhausted, NoModulus):
        return None
    if c == Ordering.GREATER:
        return True
    if c == Ordering.LESS:
        return False
    return None


def block_status(delta, a, t, b, budget=64):
    """True (fine), False (refuted) or None for the block [a, b] tagged t."""
    try:
        val = _gauge_value(delta, t, budget)
    except (Exhausted, NoModulus):
        return None
    left = _geq(val, tag_minus(t, a), budget)
    right = _geq(val, _neg(tag_minus(t, b)), budget)
    if left is False or right is False:
        return False
    if left and right:
        return True
    return None


def _neg(d):
    kind, v = d
    if kind == "exact":
        return ("exact", -v)
    return ("surd", IrrTag(-v.a, -v.c, v.d))


def is_delta_fine(delta, P, budget=64):
    """t_j - delta(t_j) <= x_j and t_j + delta(t_j) >= x_(j+1) for every block."""
    statuses = [block_status(delta, a, t, b, budget) for a, t, b in P.blocks()]
    for j, s in enumerate(statuses):
        if s is False:
            return Refuted(j)
    if all(statuses):
        return VERIFIED
    return UNKNOWN


# -- integration drivers ------------------------------------------------------

def riemann_integrate(f, mesh_exp, precision=None):
    """Midpoint sum over the uniform 2^mesh_exp partition, with a certified error bound."""
    if f.lipschitz is None:
        raise NotAvailable("%r carries no Lipschitz bound" % (f,))
    n = 1 << mesh_exp
    P = uniform_partition(n)
    if precision is None:
        precision = mesh_exp + 8
    total = Fraction(0)
    slack = Fraction(0)
    for a, t, b in P.blocks():
        v, exact = tag_value(f, t, precision)
        total += v * (b - a)
        if not exact:
            slack += pow2(-precision) * (b - a)
    return total, f.lipschitz * pow2(-mesh_exp) + slack


@dataclass
class FinenessCertificate:
    gauge: object
    partition: TaggedPartition
    verdict: Fine
    budget: int = 64
    notes: list = field(default_factory=list)


class FinderFailed(Exception):
    pass


def gauge_integrate(f, gauge_family, finder, eps, budget=64):
    delta = gauge_family(Fraction(eps))
    P = finder(delta)
    if P is None:
        raise FinderFailed("no partition found for %r" % (delta,))
    verdict = is_delta_fine(delta, P, budget)
    if verdict != VERIFIED:
        raise FinderFailed("partition is not certified fine: %s" % verdict)
    return riemann_sum(f, P), FinenessCertificate(delta, P, verdict, budget)
