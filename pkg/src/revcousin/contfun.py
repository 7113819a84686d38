"""Coded continuous functions on [0,1].

A code is a set of pairs (U, V) with U a basis interval of [0,1] and V a
rational interval of R, read as "f maps U into V".  Here a code is an
enumerator i -> (U, V) over a decidable membership rule, plus a constructive
witness that finds a pair localising f(x) to any precision.

Every built-in rule has the shape "V strictly contains the closed hull H(U)",
where H(U) is an exact rational interval computed from the clamped ends of U.
"""
from fractions import Fraction

from .codings import rat_code, rat_decode, pair_tuple, unpair_tuple
from .exactreal import FastReal, as_real, eq_budgeted, Equality, pow2
from .intervals import IntervalR, IntervalUI, make_ui, member_budgeted, Membership

WHOLE = IntervalUI(-1, 2)


class Exhausted(Exception):
    """Budget ran out before a localising pair was found."""


class NotAvailable(Exception):
    pass


class BreakpointMismatch(ValueError):
    pass


def ceil_log2(q):
    """Least integer j with 2^j >= q, for rational q > 0."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("need q > 0")
    j = q.numerator.bit_length() - q.denominator.bit_length()
    while pow2(j) < q:
        j += 1
    while pow2(j - 1) >= q:
        j -= 1
    return j


class ContCode:
    lipschitz = None
    has_witness = True
    description = "code"

    # -- the rule ---------------------------------------------------------
    def rule_hull(self, U):
        raise NotImplementedError

    def member(self, U, V):
        lo, hi = self.rule_hull(U)
        return V.p < lo and hi < V.q

    def exact_at(self, q):
        """Exact value at a rational point, when the closed form is known."""
        return None

    # -- enumeration ------------------------------------------------------
    def padding(self):
        lo, hi = self.rule_hull(WHOLE)
        return WHOLE, IntervalR(lo - 1, hi + 1)

    def pairs(self, i):
        """The i-th pair: candidate i if it satisfies the rule, else a padding pair.

        Candidates run over all 4-tuples of rationals, so the range is exactly
        the rule's set of pairs."""
        cand = candidate(i)
        if cand is not None and self.member(*cand):
            return cand
        return self.padding()

    def index_of(self, U, V):
        return pair_tuple(rat_code(U.p), rat_code(U.q), rat_code(V.p), rat_code(V.q))

    # -- witness ----------------------------------------------------------
    def witness(self, x, n):
        """An explicit pair (U, V) with x in U, f(U) in V and l(V) <= 2^-n."""
        eps = pow2(-n)
        for k in range(n + 2, n + 200):
            xk = x.approx(k)
            rad = pow2(-k + 1)
            U = make_ui(xk - rad, xk + rad)
            if U is None:
                continue
            lo, hi = self.rule_hull(U)
            if hi - lo <= eps / 2:
                return U, IntervalR(lo - eps / 4, hi + eps / 4)
        return None

    def witness_index(self, x, n):
        w = self.witness(as_real(x), n)
        return None if w is None else self.index_of(*w)

    def __repr__(self):
        return "<%s>" % self.description


def candidate(i):
    p, q, r, s = (rat_decode(c) for c in unpair_tuple(i, 4))
    U = make_ui(p, q)
    if U is None or not r < s:
        return None
    return U, IntervalR(r, s)


class Linear(ContCode):
    """x -> m x + c."""

    def __init__(self, m, c):
        self.m = Fraction(m)
        self.c = Fraction(c)
        self.lipschitz = abs(self.m)
        self.description = "linear %s %s" % (self.m, self.c)

    def rule_hull(self, U):
        a = self.m * U.pbar + self.c
        b = self.m * U.qbar + self.c
        return (a, b) if a <= b else (b, a)

    def member(self, U, V):
        # the three cases of the linear rule, spelled out
        m, c = self.m, self.c
        if m > 0:
            return m * U.pbar + c > V.p and m * U.qbar + c < V.q
        if m < 0:
            return m * U.qbar + c > V.p and m * U.pbar + c < V.q
        return V.p < c < V.q

    def exact_at(self, q):
        return self.m * Fraction(q) + self.c

    def witness(self, x, n):
        # totality argument for affine maps, with radius 2^(-k+1) so x is interior
        eps = pow2(-n)
        m = abs(self.m)
        k = n + 2
        while m * pow2(-k + 1) >= eps / 2:
            k += 1
        xk = x.approx(k)
        rad = pow2(-k + 1)
        U = make_ui(xk - rad, xk + rad)
        if U is None:
            return None
        mid = self.m * xk + self.c
        return U, IntervalR(mid - eps / 2, mid + eps / 2)


def const(c):
    f = Linear(0, c)
    f.description = "const %s" % Fraction(c)
    return f


class Piecewise(ContCode):
    """Parts f_1..f_k glued on [d_0,d_1], ..., [d_(k-1),d_k]."""

    def __init__(self, breaks, parts, budget=64, description=None):
        breaks = [Fraction(d) for d in breaks]
        parts = list(parts)
        if len(breaks) != len(parts) + 1 or not parts:
            raise ValueError("need k+1 breakpoints for k parts")
        if breaks[0] != 0 or breaks[-1] != 1:
            raise ValueError("breakpoints must run from 0 to 1")
        if any(a >= b for a, b in zip(breaks, breaks[1:])):
            raise ValueError("breakpoints must increase strictly")
        for i in range(1, len(parts)):
            d = breaks[i]
            a, b = parts[i - 1].exact_at(d), parts[i].exact_at(d)
            if a is not None and b is not None:
                apart = a != b
            else:
                left, right = value_real(parts[i - 1], d), value_real(parts[i], d)
                apart = eq_budgeted(left, right, budget) == Equality.APART
            if apart:
                raise BreakpointMismatch("parts %d and %d disagree at %s" % (i - 1, i, d))
        self.breaks = breaks
        self.parts = parts
        ls = [f.lipschitz for f in parts]
        self.lipschitz = None if any(l is None for l in ls) else max(ls)
        self.description = description or "piecewise(%d parts)" % len(parts)

    def meeting(self, U):
        b = self.breaks
        return [i for i in range(len(self.parts)) if b[i] < U.q and U.p < b[i + 1]]

    def rule_hull(self, U):
        hulls = [self.parts[i].rule_hull(U) for i in self.meeting(U)]
        return min(h[0] for h in hulls), max(h[1] for h in hulls)

    def member(self, U, V):
        return all(self.parts[i].member(U, V) for i in self.meeting(U))

    def exact_at(self, q):
        q = Fraction(q)
        for i, f in enumerate(self.parts):
            if self.breaks[i] <= q <= self.breaks[i + 1]:
                return f.exact_at(q)
        return None


def interpolate(points, description=None, lipschitz=None):
    """Piecewise-linear function through (x_i, y_i), x_0 = 0 < ... < x_k = 1."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    parts = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        m = (y1 - y0) / (x1 - x0)
        parts.append(Linear(m, y0 - m * x0))
    f = Piecewise([x for x, _ in pts], parts, description=description)
    if lipschitz is not None:
        f.lipschitz = Fraction(lipschitz)
    return f


def spike_value(U, z):
    """Spike over U at z: distance from z to the outside of (p, q), capped at 1/2.

    For p >= 0 and q <= 1 this is the usual tent 0 .. |z-p| .. |z-q| .. 0 with
    peak (q-p)/2 <= 1/2.  Unclamped ends keep it positive on all of U."""
    z = Fraction(z)
    if U is None:
        return Fraction(0)
    return max(Fraction(0), min(z - U.p, U.q - z, Fraction(1, 2)))


def spike(U):
    if U is None:
        f = const(0)
        f.lipschitz = Fraction(1)
        return f
    cuts = {Fraction(0), Fraction(1), U.p, U.q, U.p + Fraction(1, 2),
            U.q - Fraction(1, 2), (U.p + U.q) / 2}
    xs = sorted(c for c in cuts if 0 <= c <= 1)
    f = interpolate([(x, spike_value(U, x)) for x in xs],
                    description="spike %s %s" % (U.p, U.q), lipschitz=1)
    f.base = U
    return f


class ScaledSum(ContCode):
    """x -> sum_n w_n f_n(x).

    terms/weights are lists (finite sum) or callables n -> value (infinite sum,
    then tail_bound(n) must bound sum_{k>=n} |w_k| * uniform_bound)."""

    member_search = 64

    def __init__(self, terms, weights, uniform_bound, tail_bound=None, lipschitz=None,
                 description="scaled sum"):
        self.finite = not callable(terms)
        if self.finite:
            self.terms = list(terms)
            self.weights = [Fraction(w) for w in (weights if not callable(weights)
                                                  else [weights(n) for n in range(len(self.terms))])]
        else:
            if tail_bound is None:
                raise ValueError("an infinite sum needs a tail bound")
            self.terms = terms
            self.weights = weights
        self.uniform_bound = Fraction(uniform_bound)
        self.tail_bound = tail_bound
        if lipschitz is None and self.finite:
            ls = [t.lipschitz for t in self.terms]
            if all(l is not None for l in ls):
                lipschitz = sum((abs(w) * l for w, l in zip(self.weights, ls)), Fraction(0))
        self.lipschitz = None if lipschitz is None else Fraction(lipschitz)
        self.description = description

    def term(self, n):
        return self.terms[n] if self.finite else self.terms(n)

    def weight(self, n):
        return self.weights[n] if self.finite else Fraction(self.weights(n))

    def tail(self, N):
        if self.finite and N >= len(self.terms):
            return Fraction(0)
        return Fraction(self.tail_bound(N))

    def hull_trunc(self, U, N):
        lo = hi = Fraction(0)
        for n in range(N):
            a, b = self.term(n).rule_hull(U)
            w = self.weight(n)
            a, b = (w * a, w * b) if w >= 0 else (w * b, w * a)
            lo, hi = lo + a, hi + b
        t = self.tail(N)
        return lo - t, hi + t

    def rule_hull(self, U):
        if self.finite:
            return self.hull_trunc(U, len(self.terms))
        raise NotAvailable("an infinite sum has no single hull")

    def member(self, U, V):
        if self.finite:
            return ContCode.member(self, U, V)
        for N in range(self.member_search):
            lo, hi = self.hull_trunc(U, N)
            if V.p < lo and hi < V.q:
                return True
        return False

    def padding(self):
        if self.finite:
            return ContCode.padding(self)
        b = self.tail(0) + 1
        return WHOLE, IntervalR(-b, b)

    def exact_at(self, q):
        if not self.finite:
            return None
        total = Fraction(0)
        for w, f in zip(self.weights, self.terms):
            v = f.exact_at(q)
            if v is None:
                return None
            total += w * v
        return total

    def witness(self, x, n):
        if self.finite:
            return ContCode.witness(self, x, n)
        eps = pow2(-n)
        N = 0
        while self.tail(N) > eps / 8:
            N += 1
        for k in range(n + 2, n + 200):
            xk = x.approx(k)
            rad = pow2(-k + 1)
            U = make_ui(xk - rad, xk + rad)
            if U is None:
                continue
            lo, hi = self.hull_trunc(U, N)
            if hi - lo <= eps / 2:
                return U, IntervalR(lo - eps / 4, hi + eps / 4)
        return None


def spike_sum(cover):
    """delta(x) = sum_n 2^(-n-2) sp_n(x) over a finite list of basis intervals."""
    cover = list(cover)
    f = ScaledSum([spike(U) for U in cover], [pow2(-n - 2) for n in range(len(cover))],
                  Fraction(1, 2), tail_bound=lambda n: pow2(-n - 2),
                  description="spikesum(%d)" % len(cover))
    f.cover = cover
    f.lipschitz = Fraction(1, 2)
    return f


def spike_sum_partial(cover, q, e):
    """y_e = sum_{n<=e} 2^(-n-2) sp_n(q), exactly."""
    total = Fraction(0)
    for n in range(min(e + 1, len(cover))):
        total += pow2(-n - 2) * spike_value(cover[n], q)
    return total


class RuleCode(ContCode):
    """A code given only by its membership predicate; evaluation must scan."""
    has_witness = False

    def __init__(self, member_fn, padding_pair, description="rule code", lipschitz=None):
        self._member = member_fn
        self._padding = padding_pair
        self.description = description
        self.lipschitz = lipschitz

    def member(self, U, V):
        return self._member(U, V)

    def padding(self):
        return self._padding

    def witness(self, x, n):
        return None


def eval_at(f, x, n, budget=None):
    """A rational within 2^-n of f(x): the midpoint of a localising V."""
    x = as_real(x)
    if budget is None:
        budget = n + 64
    eps = pow2(-n)
    if f.has_witness:
        w = f.witness(x, n)
        if w is not None:
            U, V = w
            if V.length <= eps and member_budgeted(x, U, budget) == Membership.IN:
                return V.midpoint
    for i in range(budget):
        U, V = f.pairs(i)
        if V.length <= eps and member_budgeted(x, U, budget) == Membership.IN:
            return V.midpoint
    raise Exhausted("no pair of length <= 2^-%d found for %r within budget %d" % (n, f, budget))


def value_real(f, x, budget=None):
    """f(x) as a coded real; approximant n is eval_at(f, x, n)."""
    x = as_real(x)
    return FastReal(lambda n: eval_at(f, x, n, budget), ("composite", "value"))


def modulus_of(f, n):
    L = f.lipschitz
    if L is None:
        raise NotAvailable("%r carries no Lipschitz bound" % (f,))
    if L == 0:
        return 0
    return max(0, n + ceil_log2(L) + 1)
