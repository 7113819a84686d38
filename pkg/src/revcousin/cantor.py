"""Cantor space: metric, middle-thirds embedding, the diagonal tree, a Pi^0_1 class of
small measure, stage-bounded jumps and the column gauge on jump hierarchies."""
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .codings import pair_cantor, unpair_cantor, rat_decode
from .exactreal import FastReal, pow2
from .intervals import IntervalR, make_ui
from .machines import Halted, STANDARD, settle


class BitOracle:
    """An infinite binary sequence given by a total map n -> {0, 1}."""

    def __init__(self, bit_at, description="X"):
        self._bit = bit_at
        self._memo = {}
        self.description = description

    def bit_at(self, n):
        v = self._memo.get(n)
        if v is None:
            v = self._memo[n] = int(self._bit(n))
        return v

    __getitem__ = bit_at

    def prefix(self, n):
        return "".join(str(self.bit_at(i)) for i in range(n))

    def column(self, k):
        return BitOracle(lambda e: self.bit_at(pair_cantor(e, k)), "%s^[%d]" % (self.description, k))

    def contains(self, n):
        return self.bit_at(n) == 1


def eventually_periodic(prefix, period="0"):
    """prefix followed by period repeated, e.g. ("1", "0") is 1000..."""
    if not period:
        raise ValueError("empty period")

    def bit(n):
        if n < len(prefix):
            return int(prefix[n])
        return int(period[(n - len(prefix)) % len(period)])

    return BitOracle(bit, "%s(%s)" % (prefix, period))


def from_set(members):
    members = frozenset(members)
    return BitOracle(lambda n: n in members, "set")


def flipped(X, positions):
    positions = frozenset(positions)
    return BitOracle(lambda n: X.bit_at(n) ^ (n in positions), "%s flipped" % X.description)


def cantor_metric(X, Y, budget):
    """2^-n for the first difference n < budget; None means zero so far."""
    for n in range(budget):
        if X.bit_at(n) != Y.bit_at(n):
            return pow2(-n)
    return None


def embed_middle_thirds(X):
    """g(X) = sum 2 X_n / 3^(n+1)."""

    def approx(n):
        N = 0
        while 3 ** N < (1 << (n + 1)):
            N += 1
        return sum((Fraction(2 * X.bit_at(k), 3 ** (k + 1)) for k in range(N)), Fraction(0))

    return FastReal(approx, ("composite", "middle thirds"))


# -- the diagonal tree ------------------------------------------------------------

def diag_tree_member(sigma, enum=STANDARD):
    """sigma is out iff some e < |sigma| has phi_e(e) halt within |sigma| steps with output sigma_e."""
    n = len(sigma)
    for e in range(n):
        res = enum.run(e, e, n)
        if isinstance(res, Halted) and res.value == int(sigma[e]):
            return False
    return True


def diag_tree_level(n, enum=STANDARD):
    level = [""]
    for k in range(1, n + 1):
        level = [s + b for s in level for b in "01" if diag_tree_member(s + b, enum)]
    return level


# -- Pi^0_1 class of measure >= 1/2 avoiding every computable real ----------------

@dataclass(frozen=True)
class Ball:
    e: int
    s: int
    center: Fraction
    radius: Fraction

    @property
    def interval_r(self):
        return IntervalR(self.center - self.radius, self.center + self.radius)

    @property
    def interval_ui(self):
        return make_ui(self.center - self.radius, self.center + self.radius)

    @property
    def length(self):
        return 2 * self.radius


def pi01_balls(k, search_bound, enum=STANDARD):
    """First k balls B(phi_e(e+3), 2^(-e-3)), scanning (e, s) in pairing order.

    Returns (balls, complete) where complete is False when the bound ran out."""
    balls = []
    if k == 0:
        return balls, True
    for idx in range(search_bound):
        e, s = unpair_cantor(idx)
        if s == 0:
            continue
        res = enum.run(e, e + 3, s)
        if isinstance(res, Halted) and res.steps == s:
            balls.append(Ball(e, s, rat_decode(res.value), pow2(-e - 3)))
            if len(balls) == k:
                return balls, True
    return balls, False


# -- jumps -------------------------------------------------------------------------

def jump_stage(oracle, e, stage, enum=STANDARD):
    """Does phi_e^A(e) halt within `stage` steps?  oracle: n -> bool."""
    res = enum.run_with_oracle(e, e, stage, oracle)
    return isinstance(res, Halted)


def jump_settled(oracle, e, max_steps, enum=STANDARD):
    """True/False when bounded simulation with cycle detection settles phi_e^A(e), else None."""
    verdict = settle(enum.program(e), e, max_steps, oracle)
    if verdict[0] == "halts":
        return True
    if verdict[0] == "loops":
        return False
    return None


def reference_point(stage, enum=STANDARD):
    """X with X^[0] empty and X^[n] the stage-bounded jump of X^[n-1]."""
    memo = {}

    def bit(i):
        if i in memo:
            return memo[i]
        e, n = unpair_cantor(i)
        if n == 0:
            v = 0
        else:
            v = int(jump_stage(lambda q: bit(pair_cantor(q, n - 1)) == 1, e, stage, enum))
        memo[i] = v
        return v

    return BitOracle(bit, "jump hierarchy @%d" % stage)


def column_windows(column_bound, stage, probes):
    """Probe widths per column, wide enough that every oracle query of a jump
    computation at column n lands inside the window already checked at n-1
    (registers grow by at most one per step)."""
    return [probes + (column_bound - n) * stage for n in range(column_bound + 1)]


def column_gauge(Y, column_bound, stage, probes=8, enum=STANDARD):
    """2^(-k-1) for the first certified difference k from the jump hierarchy, else None."""
    W = column_windows(column_bound, stage, probes)
    for n in range(column_bound + 1):
        if n == 0:
            expected = lambda e: 0
        else:
            prev = Y.column(n - 1)
            expected = lambda e, prev=prev: int(jump_stage(prev.contains, e, stage, enum))
        for e in range(W[n]):
            if Y.bit_at(pair_cantor(e, n)) != expected(e):
                return pow2(-pair_cantor(e, n) - 1)
    return None


# -- deciding a set from enumerations of it and of its complement --------------------

def decide_by_enumerations(in_b, in_c, n, budget=None):
    """A = {n : exists j (n, j) in B}, complement = {n : exists j (n, j) in C}.

    Checks (n,0) in B, (n,0) in C, (n,1) in B, ... and returns the first answer."""
    for j in itertools.count():
        if budget is not None and j >= budget:
            return None
        if in_b(n, j):
            return True
        if in_c(n, j):
            return False
