"""Dyadic search for delta-fine partitions, and subcover extraction for spike-sum gauges."""
from dataclasses import dataclass
from fractions import Fraction

from .bairefun import BaireCode, limit_real
from .contfun import ContCode, spike_value, eval_at
from .exactreal import as_real, pow2
from .partition import SymbolicGauge, RatTag, IrrTag, mk_partition, is_delta_fine, VERIFIED


def a_of(sigma):
    return sum((pow2(-i - 1) for i, b in enumerate(sigma) if b == "1"), Fraction(0))


def b_of(sigma):
    return a_of(sigma) + pow2(-len(sigma))


def m_of(sigma):
    return a_of(sigma) + pow2(-len(sigma) - 1)


@dataclass(frozen=True)
class DyadicInterval:
    sigma: str

    @property
    def a(self):
        return a_of(self.sigma)

    @property
    def b(self):
        return b_of(self.sigma)

    @property
    def m(self):
        return m_of(self.sigma)

    def children(self):
        return DyadicInterval(self.sigma + "0"), DyadicInterval(self.sigma + "1")


class GaugeEvaluationFailed(Exception):
    def __init__(self, sigma, cause):
        super().__init__("gauge evaluation failed at sigma=%r: %s" % (sigma, cause))
        self.sigma = sigma


def approximant(delta, q, n):
    """The n-th approximant of delta(q) at a rational point q."""
    if isinstance(delta, ContCode):
        return eval_at(delta, q, n)
    if isinstance(delta, BaireCode):
        if delta.exact_limit is not None:
            return Fraction(delta.exact_limit(Fraction(q)))
        return limit_real(delta, Fraction(q)).approx(n)
    if isinstance(delta, SymbolicGauge):
        return delta.at_tag(RatTag(Fraction(q)))
    if callable(delta):
        return Fraction(delta(Fraction(q)))
    raise TypeError("cannot evaluate gauge %r at dyadic points" % (delta,))


@dataclass
class CousinTree:
    levels: list
    status: str                 # "Finished" or "DepthExhausted"
    frontier: list = None       # minimal excluded strings, left to right
    chain: str = None           # least surviving string at the last level

    @property
    def finished(self):
        return self.status == "Finished"


def cousin_search(delta, max_depth):
    """Levels T_n: sigma of length n with all prefixes kept and delta|n(m_sigma) <= 2^(-n+1)."""
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")

    def keep(sigma):
        n = len(sigma)
        try:
            v = approximant(delta, m_of(sigma), n)
        except Exception as e:
            raise GaugeEvaluationFailed(sigma, e) from e
        return v <= pow2(-n + 1)

    levels = []
    frontier = []
    current = [s for s in [""] if keep(s)]
    if not current:
        frontier.append("")
    n = 0
    while True:
        levels.append(current)
        if not current:
            return CousinTree(levels, "Finished", sorted(frontier))
        if n == max_depth:
            return CousinTree(levels, "DepthExhausted", chain=min(current))
        nxt = []
        for s in current:
            for c in (s + "0", s + "1"):
                (nxt if keep(c) else frontier).append(c)
        current = sorted(nxt)
        n += 1


def frontier_partition(tree):
    if not tree.finished:
        raise ValueError("only a finished search has a frontier")
    fr = tree.frontier
    points = [a_of(s) for s in fr] + [Fraction(1)]
    tags = [RatTag(m_of(s)) for s in fr]
    return mk_partition(points, tags)


def find_partition(delta, max_depth=32):
    """Frontier partition of a finished search, or None."""
    tree = cousin_search(delta, max_depth)
    return frontier_partition(tree) if tree.finished else None


# -- subcover extraction --------------------------------------------------------

class SubcoverError(Exception):
    pass


class InvariantViolation(AssertionError):
    pass


HARD_CAP = 1 << 16


def tag_real(t):
    if isinstance(t, (RatTag, IrrTag)):
        return t.real
    return as_real(t)


def partial_sum(cover, q, e):
    """y_e = sum_{n <= e} 2^(-n-2) sp_n(q)."""
    total = Fraction(0)
    for n in range(min(e + 1, len(cover))):
        total += pow2(-n - 2) * spike_value(cover[n], q)
    return total


def cover_index_for(cover, t, cap=HARD_CAP):
    """The index m with delta(t) < sp_m(t), found by the two minimisations over y_k."""
    r = tag_real(t)
    exact = r.exact
    y = Fraction(0)
    for k in range(cap + 1):
        if exact is not None:
            # q_k = q for every k, so y_k grows by one term at a time
            if k < len(cover):
                y += pow2(-k - 2) * spike_value(cover[k], exact)
        else:
            y = partial_sum(cover, r.approx(k), k)
        if y >= (3 * k + 1) * pow2(-k - 1):
            e = k
            break
    else:
        raise SubcoverError("minimisation passed the cap %d: not a gauge at %s" % (cap, t))
    qe = r.approx(e)
    bound = (3 * e + 1) * pow2(-e)
    for m in range(min(e + 1, len(cover))):
        if spike_value(cover[m], qe) > bound:
            return m
    raise InvariantViolation("no m <= e=%d with sp_m(q_e) > (3e+1)2^-e at %s" % (e, t))


def extract_subcover(delta, P, grid_exp=12, check=True):
    cover = delta.cover
    per_tag = [cover_index_for(cover, t) for t in P.tags]
    if check:
        check_subcover(cover, P, per_tag, grid_exp)
    return sorted(set(per_tag))


def _in_ui(U, z):
    return 0 <= z <= 1 and U.p < z < U.q


def check_subcover(cover, P, per_tag, grid_exp=12):
    n = 1 << grid_exp
    j = 0
    for i in range(n + 1):
        z = Fraction(i, n)
        while P.points[j + 1] < z:
            j += 1
        blocks = [j]
        if z == P.points[j + 1] and j + 1 < P.size:
            blocks.append(j + 1)
        for b in blocks:
            if not _in_ui(cover[per_tag[b]], z):
                raise InvariantViolation("grid point %s in block %d is outside U_%d"
                                         % (z, b, per_tag[b]))
    return True


def search_and_extract(delta, max_depth=32):
    tree = cousin_search(delta, max_depth)
    if not tree.finished:
        return tree, None, None
    P = frontier_partition(tree)
    if is_delta_fine(delta, P) != VERIFIED:
        raise InvariantViolation("frontier partition failed the fineness check")
    return tree, P, extract_subcover(delta, P)
