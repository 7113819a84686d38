"""S-expression language for functions and gauges.

    (const q) (linear m c) (piecewise (d0 ... dk) e1 ... ek)
    (spike p q) (spikesum (iv p q) ...) (spikesum-pi01 N)
    (lift e) (heaviside) (clb1-gauge sqrt2-over-2) (dyadic-cex)
    (baire-seq e1 ... ek [generator])
    (absdist c s)        s*|x - c|, nonnegative slope s
    (dirichlet-gauge eps) (const-gauge k) (chi-q)
"""
import re

from . import bairefun as bf
from . import contfun as cf
from .cantor import pi01_balls
from .codings import parse_rat
from .intervals import IntervalUI
from .partition import CHI_Q, constant_gauge, dirichlet_gauge


class DSLError(ValueError):
    pass


_TOK = re.compile(r"\s*(?:([()])|([^\s()]+))")

PI01_SEARCH_BOUND = 1 << 18


def read(text):
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise DSLError("bad character at %d" % pos)
        toks.append(m.group(1) or m.group(2))
        pos = m.end()
    if not toks:
        raise DSLError("empty expression")
    stack = [[]]
    for t in toks:
        if t == "(":
            stack.append([])
        elif t == ")":
            if len(stack) == 1:
                raise DSLError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(t)
    if len(stack) != 1:
        raise DSLError("unbalanced '('")
    if len(stack[0]) != 1:
        raise DSLError("expected a single expression")
    return stack[0][0]


def _rat(x):
    if isinstance(x, list):
        raise DSLError("expected a rational, got a list")
    try:
        return parse_rat(x)
    except (ValueError, ZeroDivisionError) as e:
        raise DSLError("bad rational %r" % x) from e


def _interval(x):
    if not (isinstance(x, list) and len(x) == 3 and x[0] == "iv"):
        raise DSLError("expected (iv p q)")
    return IntervalUI(_rat(x[1]), _rat(x[2]))


def _arity(args, k, head):
    if len(args) != k:
        raise DSLError("%s takes %d argument(s), got %d" % (head, k, len(args)))


def build(x):
    if not isinstance(x, list) or not x or isinstance(x[0], list):
        raise DSLError("expected (head args...)")
    head, args = x[0], x[1:]
    if head == "const":
        _arity(args, 1, head)
        return cf.const(_rat(args[0]))
    if head == "linear":
        _arity(args, 2, head)
        return cf.Linear(_rat(args[0]), _rat(args[1]))
    if head == "piecewise":
        if not args or not isinstance(args[0], list):
            raise DSLError("piecewise needs a breakpoint list")
        breaks = [_rat(d) for d in args[0]]
        parts = [build(e) for e in args[1:]]
        if not all(isinstance(p, cf.ContCode) for p in parts):
            raise DSLError("piecewise parts must be continuous codes")
        try:
            return cf.Piecewise(breaks, parts)
        except ValueError as e:
            raise DSLError(str(e)) from e
    if head == "spike":
        _arity(args, 2, head)
        return cf.spike(IntervalUI(_rat(args[0]), _rat(args[1])))
    if head == "spikesum":
        if not args:
            raise DSLError("spikesum needs at least one interval")
        return cf.spike_sum([_interval(a) for a in args])
    if head == "spikesum-pi01":
        _arity(args, 1, head)
        balls, _ = pi01_balls(int(args[0]), PI01_SEARCH_BOUND)
        return cf.spike_sum([b.interval_ui for b in balls])
    if head == "absdist":
        _arity(args, 2, head)
        c, s = _rat(args[0]), _rat(args[1])
        if s < 0:
            raise DSLError("absdist slope must be nonnegative")
        pts = [(0, s * abs(c))]
        if 0 < c < 1:
            pts.append((c, 0))
        pts.append((1, s * abs(1 - c)))
        return cf.interpolate(pts, description="absdist %s %s" % (c, s), lipschitz=s)
    if head == "lift":
        _arity(args, 1, head)
        return bf.lift(build(args[0]))
    if head == "heaviside":
        _arity(args, 0, head)
        return bf.heaviside()
    if head == "clb1-gauge":
        _arity(args, 1, head)
        if args[0] != "sqrt2-over-2":
            raise DSLError("clb1-gauge supports sqrt2-over-2 only")
        return bf.clb1_sqrt2_over_2()
    if head == "dyadic-cex":
        _arity(args, 0, head)
        return bf.dyadic_cex()
    if head == "baire-seq":
        gen = None
        if args and not isinstance(args[-1], list):
            gen = args[-1]
            args = args[:-1]
            if gen not in bf.GENERATORS:
                raise DSLError("unknown generator %r" % gen)
        items = [build(a) for a in args]
        ranks = {(0 if isinstance(i, cf.ContCode) else i.rank) for i in items}
        if len(ranks) > 1:
            raise DSLError("baire-seq items must share a rank")
        try:
            return bf.baire_seq(items, gen)
        except ValueError as e:
            raise DSLError(str(e)) from e
    if head == "dirichlet-gauge":
        _arity(args, 1, head)
        return dirichlet_gauge(_rat(args[0]))
    if head == "const-gauge":
        _arity(args, 1, head)
        return constant_gauge(_rat(args[0]))
    if head == "chi-q":
        _arity(args, 0, head)
        return CHI_Q
    raise DSLError("unknown form %r" % head)


def parse(text):
    return build(read(text))
