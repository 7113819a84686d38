"""Command line front end.  Exit codes: 0 ok, 1 usage, 2 exhausted or refuted, 3 invariant violation."""
import argparse
import sys
from fractions import Fraction

from . import bairefun as bf
from . import contfun as cf
from . import dsl
from .cantor import diag_tree_level, embed_middle_thirds, eventually_periodic, pi01_balls
from .codings import format_rat, parse_rat
from .cousin import GaugeEvaluationFailed, InvariantViolation, cousin_search, frontier_partition
from .exactreal import as_real
from .l2logic import (EXHAUSTED, L2SyntaxError, ShapeError, EvaluationError, classify,
                      eval_delta00, has_unbounded, parse_formula, search_sigma01)
from .machines import Halted, decode_program, parse_program, run_program
from .partition import (CHI_Q, VERIFIED, SymbolicGauge, as_tag, irr_tag_from_name,
                        is_delta_fine, partition_from_json, riemann_integrate, riemann_sum)

USAGE, REFUTED, INVARIANT = 1, 2, 3


class UsageError(Exception):
    pass


def _out(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _point(text):
    text = text.strip()
    if "sqrt" in text:
        return irr_tag_from_name(text)
    return parse_rat(text)


def _read_partition(path):
    with open(path) as fh:
        return partition_from_json(fh.read())


def cmd_integrate(a):
    f = dsl.parse(a.function)
    if a.mode == "riemann":
        if not isinstance(f, cf.ContCode):
            raise UsageError("riemann mode needs a continuous function")
        est, err = riemann_integrate(f, a.mesh)
        _out("%s ± %s" % (format_rat(est), format_rat(err)))
        return 0
    if not a.gauge:
        raise UsageError("gauge mode needs --gauge")
    delta = dsl.parse(a.gauge)
    if a.partition:
        P = _read_partition(a.partition)
    else:
        tree = cousin_search(delta, a.max_depth)
        if not tree.finished:
            _out("DepthExhausted %s" % tree.chain)
            return REFUTED
        P = frontier_partition(tree)
    verdict = is_delta_fine(delta, P, a.budget)
    if f is CHI_Q:
        total = riemann_sum(f, P)
    else:
        total = riemann_sum(f, P, a.budget)
    _out("%s  %s" % (format_rat(total), verdict))
    return 0 if verdict == VERIFIED else REFUTED


def cmd_cousin(a):
    delta = dsl.parse(a.gauge)
    tree = cousin_search(delta, a.max_depth)
    if not tree.finished:
        _out("DepthExhausted %s" % tree.chain)
        return REFUTED
    P = frontier_partition(tree)
    text = P.to_json()
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0


def cmd_verify(a):
    delta = dsl.parse(a.gauge)
    P = _read_partition(a.partition)
    verdict = is_delta_fine(delta, P, a.budget)
    _out(str(verdict))
    return 0 if verdict == VERIFIED else REFUTED


def cmd_classify(a):
    _out(str(classify(parse_formula(a.formula))))
    return 0


def _parse_set(text):
    name, _, body = text.partition("=")
    body = body.strip()
    if not name or not (body.startswith("{") and body.endswith("}")):
        raise UsageError("--set expects X={n,...}")
    inner = body[1:-1].strip()
    return name.strip(), frozenset(int(x) for x in inner.split(",")) if inner else frozenset()


def cmd_eval(a):
    phi = parse_formula(a.formula)
    nums = {}
    for item in a.assign:
        k, _, v = item.partition("=")
        if not v:
            raise UsageError("--assign expects x=n")
        nums[k.strip()] = int(v)
    sets = dict(_parse_set(s) for s in a.set)
    if not has_unbounded(phi):
        _out("true" if eval_delta00(phi, nums, sets) else "false")
        return 0
    res = search_sigma01(phi, a.budget, nums, sets)
    if res == EXHAUSTED:
        _out("ExhaustedAtBudget %d" % a.budget)
        return REFUTED
    _out("Witness %s" % " ".join(str(v) for v in res.values))
    return 0


def cmd_tree(a):
    if a.which != "diag":
        raise UsageError("only the diag tree is available")
    for n in range(a.depth + 1):
        level = diag_tree_level(n)
        _out("%d %d %s" % (n, len(level), level[0] if level and level[0] else "-"))
        if not level:
            return REFUTED
    return 0


def cmd_pi01(a):
    balls, complete = pi01_balls(a.count, a.bound)
    total = Fraction(0)
    for b in balls:
        _out("e=%d s=%d center=%s radius=%s" % (b.e, b.s, format_rat(b.center), format_rat(b.radius)))
        total += b.length
    _out("total %s%s" % (format_rat(total), "" if complete else " (incomplete)"))
    return 0 if complete else REFUTED


def cmd_run(a):
    if a.prog:
        with open(a.prog) as fh:
            prog = parse_program(fh.read())
    elif a.code is not None:
        prog = decode_program(a.code)
    else:
        raise UsageError("run needs --prog or --code")
    res = run_program(prog, a.input, a.steps)
    if isinstance(res, Halted):
        _out("Halted %d %d" % (res.value, res.steps))
        return 0
    _out("StillRunning %d" % res.after_steps)
    return REFUTED


def cmd_embed(a):
    prefix, _, period = a.bits.partition(":")
    X = eventually_periodic(prefix, period or "0")
    _out(format_rat(embed_middle_thirds(X).approx(a.precision)))
    return 0


def cmd_gauge_eval(a):
    g = dsl.parse(a.gauge)
    x = _point(a.at)
    xr = as_real(x) if isinstance(x, Fraction) else x.real
    if isinstance(g, SymbolicGauge):
        v = g.at_tag(as_tag(x))
    elif isinstance(g, cf.ContCode):
        v = cf.eval_at(g, xr, a.precision, a.budget)
    elif isinstance(g, bf.BaireCode):
        v = bf.limit_real(g, xr).approx(a.precision)
    else:
        raise UsageError("not a gauge")
    _out(format_rat(v))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="revcousin", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("integrate", help="Riemann or gauge integral estimate")
    s.add_argument("--function", required=True)
    s.add_argument("--mode", choices=["riemann", "gauge"], default="riemann")
    s.add_argument("--mesh", type=int, default=8, help="uniform mesh 2^-mesh")
    s.add_argument("--gauge")
    s.add_argument("--partition", help="partition JSON for gauge mode")
    s.add_argument("--max-depth", type=int, default=24)
    s.add_argument("--budget", type=int, default=64)
    s.set_defaults(fn=cmd_integrate)

    s = sub.add_parser("cousin", help="dyadic search for a fine partition")
    s.add_argument("--gauge", required=True)
    s.add_argument("--max-depth", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_cousin)

    s = sub.add_parser("verify-partition", help="check delta-fineness of a partition")
    s.add_argument("--gauge", required=True)
    s.add_argument("--partition", required=True)
    s.add_argument("--budget", type=int, default=64)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("classify", help="literal-form hierarchy class")
    s.add_argument("--formula", required=True)
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("eval", help="evaluate a bounded formula or search a Sigma01 witness")
    s.add_argument("--formula", required=True)
    s.add_argument("--assign", action="append", default=[])
    s.add_argument("--set", action="append", default=[])
    s.add_argument("--budget", type=int, default=10000)
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("tree", help="levels of the diagonal tree")
    s.add_argument("which", choices=["diag"])
    s.add_argument("--depth", type=int, required=True)
    s.set_defaults(fn=cmd_tree)

    s = sub.add_parser("pi01", help="balls of the small-measure Pi01 class")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--bound", type=int, required=True)
    s.set_defaults(fn=cmd_pi01)

    s = sub.add_parser("run", help="run a counter-machine program")
    s.add_argument("--prog")
    s.add_argument("--code", type=int)
    s.add_argument("--input", type=int, default=0)
    s.add_argument("--steps", type=int, required=True)
    s.set_defaults(fn=cmd_run)

    s = sub.add_parser("embed", help="middle-thirds image of prefix[:period]")
    s.add_argument("--bits", required=True)
    s.add_argument("--precision", type=int, default=20)
    s.set_defaults(fn=cmd_embed)

    s = sub.add_parser("gauge-eval", help="approximate a gauge at a point")
    s.add_argument("--gauge", required=True)
    s.add_argument("--at", required=True, help="rational, sqrt2/2 or a+c*sqrt(d)")
    s.add_argument("--precision", type=int, default=20)
    s.add_argument("--budget", type=int)
    s.set_defaults(fn=cmd_gauge_eval)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else 0
    try:
        return args.fn(args)
    except InvariantViolation as e:
        sys.stderr.write("invariant violation: %s\n" % e)
        return INVARIANT
    except (cf.Exhausted, bf.NoModulus, GaugeEvaluationFailed) as e:
        sys.stderr.write("exhausted: %s\n" % e)
        return REFUTED
    except (UsageError, dsl.DSLError, L2SyntaxError, ShapeError, EvaluationError,
            ValueError, OSError) as e:
        sys.stderr.write("error: %s\n" % e)
        return USAGE


def run():
    sys.exit(main())
