"""Independent helpers for the logic tests: a random formula generator and a
truth oracle that compiles formulas to Python source."""
import itertools
import random

from revcousin.l2logic import (And, BoundedExists, BoundedForall, Eq, ExistsNum, ExistsSet,
                               ForallNum, ForallSet, Iff, Implies, In, Lt, Not, NumVar, One,
                               Or, Plus, SetVar, Times, Zero, numeral)

NUM_VARS = ["x", "y", "z"]
SET_VARS = ["X", "Y"]


def random_term(rng, depth, names=NUM_VARS):
    if depth == 0 or rng.random() < 0.4:
        c = rng.randrange(5)
        if c == 0:
            return Zero()
        if c == 1:
            return One()
        if c == 2:
            return numeral(rng.randrange(2, 5))
        return NumVar(rng.choice(names))
    op = Plus if rng.random() < 0.6 else Times
    return op(random_term(rng, depth - 1, names), random_term(rng, depth - 1, names))


def random_formula(rng, depth, quantifiers=True, bounded=True, numeral_bounds=False):
    if depth == 0 or rng.random() < 0.2:
        c = rng.randrange(3)
        if c == 0:
            return Eq(random_term(rng, 2), random_term(rng, 2))
        if c == 1:
            return Lt(random_term(rng, 2), random_term(rng, 2))
        return In(random_term(rng, 1), SetVar(rng.choice(SET_VARS)))
    kinds = ["not", "and", "or", "imp", "iff"]
    if bounded:
        kinds += ["ball", "bex"]
    if quantifiers:
        kinds += ["all", "ex", "sall", "sex"]
    k = rng.choice(kinds)
    sub = lambda: random_formula(rng, depth - 1, quantifiers, bounded, numeral_bounds)
    if k == "not":
        return Not(sub())
    if k in ("and", "or", "imp", "iff"):
        return {"and": And, "or": Or, "imp": Implies, "iff": Iff}[k](sub(), sub())
    v = NumVar(rng.choice(NUM_VARS))
    if k in ("ball", "bex"):
        others = [n for n in NUM_VARS if n != v.name]
        if numeral_bounds or rng.random() < .5:
            bound = numeral(rng.randrange(0, 4))
        else:
            bound = random_term(rng, 1, others)
        return (BoundedForall if k == "ball" else BoundedExists)(v, bound, sub())
    if k in ("all", "ex"):
        return (ForallNum if k == "all" else ExistsNum)(v, sub())
    return (ForallSet if k == "sall" else ExistsSet)(SetVar(rng.choice(SET_VARS)), sub())


def to_python(f):
    """Python source for a bounded formula; sets are Python sets, numbers ints."""
    def term(t):
        if isinstance(t, Zero):
            return "0"
        if isinstance(t, One):
            return "1"
        if isinstance(t, NumVar):
            return "n_" + t.name
        op = "+" if isinstance(t, Plus) else "*"
        return "(%s %s %s)" % (term(t.left), op, term(t.right))

    if isinstance(f, Eq):
        return "(%s == %s)" % (term(f.left), term(f.right))
    if isinstance(f, Lt):
        return "(%s < %s)" % (term(f.left), term(f.right))
    if isinstance(f, In):
        return "(%s in s_%s)" % (term(f.term), f.set.name)
    if isinstance(f, Not):
        return "(not %s)" % to_python(f.body)
    if isinstance(f, And):
        return "(%s and %s)" % (to_python(f.left), to_python(f.right))
    if isinstance(f, Or):
        return "(%s or %s)" % (to_python(f.left), to_python(f.right))
    if isinstance(f, Implies):
        return "((not %s) or %s)" % (to_python(f.left), to_python(f.right))
    if isinstance(f, Iff):
        return "(%s == %s)" % (to_python(f.left), to_python(f.right))
    if isinstance(f, (BoundedForall, BoundedExists)):
        q = "all" if isinstance(f, BoundedForall) else "any"
        return "%s([%s for n_%s in range(%s)])" % (q, to_python(f.body), f.var.name, term(f.bound))
    raise ValueError("unbounded quantifier")


def truth_oracle(f, nums, sets):
    env = {"n_" + k: v for k, v in nums.items()}
    env.update({"s_" + k: set(v) for k, v in sets.items()})
    return eval(to_python(f), env)


def small_assignments():
    for vals in itertools.product(range(3), repeat=len(NUM_VARS)):
        for xs in ({0, 2}, {1}):
            yield dict(zip(NUM_VARS, vals)), {"X": xs, "Y": {0, 1, 3}}
