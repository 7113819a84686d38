"""Second-order arithmetic: parser, printer, literal-form classifier, bounded evaluator.

Syntax (ASCII):
    terms     0 | 1 | numerals | x | t+t | t*t | (t)
    atoms     t = t | t < t | t in X
    formulas  ~φ | φ & ψ | φ | ψ | φ -> ψ | φ <-> ψ | (φ)
              A x. φ | E x. φ | A X. φ | E X. φ     (body extends as far as possible)
              (A x < t) φ | (E x < t) φ             (body binds like ~)
Lowercase names are number variables, uppercase names are set variables.
A and E are reserved for quantifiers, `in` for membership.
"""
import re
from dataclasses import dataclass

from .codings import unpair_tuple


# -- syntax trees -------------------------------------------------------------

@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class NumVar:
    name: str


@dataclass(frozen=True)
class SetVar:
    name: str


@dataclass(frozen=True)
class Plus:
    left: object
    right: object


@dataclass(frozen=True)
class Times:
    left: object
    right: object


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class Lt:
    left: object
    right: object


@dataclass(frozen=True)
class In:
    term: object
    set: SetVar


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True)
class Iff:
    left: object
    right: object


@dataclass(frozen=True)
class ForallNum:
    var: NumVar
    body: object


@dataclass(frozen=True)
class ExistsNum:
    var: NumVar
    body: object


@dataclass(frozen=True)
class ForallSet:
    var: SetVar
    body: object


@dataclass(frozen=True)
class ExistsSet:
    var: SetVar
    body: object


@dataclass(frozen=True)
class BoundedForall:
    var: NumVar
    bound: object
    body: object


@dataclass(frozen=True)
class BoundedExists:
    var: NumVar
    bound: object
    body: object


TERMS = (Zero, One, NumVar, Plus, Times)
UNBOUNDED = (ForallNum, ExistsNum, ForallSet, ExistsSet)
BOUNDED = (BoundedForall, BoundedExists)
BINARY = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def numeral(k):
    if k == 0:
        return Zero()
    t = One()
    for _ in range(k - 1):
        t = Plus(t, One())
    return t


def numeral_value(t):
    """k if t is the numeral chain for k, else None."""
    if isinstance(t, Zero):
        return 0
    k = 0
    while isinstance(t, Plus) and isinstance(t.right, One):
        k += 1
        t = t.left
    if isinstance(t, One):
        return k + 1
    return None


# -- parsing ----------------------------------------------------------------------

class L2SyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__("%s at position %d" % (msg, pos))
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(<->|->|[()~&|.+*=<])|([0-9]+)|([A-Za-z_][A-Za-z0-9_']*))")


def tokenize(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise L2SyntaxError("unexpected character %r" % text[pos], pos)
        start = m.start(m.lastindex)
        toks.append((m.group(m.lastindex), start, m.lastindex))
        pos = m.end()
    toks.append(("<eof>", len(text), 0))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)][0]

    def pos(self):
        return self.toks[self.i][1]

    def kind(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)][2]

    def take(self, expected=None):
        tok = self.peek()
        if expected is not None and tok != expected:
            raise L2SyntaxError("expected %r, found %r" % (expected, tok), self.pos())
        self.i += 1
        return tok

    def is_ident(self, k=0):
        return self.kind(k) == 3 and self.peek(k) not in ("A", "E", "in")

    # formulas
    def formula(self):
        left = self.implies()
        while self.peek() == "<->":
            self.take()
            left = Iff(left, self.implies())
        return left

    def implies(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implies())
        return left

    def disj(self):
        left = self.conj()
        while self.peek() == "|":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek() == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok in ("A", "E") and self.is_ident(1) and self.peek(2) == ".":
            self.take()
            name = self.take()
            self.take(".")
            body = self.formula()
            if name[0].isupper():
                return (ForallSet if tok == "A" else ExistsSet)(SetVar(name), body)
            return (ForallNum if tok == "A" else ExistsNum)(NumVar(name), body)
        if tok == "(" and self.peek(1) in ("A", "E") and self.is_ident(2) and self.peek(3) == "<":
            start = self.pos()
            self.take()
            q = self.take()
            name = self.take()
            if not name[0].islower():
                raise L2SyntaxError("bounded quantifiers range over numbers", start)
            self.take("<")
            bound = self.term()
            self.take(")")
            var = NumVar(name)
            if var in term_vars(bound):
                raise L2SyntaxError("bound of %s mentions %s itself" % (name, name), start)
            body = self.unary()
            return (BoundedForall if q == "A" else BoundedExists)(var, bound, body)
        if tok == "(":
            save = self.i
            try:
                self.take()
                f = self.formula()
                self.take(")")
                if self.peek() not in ("=", "<", "in", "+", "*"):
                    return f
            except L2SyntaxError:
                pass
            self.i = save
        return self.atom()

    def atom(self):
        start = self.pos()
        left = self.term()
        op = self.peek()
        if op in ("=", "<"):
            self.take()
            right = self.term()
            return Eq(left, right) if op == "=" else Lt(left, right)
        if op == "in":
            self.take()
            if self.kind() != 3 or not self.peek()[0].isupper() or self.peek() in ("A", "E"):
                raise L2SyntaxError("expected a set variable after 'in'", self.pos())
            return In(left, SetVar(self.take()))
        raise L2SyntaxError("expected '=', '<' or 'in' after term", self.pos() if op != "<eof>" else start)

    # terms
    def term(self):
        left = self.prod()
        while self.peek() == "+":
            self.take()
            left = Plus(left, self.prod())
        return left

    def prod(self):
        left = self.tatom()
        while self.peek() == "*":
            self.take()
            left = Times(left, self.tatom())
        return left

    def tatom(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        if self.kind() == 2:
            self.take()
            return numeral(int(tok))
        if self.is_ident():
            if tok[0].isupper():
                raise L2SyntaxError("set variable %s used as a number" % tok, self.pos())
            self.take()
            return NumVar(tok)
        raise L2SyntaxError("expected a term, found %r" % tok, self.pos())


def parse_formula(text):
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "<eof>":
        raise L2SyntaxError("unexpected %r" % p.peek(), p.pos())
    return f


def parse_term(text):
    p = _Parser(text)
    t = p.term()
    if p.peek() != "<eof>":
        raise L2SyntaxError("unexpected %r" % p.peek(), p.pos())
    return t


# -- printing ---------------------------------------------------------------------

def term_str(t, ctx=0):
    """ctx: 0 anywhere, 1 right of '+' or operand of '*', 2 right of '*'."""
    k = numeral_value(t)
    if k is not None and (k <= 1 or True):
        return str(k)
    if isinstance(t, NumVar):
        return t.name
    if isinstance(t, Plus):
        s = "%s+%s" % (term_str(t.left, 0), term_str(t.right, 1))
        return "(%s)" % s if ctx >= 1 else s
    if isinstance(t, Times):
        s = "%s*%s" % (term_str(t.left, 1), term_str(t.right, 2))
        return "(%s)" % s if ctx >= 2 else s
    raise TypeError(t)


_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}


def formula_str(f, prec=0, tail=True):
    if isinstance(f, Eq):
        return "%s = %s" % (term_str(f.left), term_str(f.right))
    if isinstance(f, Lt):
        return "%s < %s" % (term_str(f.left), term_str(f.right))
    if isinstance(f, In):
        return "%s in %s" % (term_str(f.term), f.set.name)
    if isinstance(f, Not):
        inner = f.body
        if isinstance(inner, (Eq, Lt, In)) or type(inner) in _PREC:
            return "~(%s)" % formula_str(inner)
        return "~" + formula_str(inner, 5, tail)
    if type(f) in _PREC:
        P = _PREC[type(f)]
        wrap = P < prec
        t = True if wrap else tail
        if isinstance(f, Implies):
            lp, rp = P + 1, P
        else:
            lp, rp = P, P + 1
        s = "%s %s %s" % (formula_str(f.left, lp, False), BINARY[type(f)],
                          formula_str(f.right, rp, t))
        return "(%s)" % s if wrap else s
    if isinstance(f, UNBOUNDED):
        q = "A" if isinstance(f, (ForallNum, ForallSet)) else "E"
        s = "%s %s. %s" % (q, f.var.name, formula_str(f.body, 0, True))
        return s if tail else "(%s)" % s
    if isinstance(f, BOUNDED):
        q = "A" if isinstance(f, BoundedForall) else "E"
        return "(%s %s < %s) %s" % (q, f.var.name, term_str(f.bound), formula_str(f.body, 5, tail))
    raise TypeError(f)


def normalize(text):
    return formula_str(parse_formula(text))


# -- variables ----------------------------------------------------------------------

def term_vars(t):
    if isinstance(t, NumVar):
        return [t]
    if isinstance(t, (Plus, Times)):
        out = term_vars(t.left)
        out += [v for v in term_vars(t.right) if v not in out]
        return out
    return []


def free_vars(f):
    """Free variables in first-occurrence order (left to right)."""
    out = []

    def add(v, bound):
        if v not in bound and v not in out:
            out.append(v)

    def walk(g, bound):
        if isinstance(g, (Eq, Lt)):
            for v in term_vars(g.left) + term_vars(g.right):
                add(v, bound)
        elif isinstance(g, In):
            for v in term_vars(g.term):
                add(v, bound)
            add(g.set, bound)
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif type(g) in _PREC:
            walk(g.left, bound)
            walk(g.right, bound)
        elif isinstance(g, UNBOUNDED):
            walk(g.body, bound | {g.var})
        elif isinstance(g, BOUNDED):
            for v in term_vars(g.bound):
                add(v, bound)
            walk(g.body, bound | {g.var})
        else:
            raise TypeError(g)

    walk(f, frozenset())
    return out


def universal_closure(f):
    fv = free_vars(f)
    nums = [v for v in fv if isinstance(v, NumVar)]
    sets = [v for v in fv if isinstance(v, SetVar)]
    for v in reversed(sets):
        f = ForallSet(v, f)
    for v in reversed(nums):
        f = ForallNum(v, f)
    return f


# -- classification -------------------------------------------------------------------

@dataclass(frozen=True)
class HierClass:
    kinds: tuple = ()
    order: int = 0
    level: int = 0
    reason: str = None
    blocking: object = None

    @property
    def classified(self):
        return self.reason is None

    def is_(self, kind, order, level):
        return self.classified and kind in self.kinds and (order, level) == (self.order, self.level)

    def __str__(self):
        if not self.classified:
            return "Unclassified: %s" % self.reason
        return "%s %d %d" % ("/".join(self.kinds), self.order, self.level)


def has_unbounded(f):
    if isinstance(f, UNBOUNDED):
        return True
    if isinstance(f, Not):
        return has_unbounded(f.body)
    if type(f) in _PREC:
        return has_unbounded(f.left) or has_unbounded(f.right)
    if isinstance(f, BOUNDED):
        return has_unbounded(f.body)
    return False


def _first_unbounded(f):
    if isinstance(f, UNBOUNDED):
        return f
    if isinstance(f, Not):
        return _first_unbounded(f.body)
    if type(f) in _PREC:
        return _first_unbounded(f.left) or _first_unbounded(f.right)
    if isinstance(f, BOUNDED):
        return _first_unbounded(f.body)
    return None


def classify(f):
    if not has_unbounded(f):
        return HierClass(("Sigma", "Pi"), 0, 0)
    if not isinstance(f, UNBOUNDED):
        node = _first_unbounded(f)
        return HierClass(reason="unbounded quantifier below a connective: %s"
                         % formula_str(node), blocking=node)
    head = type(f)
    while isinstance(f, head):
        f = f.body
    inner = classify(f)
    if not inner.classified:
        return inner
    polarity = "Sigma" if head in (ExistsNum, ExistsSet) else "Pi"
    other = "Pi" if polarity == "Sigma" else "Sigma"
    if head in (ForallNum, ExistsNum):
        if inner.order != 0:
            return HierClass(reason="number quantifier over a set quantifier", blocking=f)
        if inner.level == 0:
            return HierClass((polarity,), 0, 1)
        assert other in inner.kinds
        return HierClass((polarity,), 0, inner.level + 1)
    if inner.order == 0:
        return HierClass((polarity,), 1, 1)
    assert other in inner.kinds
    return HierClass((polarity,), 1, inner.level + 1)


# -- evaluation ---------------------------------------------------------------------

class EvaluationError(ValueError):
    pass


def eval_term(t, env):
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, NumVar):
        if t.name not in env:
            raise EvaluationError("unassigned variable %s" % t.name)
        return env[t.name]
    if isinstance(t, Plus):
        return eval_term(t.left, env) + eval_term(t.right, env)
    if isinstance(t, Times):
        return eval_term(t.left, env) * eval_term(t.right, env)
    raise TypeError(t)


def _member(S, n):
    if callable(S):
        return bool(S(n))
    if hasattr(S, "contains"):
        return S.contains(n)
    return n in S


def eval_delta00(f, num_assign=None, set_assign=None):
    env = dict(num_assign or {})
    sets = dict(set_assign or {})

    def ev(g, env):
        if isinstance(g, Eq):
            return eval_term(g.left, env) == eval_term(g.right, env)
        if isinstance(g, Lt):
            return eval_term(g.left, env) < eval_term(g.right, env)
        if isinstance(g, In):
            if g.set.name not in sets:
                raise EvaluationError("unassigned set variable %s" % g.set.name)
            return _member(sets[g.set.name], eval_term(g.term, env))
        if isinstance(g, Not):
            return not ev(g.body, env)
        if isinstance(g, And):
            return ev(g.left, env) and ev(g.right, env)
        if isinstance(g, Or):
            return ev(g.left, env) or ev(g.right, env)
        if isinstance(g, Implies):
            return (not ev(g.left, env)) or ev(g.right, env)
        if isinstance(g, Iff):
            return ev(g.left, env) == ev(g.right, env)
        if isinstance(g, BOUNDED):
            k = eval_term(g.bound, env)
            results = (ev(g.body, {**env, g.var.name: x}) for x in range(k))
            return all(results) if isinstance(g, BoundedForall) else any(results)
        if isinstance(g, UNBOUNDED):
            raise EvaluationError("unbounded quantifier %s" % formula_str(g))
        raise TypeError(g)

    return ev(f, env)


@dataclass(frozen=True)
class Witness:
    values: tuple


EXHAUSTED = "ExhaustedAtBudget"


class ShapeError(ValueError):
    pass


def search_sigma01(f, budget, num_assign=None, set_assign=None):
    """Scan witness tuples in pairing order for E y1 ... E yk. psi with psi bounded."""
    ys = []
    g = f
    while isinstance(g, ExistsNum):
        ys.append(g.var.name)
        g = g.body
    if not ys or has_unbounded(g):
        raise ShapeError("expected E y1 ... E yk. psi with psi bounded")
    env = dict(num_assign or {})
    k = len(ys)
    for i in range(budget):
        tup = unpair_tuple(i, k)
        env.update(zip(ys, tup))
        if eval_delta00(g, env, set_assign):
            return Witness(tup)
    return EXHAUSTED


BASIC_AXIOMS = [
    "A n. ~(n+1 = 0)",
    "A n. A m. (n+1 = m+1 -> n = m)",
    "A m. m+0 = m",
    "A m. A n. m+(n+1) = (m+n)+1",
    "A m. m*0 = 0",
    "A m. A n. m*(n+1) = m*n+m",
    "A m. ~(m < 0)",
    "A m. A n. (m < n+1 <-> m < n | m = n)",
]
