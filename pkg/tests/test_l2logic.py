import random

import pytest
from hypothesis import given, settings, strategies as st

from l2oracle import random_formula, small_assignments, truth_oracle
from revcousin.l2logic import (BASIC_AXIOMS, EXHAUSTED, And, BoundedExists, Eq, EvaluationError,
                               ExistsNum, ExistsSet, ForallNum, L2SyntaxError, Not, NumVar, One,
                               Plus, ShapeError, Witness, Zero, classify, eval_delta00,
                               formula_str, normalize, numeral, parse_formula, parse_term,
                               search_sigma01, universal_closure)


def test_parse_examples():
    f = parse_formula("A n. ~(n+1=0)")
    assert f == ForallNum(NumVar("n"), Not(Eq(Plus(NumVar("n"), One()), Zero())))
    assert isinstance(parse_formula("(E x < 5)(x*x = 4)"), BoundedExists)
    assert isinstance(parse_formula("E X. A n. (n in X <-> n < 3)"), ExistsSet)


def test_numerals():
    assert parse_term("3") == Plus(Plus(One(), One()), One())
    assert parse_term("0") == Zero()
    assert formula_str(Eq(numeral(4), NumVar("y"))) == "4 = y"


def test_precedence():
    f = parse_formula("a = 0 | b = 0 & c = 0 -> d = 0 <-> e = 0")
    assert formula_str(f) == "a = 0 | b = 0 & c = 0 -> d = 0 <-> e = 0"
    assert type(f).__name__ == "Iff"
    assert type(f.left).__name__ == "Implies"
    g = parse_formula("A x. x = 0 & y = 0")
    assert isinstance(g, ForallNum) and isinstance(g.body, And)
    h = parse_formula("(A x. x = 0) & y = 0")
    assert isinstance(h, And)
    assert normalize("(A x. x = 0) & y = 0") == "(A x. x = 0) & y = 0"


def test_syntax_errors():
    for bad, pos in (("A n. n +", 8), ("x = ", 3), ("X = 0", 0), ("0 in y", 5), ("(E x < x) x = 0", 0)):
        with pytest.raises(L2SyntaxError) as info:
            parse_formula(bad)
        assert info.value.pos == pos, bad
    with pytest.raises(L2SyntaxError):
        parse_formula("x = 0 )")


def test_basic_axioms():
    for text in BASIC_AXIOMS:
        f = parse_formula(text)
        assert normalize(formula_str(f)) == formula_str(f)
        assert classify(f).is_("Pi", 0, 1)


def test_classify_examples():
    assert str(classify(parse_formula("A n. ~(n+1=0)"))) == "Pi 0 1"
    assert str(classify(parse_formula("(A x < 3)(x < 4)"))) == "Sigma/Pi 0 0"
    assert str(classify(parse_formula("E X. A n. (n in X <-> n < 3)"))) == "Sigma 1 1"
    assert str(classify(parse_formula("A x. E y. A z. x + y = z"))) == "Pi 0 3"
    assert str(classify(parse_formula("A x. A y. E z. x + y = z"))) == "Pi 0 2"
    assert str(classify(parse_formula("A X. E Y. A n. (n in X -> n in Y)"))) == "Pi 1 2"
    u = classify(parse_formula("x = 0 & E y. y = x"))
    assert not u.classified and isinstance(u.blocking, ExistsNum)
    assert not classify(parse_formula("A n. E X. n in X")).classified


def test_dummy_quantifier_raises_level():
    rng = random.Random(15)
    for _ in range(300):
        f = random_formula(rng, 4)
        c = classify(f)
        if c.classified and c.order == 0 and "Pi" in c.kinds:
            d = classify(ExistsNum(NumVar("w"), f))
            assert d.is_("Sigma", 0, c.level + 1)


def test_universal_closure():
    assert formula_str(universal_closure(parse_formula("x < y"))) == "A x. A y. x < y"
    closed = parse_formula("A n. ~(n+1 = 0)")
    assert universal_closure(closed) == closed
    assert formula_str(universal_closure(parse_formula("n in X"))) == "A n. A X. n in X"


def test_round_trip_corpus():
    rng = random.Random(16)
    corpus = [parse_formula(t) for t in BASIC_AXIOMS] + [random_formula(rng, 4) for _ in range(200)]
    for f in corpus:
        text = formula_str(f)
        assert parse_formula(text) == f, text
        assert normalize(text) == text


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_round_trip_random(seed):
    f = random_formula(random.Random(seed), 5)
    assert parse_formula(formula_str(f)) == f


def test_eval_examples():
    assert eval_delta00(parse_formula("(E x < 5)(x*x = 4)"))
    assert not eval_delta00(parse_formula("0 = 1"))
    assert eval_delta00(parse_formula("(A x < 3)(x < 3)"))
    assert eval_delta00(parse_formula("n in X"), {"n": 2}, {"X": {1, 2, 5}})
    assert eval_delta00(parse_formula("n in X"), {"n": 4}, {"X": lambda k: k % 2 == 0})
    with pytest.raises(EvaluationError):
        eval_delta00(parse_formula("x = 0"))
    with pytest.raises(EvaluationError):
        eval_delta00(parse_formula("A x. x = x"))


def test_eval_matches_oracle_sample():
    rng = random.Random(17)
    for _ in range(150):
        f = random_formula(rng, 3, quantifiers=False)
        for nums, sets in list(small_assignments())[::7]:
            assert eval_delta00(f, nums, sets) == truth_oracle(f, nums, sets)


def test_sigma01_search():
    assert search_sigma01(parse_formula("E y. (y + y = 4)"), 100) == Witness((2,))
    for b in (0, 10, 1000):
        assert search_sigma01(parse_formula("E y. (y < 0)"), b) == EXHAUSTED
    w = search_sigma01(parse_formula("E y. E z. (y = z + z + 1) & (y < 4)"), 100)
    assert w == Witness((1, 0))
    with pytest.raises(ShapeError):
        search_sigma01(parse_formula("A y. y = y"), 10)
    with pytest.raises(ShapeError):
        search_sigma01(parse_formula("E y. A z. y = z"), 10)


def test_witnesses_reverify():
    rng = random.Random(18)
    for _ in range(200):
        body = random_formula(rng, 3, quantifiers=False)
        f = ExistsNum(NumVar("x"), ExistsNum(NumVar("y"), body))
        w = search_sigma01(f, 60, {"z": 1}, {"X": {0, 2}, "Y": {1}})
        if w != EXHAUSTED:
            env = {"z": 1, "x": w.values[0], "y": w.values[1]}
            assert eval_delta00(body, env, {"X": {0, 2}, "Y": {1}})
