"""Pairing functions, canonical rationals and the bitstring <-> N bijection."""
from fractions import Fraction
from math import gcd, isqrt

Rat = Fraction


def pair_cantor(m, n):
    if m < 0 or n < 0:
        raise ValueError("pairing is defined on naturals only")
    s = m + n
    return s * (s + 1) // 2 + m


def unpair_cantor(k):
    if k < 0:
        raise ValueError("negative code")
    # largest s with s(s+1)/2 <= k
    s = (isqrt(8 * k + 1) - 1) // 2
    m = k - s * (s + 1) // 2
    return m, s - m


def pair_tuple(*xs):
    """d-ary pairing by nesting to the right: pi3(a,b,c) = pi2(a, pi2(b,c))."""
    if not xs:
        raise ValueError("need at least one component")
    acc = xs[-1]
    for x in reversed(xs[:-1]):
        acc = pair_cantor(x, acc)
    return acc


def unpair_tuple(k, d):
    if d < 1:
        raise ValueError("arity must be positive")
    out = []
    for _ in range(d - 1):
        a, k = unpair_cantor(k)
        out.append(a)
    out.append(k)
    return tuple(out)


def pair_square(m, n):
    return (m + n) ** 2 + m


def canon_rational(a, b):
    if b == 0:
        raise ZeroDivisionError("denominator is zero")
    return Fraction(a, b)


def canon_integer(m, n):
    """Minimal representative of the integer class of the pair (m, n) = m - n."""
    k = m - n
    return (k, 0) if k >= 0 else (0, -k)


def minimal_integer_code(m, n):
    """Brute-force: the pair in the class of (m, n) with least pair_square code.

    Used to confirm that the normal form of canon_integer really is the
    minimal code."""
    k = m - n
    best = None
    a = max(k, 0)
    while True:
        b = a - k
        code = pair_square(a, b)
        if best is None or code < best[0]:
            best = (code, (a, b))
        if pair_square(a + 1, a + 1 - k) > best[0]:
            return best[1]
        a += 1


def zigzag(z):
    return 2 * z if z >= 0 else -2 * z - 1


def unzigzag(n):
    return n // 2 if n % 2 == 0 else -(n + 1) // 2


def rat_code(q):
    """Surjective-onto-Q numbering: q = a/b in lowest terms -> pi2(zigzag(a), b-1)."""
    q = Fraction(q)
    return pair_cantor(zigzag(q.numerator), q.denominator - 1)


def rat_decode(n):
    a, b = unpair_cantor(n)
    return Fraction(unzigzag(a), b + 1)


def string_code(sigma):
    check_bits(sigma)
    return int("1" + sigma, 2) - 1


def string_decode(n):
    if n < 0:
        raise ValueError("negative code")
    return bin(n + 1)[3:]


def check_bits(sigma):
    if any(c not in "01" for c in sigma):
        raise ValueError("not a bitstring: %r" % (sigma,))
    return sigma


def format_rat(q):
    q = Fraction(q)
    return "%d/%d" % (q.numerator, q.denominator)


def parse_rat(text):
    text = text.strip()
    if "/" in text:
        a, b = text.split("/", 1)
        return canon_rational(int(a), int(b))
    return Fraction(int(text))


def is_reduced(q):
    return q.denominator > 0 and gcd(abs(q.numerator), q.denominator) == 1


# Stern-Brocot numbering of Q n [0,1]: 0, 1, then the tree under 1/2 level by level.

def stern_brocot_runs(q):
    """Run-length form of the path from the root 1/2 down to q (0 < q < 1).

    Built from the continued fraction [0; a1, ..., ak]: the full-tree path is
    L^a1 R^a2 L^a3 ... with the last run shortened by one, minus the first L."""
    q = Fraction(q)
    if not 0 < q < 1:
        raise ValueError("only interior rationals have a path")
    cf = []
    a, b = q.numerator, q.denominator
    while b:
        cf.append(a // b)
        a, b = b, a % b
    quots = cf[1:]
    quots[-1] -= 1
    quots[0] -= 1
    runs = []
    for i, n in enumerate(quots):
        if n:
            runs.append(("0" if i % 2 == 0 else "1", n))
    return runs


def stern_brocot_path(q):
    return "".join(c * n for c, n in stern_brocot_runs(q))


def stern_brocot_index(q, max_depth=None):
    q = Fraction(q)
    if q == 0:
        return 0
    if q == 1:
        return 1
    if not 0 < q < 1:
        raise ValueError("%s is outside [0,1]" % q)
    runs = stern_brocot_runs(q)
    d = sum(n for _, n in runs)
    if max_depth is not None and d > max_depth:
        raise LookupError("%s lies below depth %d" % (q, max_depth))
    path = "".join(c * n for c, n in runs)
    return 1 + (1 << d) + (int(path, 2) if path else 0)


def stern_brocot_rational(m):
    if m < 0:
        raise ValueError("negative index")
    if m == 0:
        return Fraction(0)
    if m == 1:
        return Fraction(1)
    k = m - 1  # k >= 1, depth = bitlength(k) - 1
    d = k.bit_length() - 1
    path = bin(k)[3:]
    ln, ld, rn, rd = 0, 1, 1, 1
    for b in path:
        mn, md = ln + rn, ld + rd
        if b == "0":
            rn, rd = mn, md
        else:
            ln, ld = mn, md
    assert len(path) == d
    return Fraction(ln + rn, ld + rd)
