# Exact q_{m,s} values straight from the defining series, with Fractions.
import random
from fractions import Fraction
from math import factorial

def deriv(c, k):
    return [c[i] * Fraction(factorial(i), factorial(i - k)) for i in range(k, len(c))]

def seminorm0(c, s):
    return sum(abs(x) for x in c[:s])

def qms_int(c, m, s):
    total = Fraction(0)
    r = 0
    while r * s < len(c):
        total += seminorm0(deriv(c, r * s), s) / Fraction(factorial(r * s)) ** m
        r += 1
    return total

rnd = random.Random(20240611)
rows = []
for m in (1, 2, 3):
    for s in (1, 2, 3, 4):
        for _ in range(4):
            deg = rnd.randint(0, 10)
            c = [Fraction(rnd.randint(-9, 9), rnd.randint(1, 5)) for _ in range(deg + 1)]
            if all(x == 0 for x in c):
                c[0] = Fraction(1)
            v = qms_int(c, m, s)
            rows.append(("value", f"{m}/1", s, c, v))
# fractional m on monomials a x^N: the norm is one radical term, so value^q is rational
for (p, q) in ((1, 2), (3, 2), (2, 3)):
    for s in (1, 2, 3):
        for N in (0, 1, 4, 7, 9):
            a = Fraction(rnd.randint(1, 9), rnd.randint(1, 4))
            r, l = divmod(N, s)
            # P^{(rs)} = a N!/l! x^l, and its l-th coefficient is the only one below s
            base = a * Fraction(factorial(N), factorial(l))
            v = base ** q / Fraction(factorial(r * s)) ** p
            c = [Fraction(0)] * N + [a]
            rows.append((f"power{q}", f"{p}/{q}", s, c, v))

print("# kind,m,s,coeffs,expected  (coeffs in increasing power; expected is the value, or value^q for powerq)")
for kind, m, s, c, v in rows:
    coeffs = " ".join(f"{x.numerator}/{x.denominator}" for x in c)
    print(f"{kind},{m},{s},{coeffs},{v.numerator}/{v.denominator}")
