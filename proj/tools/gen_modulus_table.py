#!/usr/bin/env python3
"""Regenerate the sparse irreducible modulus table in src/modulus_table.cpp.

Rule: for each degree n, pick x^n + x^k + 1 with the smallest k for which the
trinomial is irreducible over GF(2); when no irreducible trinomial exists,
pick x^n + x^a + x^b + x^c + 1 with (a, b, c) smallest in lexicographic order.
Irreducibility is decided with the deterministic Rabin test (x^(2^n) == x mod f
and gcd(x^(2^(n/p)) - x, f) == 1 for every prime p | n).
"""

import sys

DEGREES = list(range(1, 65)) + [127, 128, 256, 521, 1024]


def _square(a):
    # (sum a_i x^i)^2 = sum a_i x^(2i) over GF(2)
    return int("0".join(bin(a)[2:]), 2) if a else 0


def _make_reducer(n, exps):
    mask = (1 << n) - 1

    def red(a):
        while a >> n:
            hi = a >> n
            a &= mask
            a ^= hi
            for k in exps:
                a ^= hi << k
        return a

    return red


def _pmod(a, f):
    df = f.bit_length() - 1
    while a and a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _pgcd(a, b):
    while b:
        a, b = b, _pmod(a, b)
    return a


def _prime_factors(n):
    fs, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            fs.add(d)
            n //= d
        d += 1
    if n > 1:
        fs.add(n)
    return fs


def is_irreducible(n, exps):
    if n == 1:
        return True
    red = _make_reducer(n, exps)
    f = (1 << n) | 1
    for k in exps:
        f |= 1 << k
    t = 0b10
    for _ in range(n):
        t = red(_square(t))
    if t != 0b10:
        return False
    for p in _prime_factors(n):
        t = 0b10
        for _ in range(n // p):
            t = red(_square(t))
        if _pgcd(t ^ 0b10, f) != 1:
            return False
    return True


def find_modulus(n):
    if n == 1:
        return (1,)
    for k in range(1, n):
        if is_irreducible(n, [k]):
            return (k,)
    for a in range(3, n):
        for b in range(2, a):
            for c in range(1, b):
                if is_irreducible(n, [a, b, c]):
                    return (a, b, c)
    raise RuntimeError(f"no sparse irreducible found for degree {n}")


def main():
    for n in DEGREES:
        exps = find_modulus(n)
        padded = list(exps) + [0] * (3 - len(exps))
        print(f"    {{{n}, {{{padded[0]}, {padded[1]}, {padded[2]}}}, {len(exps)}}},")
    return 0


if __name__ == "__main__":
    sys.exit(main())
