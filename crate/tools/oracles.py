"""Brute-force reference values for the Rust test suite.

Everything here is computed directly from the data files with plain Python
and sympy: no shared code with the Rust implementation.

    python3 tools/oracles.py
"""

import itertools
from pathlib import Path

from sympy import Poly, discriminant, factorint, primerange, symbols, totient

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

DATA = Path(__file__).resolve().parent.parent / "crates" / "core" / "data"
x = symbols("x")


def load():
    fields = tomllib.loads((DATA / "fields.toml").read_text())["field"]
    var = tomllib.loads((DATA / "varieties.toml").read_text())
    return fields, var["surface"], var["curve"]


def poly(coeffs):
    return Poly(list(reversed(coeffs)), x)


def first_irreducible(p, m):
    for code in range(p**m):
        low = [(code // p**k) % p for k in range(m)]
        if low[0] == 0:
            continue
        f = Poly([1] + list(reversed(low)), x, modulus=p)
        if f.is_irreducible:
            return low + [1]
    raise ValueError


def factor_degrees(coeffs, p):
    _, facs = Poly(list(reversed(coeffs)), x, modulus=p).factor_list()
    return sorted(f.degree() for f, e in facs for _ in range(e))


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


class Fp2:
    """F_{p^2} = F_p[s]/(s^2 - n), n a non-residue."""

    def __init__(self, p):
        self.p = p
        self.n = next(a for a in range(2, p) if legendre(a, p) == -1)

    def elements(self):
        return itertools.product(range(self.p), repeat=2)

    def mul(self, a, b):
        p, n = self.p, self.n
        return ((a[0] * b[0] + n * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def chi(self, a):
        if a == (0, 0):
            return 0
        e = (self.p**2 - 1) // 2
        r, b = (1, 0), a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return 1 if r == (1, 0) else -1


def curve_count(coeffs, p, m):
    if m == 1:
        return 1 + sum(1 + legendre(sum(c * t**k for k, c in enumerate(coeffs)), p) for t in range(p))
    k = Fp2(p)
    total = 1
    for t in k.elements():
        acc, pw = (0, 0), (1, 0)
        for c in coeffs:
            acc = ((acc[0] + c * pw[0]) % p, (acc[1] + c * pw[1]) % p)
            pw = k.mul(pw, t)
        total += 1 + k.chi(acc)
    return total


def surface_sum(cubic, p):
    def f(a, b, c):
        g = sum(co * a**i * b**j * c**k for co, i, j, k in cubic)
        return a * b * c * g

    pts = [(a, b, 1) for a in range(p) for b in range(p)] + [(a, 1, 0) for a in range(p)] + [(1, 0, 0)]
    return sum(legendre(f(*pt), p) for pt in pts)


def admissible_orders(coeffs, bound=3000):
    split = [p for p in primerange(3, bound) if factor_degrees(coeffs, p) == [1] * 6]
    cands = [n for n in range(1, 50) if 6 % totient(n) == 0]
    return [n for n in cands if all(p % n == 1 % n for p in split)], len(split)


def main():
    fields, surfaces, curves = load()
    print("first irreducible moduli (constant term first)")
    for p, m in [(17, 2), (5, 3), (3, 6), (7, 4)]:
        print(f"  p={p} m={m}: {first_irreducible(p, m)}")
    print("factor degrees of the defining polynomials")
    for k in fields:
        for p in [5, 13, 17, 29, 37, 61]:
            print(f"  K{k['id']} p={p}: {factor_degrees(k['defining_polynomial'], p)}")
    print("admissible character orders (Bauer: split primes p = 1 mod n)")
    for k in fields:
        print(f"  K{k['id']}: {admissible_orders(k['defining_polynomial'])}")
    print("curve point counts N (m=1,2)")
    for c in curves:
        for p in [13, 17, 29, 37]:
            if p not in bad_curve(c["coefficients"]):
                n1 = curve_count(c["coefficients"], p, 1)
                n2 = curve_count(c["coefficients"], p, 2) if p <= 17 else None
                print(f"  C{c['id']} p={p}: N1={n1} t1={p + 1 - n1} N2={n2} t2={None if n2 is None else p * p + 1 - n2}")
    print("surface character sums S (m=1)")
    for s in surfaces:
        for p in [13, 17, 37]:
            print(f"  X{s['id']} p={p}: S={surface_sum(s['cubic'], p)}")


def bad_curve(coeffs):
    d = discriminant(poly(coeffs).as_expr(), x)
    return sorted(set(factorint(2 * d)))


if __name__ == "__main__":
    main()
