"""Regenerate oracle_values.py with sympy, independently of the package.

Run from the repository root:  python3 tests/make_oracles.py > tests/oracle_values.py
Nothing in here imports quon_energy.
"""

import itertools
from fractions import Fraction

import sympy as sp

q = sp.Symbol("q")


def perms(n):
    return list(itertools.permutations(range(1, n + 1)))


def inv_count(p):
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def comp(a, b):
    return tuple(a[j - 1] for j in b)


def pinv(p):
    out = [0] * len(p)
    for i, v in enumerate(p, 1):
        out[v - 1] = i
    return tuple(out)


def gram(n):
    P = perms(n)
    return sp.Matrix(len(P), len(P), lambda i, j: q ** inv_count(comp(pinv(P[j]), P[i])))


def coeffs(p):
    return [int(c) for c in reversed(sp.Poly(sp.expand(p), q).all_coeffs())]


def table(n, q0):
    """c_i(q0, p) from the generating product, by sympy linear algebra."""
    P = perms(n)
    e = tuple(range(1, n + 1))
    # left multiplication by alpha as a matrix, then solve for alpha^-1
    L = sp.Matrix(len(P), len(P), lambda i, j: sp.Rational(q0) ** inv_count(comp(P[i], pinv(P[j]))))
    rhs = sp.Matrix([1 if p == e else 0 for p in P])
    g = L.LUsolve(rhs)
    elem = {(p, 0): g[i] for i, p in enumerate(P) if g[i] != 0}
    for j in range(2, n + 1):
        t = (j,) + tuple(range(1, j)) + tuple(range(j + 1, n + 1))
        out = {}
        for (p, d), c in elem.items():
            for (f, fd), fc in (((e, 0), 1), ((t, 1), -sp.Rational(q0) ** (j - 1))):
                key = (comp(p, f), d + fd)
                out[key] = out.get(key, 0) + c * fc
        elem = {k: v for k, v in out.items() if v != 0}
    return {(p, d + 1): Fraction(int(sp.fraction(v)[0]), int(sp.fraction(v)[1]))
            for (p, d), v in sorted(elem.items())}


def main():
    print('"""Frozen oracle values, generated by tests/make_oracles.py with sympy."""')
    print()
    print("from fractions import Fraction")
    print()
    for n in (2, 3):
        d = sp.factor(gram(n).det())
        print(f"# {d}")
        print(f"DET_A{n} = {coeffs(d)}")
    A2inv = sp.simplify(gram(2).inv())
    print(f"# A_2^-1 = {A2inv.tolist()}")
    print("A2_INV_AT_HALF = " + repr([[str(x.subs(q, sp.Rational(1, 2))) for x in row]
                                        for row in A2inv.tolist()]))
    delta3 = sp.expand((1 - q**2) * (1 - q**6) * (1 - q**12))
    print(f"DELTA3 = {coeffs(delta3)}")
    for n, q0 in ((2, Fraction(1, 2)), (3, Fraction(1, 3)), (3, Fraction(-1, 2))):
        name = f"COEFFS_N{n}_Q{q0.numerator}_{q0.denominator}".replace("-", "M")
        print(f"{name} = {{")
        for (p, i), v in table(n, q0).items():
            print(f"    ({p}, {i}): Fraction({v.numerator}, {v.denominator}),")
        print("}")
    # leading principal minors of A_3(1/2)
    M = gram(3).subs(q, sp.Rational(1, 2))
    minors = [str(M[:k, :k].det()) for k in range(1, 7)]
    print(f"A3_HALF_MINORS = {minors}")


if __name__ == "__main__":
    main()
