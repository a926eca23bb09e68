"""The group algebra of S_n with exact coefficients, and its polynomial
extension in a grading variable X.

Scalars are whatever ``q`` is: ``QRational`` when working symbolically,
``Fraction`` at a specialized rational q.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import gmpy2

from . import linalg
from .permutation import Permutation, all_permutations, compose, inverse, perm_index
from .scalar import QRational, to_text


class SingularSpecializationError(ValueError):
    """q was specialized to a value where the algebra element is not invertible."""


def symbolic_q() -> QRational:
    return QRational.q()


def resolve_q(q) -> QRational | Fraction:
    """``None`` means symbolic; ints and fractions are specialized values."""
    if q is None:
        return symbolic_q()
    if isinstance(q, QRational):
        return q
    if isinstance(q, (int, Fraction)):
        return Fraction(q)
    raise TypeError(f"q must be None, an int or a Fraction, got {type(q).__name__}")


def is_symbolic(q) -> bool:
    return q is None or isinstance(q, QRational)


def require_invertible(q) -> None:
    # over the rationals only q = 1 and q = -1 are roots of some 1 - q^(k^2+k)
    if not is_symbolic(q) and Fraction(q) in (1, -1):
        raise SingularSpecializationError(f"q = {q} is a root of Delta_n")


@lru_cache(maxsize=None)
def mult_table(n: int) -> tuple[tuple[int, ...], ...]:
    """``table[i][j]`` is the lex index of ``perms[i] * perms[j]``."""
    perms = all_permutations(n)
    idx = perm_index(n)
    return tuple(tuple(idx[compose(a, b)] for b in perms) for a in perms)


class GroupAlgebraElement:
    """Finitely supported map S_n -> scalar; zero coefficients are dropped."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Permutation, object] | None = None):
        self.n = n
        clean = {}
        for p, c in (terms or {}).items():
            if p.n != n:
                raise ValueError(f"permutation {p} does not lie in S_{n}")
            if c:
                clean[p] = c
        self._terms = clean

    @classmethod
    def identity(cls, n: int) -> "GroupAlgebraElement":
        return cls(n, {Permutation.identity(n): 1})

    @classmethod
    def basis(cls, p: Permutation, coeff=1) -> "GroupAlgebraElement":
        return cls(p.n, {p: coeff})

    @property
    def terms(self) -> dict[Permutation, object]:
        return dict(self._terms)

    def coefficient(self, p: Permutation):
        return self._terms.get(p, 0)

    def support(self) -> list[Permutation]:
        return sorted(self._terms)

    def _check(self, other: "GroupAlgebraElement") -> None:
        if self.n != other.n:
            raise ValueError(f"degree mismatch: S_{self.n} vs S_{other.n}")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) + c
        return GroupAlgebraElement(self.n, out)

    def __neg__(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.n, {p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def scale(self, c) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.n, {p: c * v for p, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def evaluate(self, q0) -> "GroupAlgebraElement":
        from .scalar import evaluate
        return GroupAlgebraElement(self.n, {p: evaluate(c, q0) for p, c in self._terms.items()})

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"perm": list(p.images), "coeff": to_text(self._terms[p])}
                for p in self.support()
            ],
        }

    def __repr__(self) -> str:
        body = " + ".join(f"({to_text(self._terms[p])})*{p}" for p in self.support())
        return f"GroupAlgebraElement(n={self.n}: {body or '0'})"


def multiply(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Convolution: the coefficient of r is the sum of a(s) b(t) over s * t = r."""
    a._check(b)
    n = a.n
    perms = all_permutations(n)
    idx = perm_index(n)
    table = mult_table(n)
    acc: dict[int, object] = {}
    b_items = [(idx[t], c) for t, c in b._terms.items()]
    for s, x in a._terms.items():
        row = table[idx[s]]
        for j, y in b_items:
            k = row[j]
            acc[k] = acc.get(k, 0) + x * y
    return GroupAlgebraElement(n, {perms[k]: c for k, c in acc.items()})


def alpha(n: int, q=None) -> GroupAlgebraElement:
    """The element sum over r of q^I(r) r."""
    if n < 1:
        raise ValueError("alpha needs n >= 1")
    qq = resolve_q(q)
    return GroupAlgebraElement(n, {p: qq ** p.inversions for p in all_permutations(n)})


@lru_cache(maxsize=None)
def left_regular_exponents(n: int) -> tuple[tuple[int, ...], ...]:
    """``E[i][j] = I(perms[i] * perms[j]^-1)``: alpha * perms[j] has q^E[i][j] on perms[i]."""
    perms = all_permutations(n)
    invs = [inverse(s) for s in perms]
    return tuple(tuple(compose(p, si).inversions for si in invs) for p in perms)


def alpha_inverse(n: int, q=None, allow_slow: bool = False) -> GroupAlgebraElement:
    """Inverse of alpha_n, found by solving (left multiplication by alpha) x = e.

    Symbolic q is the default up to n = 4; larger symbolic runs need
    ``allow_slow=True``.
    """
    if n < 1:
        raise ValueError("alpha_inverse needs n >= 1")
    require_invertible(q)
    qq = resolve_q(q)
    perms = all_permutations(n)
    E = left_regular_exponents(n)
    N = len(perms)
    rhs_index = perm_index(n)[Permutation.identity(n)]
    if is_symbolic(qq):
        if n >= 5 and not allow_slow:
            raise ValueError("symbolic alpha_inverse for n >= 5 is slow; pass allow_slow=True "
                             "or specialize q")
        return GroupAlgebraElement(n, dict(zip(perms, _symbolic_solve_column(E, rhs_index))))
    a, b = qq.numerator, qq.denominator
    top = n * (n - 1) // 2
    M = [[gmpy2.mpz(a) ** e * gmpy2.mpz(b) ** (top - e) for e in row] for row in E]
    rhs = [[gmpy2.mpz(b) ** top if i == rhs_index else gmpy2.mpz(0)] for i in range(N)]
    try:
        d, X = linalg.fraction_free_solve(M, rhs)
    except ZeroDivisionError as exc:
        raise SingularSpecializationError(f"alpha_{n} is singular at q = {qq}") from exc
    return GroupAlgebraElement(n, {p: Fraction(int(X[i][0]), int(d)) for i, p in enumerate(perms)})


def _symbolic_solve_column(E, rhs_index: int) -> list[QRational]:
    """Solve M x = e_rhs for the 0/1-coefficient monomial matrix q^E exactly over Q(q)."""
    N = len(E)
    nbytes = linalg.packing_bytes(N)
    shift = 8 * nbytes
    M = [[gmpy2.mpz(1) << (shift * e) for e in row] for row in E]
    rhs = [[gmpy2.mpz(1 if i == rhs_index else 0)] for i in range(N)]
    d, X = linalg.fraction_free_solve(M, rhs)
    det = linalg.unpack_poly(d, nbytes)
    return [QRational(linalg.unpack_poly(X[i][0], nbytes), det) for i in range(N)]


# --------------------------------------------------------------------------
# C[X][S_n]
# --------------------------------------------------------------------------

class XGroupPolynomial:
    """Finitely supported map (permutation, X-degree) -> scalar.

    The coefficient c_i(q, p) of the energy operator lives at ``(p, i - 1)``.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[Permutation, int], object] | None = None):
        self.n = n
        clean = {}
        for (p, d), c in (terms or {}).items():
            if p.n != n:
                raise ValueError(f"permutation {p} does not lie in S_{n}")
            if not 0 <= d <= max(n - 1, 0):
                raise ValueError(f"X-degree {d} outside 0..{n - 1}")
            if c:
                clean[(p, d)] = c
        self._terms = clean

    @classmethod
    def from_group_element(cls, g: GroupAlgebraElement, degree: int = 0) -> "XGroupPolynomial":
        return cls(g.n, {(p, degree): c for p, c in g.terms.items()})

    @property
    def terms(self) -> dict[tuple[Permutation, int], object]:
        return dict(self._terms)

    def coefficient(self, p: Permutation, degree: int):
        return self._terms.get((p, degree), 0)

    def c(self, i: int, p: Permutation):
        """c_i(q, p), i.e. the coefficient of X^(i-1) p."""
        return self._terms.get((p, i - 1), 0)

    def keys(self) -> list[tuple[Permutation, int]]:
        return sorted(self._terms, key=lambda k: (k[0].images, k[1]))

    def by_permutation(self, p: Permutation) -> dict[int, object]:
        return {d: c for (r, d), c in self._terms.items() if r == p}

    def __add__(self, other: "XGroupPolynomial") -> "XGroupPolynomial":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return XGroupPolynomial(self.n, out)

    def __sub__(self, other: "XGroupPolynomial") -> "XGroupPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "XGroupPolynomial":
        return XGroupPolynomial(self.n, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            other = XGroupPolynomial.from_group_element(other)
        if isinstance(other, XGroupPolynomial):
            return x_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return x_multiply(XGroupPolynomial.from_group_element(other), self)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, XGroupPolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def evaluate(self, q0) -> "XGroupPolynomial":
        from .scalar import evaluate
        return XGroupPolynomial(self.n, {k: evaluate(c, q0) for k, c in self._terms.items()})

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coeffs": [
                {"perm": list(p.images), "i": d + 1, "value": to_text(self._terms[(p, d)])}
                for p, d in self.keys()
            ],
        }

    def __repr__(self) -> str:
        body = " + ".join(f"({to_text(self._terms[k])})*X^{k[1]}*{k[0]}" for k in self.keys())
        return f"XGroupPolynomial(n={self.n}: {body or '0'})"


def x_multiply(a: XGroupPolynomial, b: XGroupPolynomial) -> XGroupPolynomial:
    if a.n != b.n:
        raise ValueError("degree mismatch")
    n = a.n
    perms = all_permutations(n)
    idx = perm_index(n)
    table = mult_table(n)
    acc: dict[tuple[int, int], object] = {}
    b_items = [(idx[t], e, c) for (t, e), c in b._terms.items()]
    for (s, d), x in a._terms.items():
        row = table[idx[s]]
        for j, e, y in b_items:
            key = (row[j], d + e)
            acc[key] = acc.get(key, 0) + x * y
    return XGroupPolynomial(n, {(perms[k], d): c for (k, d), c in acc.items()})
