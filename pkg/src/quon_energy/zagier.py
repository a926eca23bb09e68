"""The Gram matrix A_n(q)(p, s) = q^I(s^-1 p) of n-particle states, its
determinant, the closed-form product for that determinant, Delta_n, the exact
inverse and the Delta_n-integrality check for the inverse.

Rows and columns follow the lexicographic order of S_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import gmpy2
import numpy as np

from . import linalg
from .group_algebra import (
    SingularSpecializationError,
    is_symbolic,
    require_invertible,
)
from .permutation import Permutation, all_permutations, perm_index
from .scalar import QPolynomial, QRational

MAX_N = 6


@lru_cache(maxsize=None)
def exponent_table(n: int) -> np.ndarray:
    """``E[i, j] = I(perms[j]^-1 * perms[i])`` as a read-only int array."""
    perms = np.array([p.images for p in all_permutations(n)], dtype=np.int64).reshape(-1, n)
    N = perms.shape[0]
    inv = np.empty_like(perms)
    rows = np.arange(N)[:, None]
    inv[rows, perms - 1] = np.arange(1, n + 1)[None, :]
    # comp[i, j, k] = s_j^-1(p_i(k))
    comp = inv[np.arange(N)[None, :, None], (perms - 1)[:, None, :]]
    E = np.zeros((N, N), dtype=np.int64)
    for a in range(n):
        for b in range(a + 1, n):
            E += comp[:, :, a] > comp[:, :, b]
    E.setflags(write=False)
    return E


@dataclass(frozen=True)
class ZagierMatrix:
    """A_n at symbolic q (QPolynomial entries) or at a rational q (Fraction entries)."""

    n: int
    q: Fraction | None = None
    entries: list = field(repr=False, compare=False, default=None)

    @property
    def size(self) -> int:
        return math.factorial(self.n)

    @property
    def symbolic(self) -> bool:
        return self.q is None

    @property
    def exponents(self) -> np.ndarray:
        return exponent_table(self.n)

    @property
    def permutations(self) -> tuple[Permutation, ...]:
        return all_permutations(self.n)

    def entry(self, p: Permutation, s: Permutation):
        idx = perm_index(self.n)
        return self.entries[idx[p]][idx[s]]

    def to_json(self) -> dict:
        from .scalar import to_text
        return {
            "n": self.n,
            "order": "lex",
            "q": "symbolic" if self.symbolic else str(self.q),
            "entries": [[to_text(x) for x in row] for row in self.entries],
        }


def build(n: int, q=None) -> ZagierMatrix:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"build supports 1 <= n <= {MAX_N}, got {n}")
    E = exponent_table(n).tolist()
    top = n * (n - 1) // 2
    if q is None:
        mono = [QPolynomial.monomial(m) for m in range(top + 1)]
    else:
        q = Fraction(q)
        mono = [q ** m for m in range(top + 1)]
    entries = [[mono[e] for e in row] for row in E]
    return ZagierMatrix(n, None if q is None else Fraction(q), entries)


def _scaled_integer_matrix(n: int, q0: Fraction):
    """(M, top) with M = b^top * A_n(a/b) as an integer matrix."""
    a, b = gmpy2.mpz(q0.numerator), gmpy2.mpz(q0.denominator)
    top = n * (n - 1) // 2
    powers = [a ** m * b ** (top - m) for m in range(top + 1)]
    return [[powers[e] for e in row] for row in exponent_table(n).tolist()], top


def determinant(m: ZagierMatrix, method: str = "auto"):
    """Exact det A_n.

    Symbolic: Bareiss over Z[q], either directly on polynomial entries
    (``method="poly"``) or on Kronecker-packed integers (``"packed"``, the
    default).  Specialized: Bareiss on the scaled integer matrix
    (``"bareiss"``, default for n <= 5) or the multimodular route
    (``"modular"``, default for n = 6).
    """
    n = m.n
    if m.symbolic:
        if method == "auto":
            method = "packed"
        if method == "poly":
            return linalg.bareiss_det(m.entries, linalg.poly_divexact, symmetric=True,
                                      one=QPolynomial.constant(1))
        if method == "packed":
            if n > 5:
                raise ValueError("symbolic determinant is limited to n <= 5")
            N = m.size
            nbytes = linalg.packing_bytes(N)
            E = exponent_table(n).tolist()
            shift = 8 * nbytes
            M = [[gmpy2.mpz(1) << (shift * e) for e in row] for row in E]
            return linalg.unpack_poly(linalg.bareiss_det(M, symmetric=True), nbytes)
        raise ValueError(f"unknown symbolic determinant method {method!r}")
    q0 = m.q
    if method == "auto":
        method = "bareiss" if n <= 5 else "modular"
    if method == "bareiss":
        M, top = _scaled_integer_matrix(n, q0)
        d = linalg.bareiss_det(M, symmetric=True)
        return Fraction(int(d), q0.denominator ** (top * m.size))
    if method == "modular":
        return _det_modular(n, q0)
    raise ValueError(f"unknown specialized determinant method {method!r}")


def _det_modular(n: int, q0: Fraction) -> Fraction:
    """det A_n(a/b) via residues of det(b^top A_n(a/b)) modulo many primes."""
    E = exponent_table(n)
    N = E.shape[0]
    top = n * (n - 1) // 2
    a, b = q0.numerator, q0.denominator
    # every row holds the same multiset of entries q0^I, so Hadamard's bound is
    # (sum_r q0^(2 I(r)))^(N/2) for A and b^(top N) times that for the scaled matrix
    row_norm_sq = sum(Fraction(a * a, b * b) ** p.inversions for p in all_permutations(n))
    bound_bits = (top * N) * math.log2(b) + (N / 2) * math.log2(row_norm_sq)
    bound_bits = int(math.ceil(bound_bits)) + 16

    def residue(p: int) -> int:
        powers = np.array([pow(a, k, p) * pow(b, top - k, p) % p for k in range(top + 1)],
                          dtype=np.int64)
        return linalg.det_mod_p(powers[E], p)

    value = linalg.crt_reconstruct(residue, bound_bits, N, skip=lambda p: b % p == 0)
    return Fraction(value, b ** (top * N))


def zagier_formula(n: int) -> QPolynomial:
    """Product over k = 1..n of (1 - q^(k^2+k))^(n!(n-k)/(k^2+k)), expanded."""
    if n < 1:
        raise ValueError("n >= 1 required")
    result = QPolynomial.constant(1)
    for k in range(1, n + 1):
        num = math.factorial(n) * (n - k)
        e, r = divmod(num, k * k + k)
        assert r == 0, f"non-integral exponent at n={n}, k={k}"
        if e:
            result = result * (1 - QPolynomial.monomial(k * k + k)) ** e
    return result


def delta(n: int) -> QPolynomial:
    """(1 - q^2)(1 - q^6)...(1 - q^(n^2+n))."""
    if n < 1:
        raise ValueError("n >= 1 required")
    result = QPolynomial.constant(1)
    for k in range(1, n + 1):
        result = result * (1 - QPolynomial.monomial(k * k + k))
    return result


@lru_cache(maxsize=None)
def adjugate(n: int) -> tuple[QPolynomial, tuple[tuple[QPolynomial, ...], ...]]:
    """(det A_n, adj A_n) over Z[q] by fraction-free Gauss-Jordan on packed integers."""
    E = exponent_table(n).tolist()
    N = len(E)
    nbytes = linalg.packing_bytes(N)
    shift = 8 * nbytes
    M = [[gmpy2.mpz(1) << (shift * e) for e in row] for row in E]
    eye = [[gmpy2.mpz(int(i == j)) for j in range(N)] for i in range(N)]
    d, X = linalg.fraction_free_solve(M, eye)
    det = linalg.unpack_poly(d, nbytes)
    adj = tuple(tuple(linalg.unpack_poly(x, nbytes) for x in row) for row in X)
    return det, adj


@lru_cache(maxsize=None)
def _symbolic_inverse(n: int) -> tuple[tuple[QRational, ...], ...]:
    det, adj = adjugate(n)
    dn = delta(n)
    rows = []
    for row in adj:
        out = []
        for x in row:
            # Delta_n * adj / det is usually a polynomial, which makes the
            # reduction cheap; otherwise reduce against det directly
            try:
                out.append(QRational((x * dn).exact_div(det), dn))
            except ArithmeticError:
                out.append(QRational(x, det))
        rows.append(tuple(out))
    return tuple(rows)


def invert(m: ZagierMatrix, allow_slow: bool = False) -> list[list]:
    """Exact A_n^-1 (QRational entries if symbolic, Fraction otherwise)."""
    n = m.n
    if m.symbolic:
        if n >= 5 and not allow_slow:
            raise ValueError("symbolic inverse for n >= 5 is slow; pass allow_slow=True "
                             "or specialize q")
        return [list(row) for row in _symbolic_inverse(n)]
    require_invertible(m.q)
    if n > 5:
        raise ValueError("specialized inverse is limited to n <= 5")
    N = m.size
    return inverse_columns(n, m.q, list(range(N)))


def inverse_columns(n: int, q, columns: list[int]) -> list[list]:
    """Selected columns of A_n^-1, returned as full rows restricted to those columns.

    ``result[i][c]`` is ``A_n^-1[i, columns[c]]``.
    """
    if is_symbolic(q):
        inv = _symbolic_inverse(n)
        return [[row[j] for j in columns] for row in inv]
    q0 = Fraction(q)
    require_invertible(q0)
    M, top = _scaled_integer_matrix(n, q0)
    N = len(M)
    scale = gmpy2.mpz(q0.denominator) ** top
    rhs = [[scale if i == j else gmpy2.mpz(0) for j in columns] for i in range(N)]
    try:
        d, X = linalg.fraction_free_solve(M, rhs)
    except ZeroDivisionError as exc:
        raise SingularSpecializationError(f"A_{n} is singular at q = {q0}") from exc
    d = int(d)
    return [[Fraction(int(x), d) for x in row] for row in X]


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

@dataclass
class IntegralityReport:
    n: int
    holds: bool
    entries: list[dict]
    violations: list[dict]

    def to_json(self) -> dict:
        return {"n": self.n, "holds": self.holds, "mode": "symbolic", "q": "symbolic",
                "entries": self.entries, "violations": self.violations}


def check_integrality(n: int, allow_slow: bool = False) -> IntegralityReport:
    """Multiply every entry of A_n^-1 by Delta_n and test for integer polynomials."""
    inv = invert(build(n), allow_slow=allow_slow)
    dn = QRational(delta(n))
    perms = all_permutations(n)
    entries, violations = [], []
    for i, row in enumerate(inv):
        for j, x in enumerate(row):
            y = dn * x
            ok = y.is_polynomial() and y.num.is_integral()
            rec = {"row": list(perms[i].images), "col": list(perms[j].images),
                   "value": str(y), "integral": ok}
            entries.append(rec)
            if not ok:
                violations.append(rec)
    return IntegralityReport(n, not violations, entries, violations)


def positivity_probe(n: int, q0) -> bool:
    """True iff every leading principal minor of A_n(q0) is positive, for -1 < q0 < 1."""
    q0 = Fraction(q0)
    if not -1 < q0 < 1:
        raise ValueError(f"positivity probe needs -1 < q0 < 1, got {q0}")
    if n > 5:
        raise ValueError("positivity probe is limited to n <= 5")
    M, _ = _scaled_integer_matrix(n, q0)
    # scaling by a positive power of b keeps the signs of the minors
    minors = linalg.leading_minors_symmetric(M)
    return len(minors) == len(M) and all(x > 0 for x in minors)
