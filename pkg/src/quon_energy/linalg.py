"""Exact elimination kernels.

* Bareiss fraction-free elimination for determinants over any integral
  domain whose elements support ``*``, ``-`` and an exact division.
* Fraction-free Gauss-Jordan returning ``det(M)`` and ``det(M) * M^-1 B``
  without ever leaving the domain (the division by the determinant is left
  to the caller).
* Kronecker packing of polynomial matrices into integer matrices, so that
  Bareiss over Z[q] runs on plain big integers.
* A multimodular determinant (float64 BLAS LU modulo word-size primes plus
  Chinese remaindering) for integer matrices too large for Python-level
  elimination.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import gmpy2
import numpy as np

from .scalar import QPolynomial, pack, unpack

Divide = Callable[[object, object], object]


def int_divexact(a, b):
    return gmpy2.divexact(a, b)


def poly_divexact(a: QPolynomial, b: QPolynomial) -> QPolynomial:
    return a.exact_div(b)


def _is_zero(x) -> bool:
    return not x


def bareiss_det(matrix: Sequence[Sequence], divide: Divide = int_divexact,
                symmetric: bool = False, one=1):
    """Determinant by Bareiss elimination.

    After step k every remaining entry is a (k+2)-minor of the input, so all
    divisions are exact.  With ``symmetric=True`` only the upper triangle is
    updated, which is valid while no row swap is needed; the routine restarts
    in general mode if a zero pivot turns up.
    """
    n = len(matrix)
    if n == 0:
        return one
    if symmetric:
        det = _bareiss_symmetric(matrix, divide)
        if det is not None:
            return det
    M = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(M[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(M[r][k]):
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0 * one
        piv = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            a = ri[k]
            if prev is None:
                M[i] = [None] * (k + 1) + [piv * ri[j] - a * rk[j] for j in range(k + 1, n)]
            else:
                M[i] = [None] * (k + 1) + [
                    divide(piv * ri[j] - a * rk[j], prev) for j in range(k + 1, n)
                ]
        prev = piv
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def _bareiss_symmetric(matrix, divide):
    n = len(matrix)
    # row i holds columns i..n-1
    U = [list(matrix[i][i:]) for i in range(n)]
    prev = None
    for k in range(n - 1):
        rk = U[k]
        piv = rk[0]
        if _is_zero(piv):
            return None
        for i in range(k + 1, n):
            a = rk[i - k]
            ri = U[i]
            # ri holds columns i..n-1 of the step-(k-1) matrix, ri[0] at column i
            off = i - k
            if prev is None:
                U[i] = [piv * ri[j] - a * rk[j + off] for j in range(n - i)]
            else:
                U[i] = [divide(piv * ri[j] - a * rk[j + off], prev) for j in range(n - i)]
        U[k] = rk
        prev = piv
    return U[n - 1][0]


def leading_minors_symmetric(matrix: Sequence[Sequence], divide: Divide = int_divexact) -> list:
    """All leading principal minors of a symmetric matrix (Bareiss pivots).

    Stops early (returning the minors found so far plus a zero) when one
    vanishes, since later pivots are then undefined without pivoting.
    """
    n = len(matrix)
    U = [list(matrix[i][i:]) for i in range(n)]
    minors = []
    prev = None
    for k in range(n):
        rk = U[k]
        piv = rk[0]
        minors.append(piv)
        if _is_zero(piv):
            return minors
        for i in range(k + 1, n):
            a = rk[i - k]
            ri = U[i]
            off = i - k
            if prev is None:
                U[i] = [piv * ri[j] - a * rk[j + off] for j in range(n - i)]
            else:
                U[i] = [divide(piv * ri[j] - a * rk[j + off], prev) for j in range(n - i)]
        prev = piv
    return minors


def fraction_free_solve(matrix: Sequence[Sequence], rhs: Sequence[Sequence],
                        divide: Divide = int_divexact, one=1):
    """Fraction-free Gauss-Jordan on [M | B].

    Returns ``(d, X)`` with ``d = det(M)`` and ``X = d * M^-1 B`` (rows of X
    indexed like rows of M), all computed inside the domain.  Raises
    ``ZeroDivisionError`` when M is singular.
    """
    n = len(matrix)
    m = len(rhs[0]) if rhs else 0
    A = [list(matrix[i]) + list(rhs[i]) for i in range(n)]
    width = n + m
    sign = 1
    prev = None
    for k in range(n):
        if _is_zero(A[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(A[r][k]):
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                raise ZeroDivisionError("singular matrix")
        piv = A[k][k]
        rk = A[k]
        cols = range(k + 1, width)
        for i in range(n):
            if i == k:
                continue
            ri = A[i]
            a = ri[k]
            if prev is None:
                new = [piv * ri[j] - a * rk[j] for j in cols]
                diag = piv * ri[i] if i < k else None
            else:
                new = [divide(piv * ri[j] - a * rk[j], prev) for j in cols]
                diag = divide(piv * ri[i], prev) if i < k else None
            row = ri[: k] + [0 * one] + new
            if i < k:
                row[i] = diag
            A[i] = row
        prev = piv
    d = A[n - 1][n - 1]
    X = [row[n:] for row in A]
    if sign < 0:
        d = -d
        X = [[-x for x in row] for row in X]
    return d, X


# --------------------------------------------------------------------------
# Kronecker packing for polynomial matrices with integer coefficients
# --------------------------------------------------------------------------

def minor_coefficient_bits(size: int, entry_bound: int = 1, row_terms: int | None = None) -> int:
    """Bits bounding every coefficient of every minor of order <= ``size``.

    For a minor whose entries are polynomials with at most ``row_terms``
    nonzero coefficient mass per row (sum of absolute coefficients of the
    row's entries bounded by ``entry_bound`` each), Hadamard's inequality on
    the unit circle bounds the coefficients by ``(sqrt(size) * entry_bound) ** size``.
    """
    if size <= 0:
        return 1
    terms = row_terms if row_terms is not None else size
    log2 = size * (0.5 * math.log2(terms) + math.log2(max(entry_bound, 1)))
    return int(math.ceil(log2)) + 2


def pack_matrix(matrix: Sequence[Sequence[QPolynomial]], nbytes: int) -> list[list]:
    return [[gmpy2.mpz(pack(list(e.integer_coefficients), nbytes)) for e in row] for row in matrix]


def unpack_poly(value, nbytes: int) -> QPolynomial:
    return QPolynomial._from_int(unpack(int(value), nbytes))


def packing_bytes(size: int, entry_bound: int = 1) -> int:
    bits = minor_coefficient_bits(size, entry_bound) + 1
    return bits // 8 + 1


# --------------------------------------------------------------------------
# determinants modulo primes
# --------------------------------------------------------------------------

_LEAF = 16


def _mod_inplace(C: np.ndarray, p: float) -> np.ndarray:
    # exact for integral float64 |C| < 2**53 with p < 2**26
    t = C * (1.0 / p)
    np.floor(t, out=t)
    t *= p
    np.subtract(C, t, out=C)
    C[C < 0] += p
    C[C >= p] -= p
    return C


def _trsm_unit_lower(L: np.ndarray, B: np.ndarray, p: float) -> None:
    n = L.shape[0]
    if n <= _LEAF:
        for c in range(n - 1):
            B[c + 1:] = _mod_inplace(B[c + 1:] - np.outer(L[c + 1:, c], B[c]), p)
        return
    h = n // 2
    _trsm_unit_lower(L[:h, :h], B[:h], p)
    B[h:] = _mod_inplace(B[h:] - L[h:, :h] @ B[:h], p)
    _trsm_unit_lower(L[h:, h:], B[h:], p)


def _lu_columns(A: np.ndarray, c0: int, c1: int, p: float, state: list) -> None:
    if c1 - c0 <= _LEAF:
        ip = int(p)
        for c in range(c0, c1):
            nz = np.flatnonzero(A[c:, c])
            if nz.size == 0:
                raise ZeroDivisionError
            r = c + int(nz[0])
            if r != c:
                A[[c, r]] = A[[r, c]]
                state[0] = -state[0]
            inv = pow(int(A[c, c]), -1, ip)
            A[c + 1:, c] = _mod_inplace(A[c + 1:, c] * inv, p)
            if c + 1 < c1:
                A[c + 1:, c + 1:c1] = _mod_inplace(
                    A[c + 1:, c + 1:c1] - np.outer(A[c + 1:, c], A[c, c + 1:c1]), p
                )
        return
    h = (c0 + c1) // 2
    _lu_columns(A, c0, h, p, state)
    _trsm_unit_lower(A[c0:h, c0:h], A[c0:h, h:c1], p)
    A[h:, h:c1] = _mod_inplace(A[h:, h:c1] - A[h:, c0:h] @ A[c0:h, h:c1], p)
    _lu_columns(A, h, c1, p, state)


def det_mod_p(matrix: np.ndarray, p: int) -> int:
    """Determinant of an integer matrix modulo a prime p below :func:`max_prime`."""
    A = np.mod(np.asarray(matrix, dtype=np.int64), p).astype(np.float64)
    n = A.shape[0]
    if n == 0:
        return 1 % p
    if p >= max_prime(n):
        raise ValueError(f"prime {p} too large for exact float64 elimination at size {n}")
    state = [1]
    try:
        _lu_columns(A, 0, n, float(p), state)
    except ZeroDivisionError:
        return 0
    d = state[0] % p
    for x in np.diag(A):
        d = d * int(x) % p
    return d


def max_prime(n: int) -> int:
    # products of two residues summed over at most n/2+1 terms must stay below 2**53
    return int(math.isqrt((1 << 53) // (n // 2 + 2)))


def primes_below(bound: int):
    p = bound
    while True:
        p = int(gmpy2.prev_prime(p))
        yield p


def crt_reconstruct(residue: Callable[[int], int | None], bound_bits: int, size: int,
                    skip: Callable[[int], bool] = lambda p: False) -> int:
    """Recover an integer with ``|value| < 2**bound_bits`` from its residues.

    ``residue(p)`` returns the value modulo p; primes for which ``skip(p)`` is
    true are not used.
    """
    modulus, value = 1, 0
    for p in primes_below(max_prime(size)):
        if modulus.bit_length() > bound_bits + 1:
            break
        if skip(p):
            continue
        r = residue(p)
        # Garner step: value' = value + modulus * t with value' = r (mod p)
        t = (r - value) * pow(modulus, -1, p) % p
        value += modulus * t
        modulus *= p
    if value > modulus // 2:
        value -= modulus
    return value
