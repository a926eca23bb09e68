"""Exact scalars: dense polynomials in q over the rationals and reduced
rational functions in q.

Both types are immutable and hashable.  Integers and ``Fraction`` values mix
freely with them, so algorithms written against ``q`` work unchanged whether
``q`` is the symbolic generator ``QRational.q()`` or a ``Fraction``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

# below this length schoolbook multiplication beats packing into one integer
_KRONECKER_CUTOFF = 24


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


# --------------------------------------------------------------------------
# integer coefficient helpers (tuples of ints, index = degree)
# --------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and not c[-1]:
        c.pop()
    return c


def _max_bits(c: Sequence[int]) -> int:
    return max((abs(x).bit_length() for x in c), default=0)


def pack(coeffs: Sequence[int], nbytes: int) -> int:
    """Kronecker substitution: the value of the polynomial at q = 2**(8*nbytes).

    Coefficients must satisfy ``abs(c) < 2**(8*nbytes - 1)`` for ``unpack`` to
    recover them.
    """
    pos = bytearray(nbytes * len(coeffs))
    neg = bytearray(nbytes * len(coeffs))
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * nbytes:(i + 1) * nbytes] = c.to_bytes(nbytes, "little")
        elif c < 0:
            neg[i * nbytes:(i + 1) * nbytes] = (-c).to_bytes(nbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def unpack(value: int, nbytes: int) -> list[int]:
    """Inverse of :func:`pack` using balanced base-2**(8*nbytes) digits."""
    if not value:
        return []
    count = (abs(value).bit_length() + 1) // (8 * nbytes) + 2
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    raw = (value + offset).to_bytes(nbytes * count, "little")
    digits = [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(count)
    ]
    return _trim(digits)


def _mul_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_CUTOFF:
        if len(a) < len(b):
            a, b = b, a
        res = [0] * (len(a) + len(b) - 1)
        for j, y in enumerate(b):
            if y:
                for i, x in enumerate(a):
                    res[i + j] += x * y
        return _trim(res)
    bits = _max_bits(a) + _max_bits(b) + min(len(a), len(b)).bit_length() + 1
    nbytes = bits // 8 + 1
    return unpack(pack(a, nbytes) * pack(b, nbytes), nbytes)


def _add_int(a: Sequence[int], sa: int, b: Sequence[int], sb: int) -> list[int]:
    """sa*a + sb*b for integer scalars sa, sb."""
    if len(a) < len(b):
        a, sa, b, sb = b, sb, a, sa
    res = [sa * x for x in a]
    for i, y in enumerate(b):
        res[i] += sb * y
    return _trim(res)


def _content(c: Sequence[int]) -> int:
    return math.gcd(*c) if c else 0


def _primitive(c: Sequence[int]) -> list[int]:
    """Divide out the content and make the leading coefficient positive."""
    if not c:
        return []
    g = _content(c)
    if c[-1] < 0:
        g = -g
    return [x // g for x in c]


def _prem(a: list[int], b: Sequence[int]) -> list[int]:
    """Remainder of a pseudo-division of a by b, up to a nonzero constant."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) > db and r:
        lr = r[-1]
        g = math.gcd(lr, lb)
        s, t = lb // g, lr // g
        shift = len(r) - 1 - db
        if s != 1:
            r = [s * x for x in r]
        for i, y in enumerate(b):
            r[shift + i] -= t * y
        r.pop()
        _trim(r)
        if r and len(r) > 64:
            # keep coefficient growth in check on long remainders
            g = _content(r)
            if g > 1:
                r = [x // g for x in r]
    return r


def _gcd_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        a, b = b, _primitive(_prem(a, b))
    return a


def _divexact_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Quotient a/b when b divides a in Z[q]; raises ArithmeticError otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    lb, db = b[-1], len(b) - 1
    if len(r) - 1 < db:
        if r:
            raise ArithmeticError("inexact polynomial division")
        return []
    quo = [0] * (len(r) - db)
    for k in range(len(quo) - 1, -1, -1):
        top = r[k + db]
        if top:
            c, rem = divmod(top, lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            quo[k] = c
            for i, y in enumerate(b):
                r[k + i] -= c * y
    if any(r[:db]):
        raise ArithmeticError("inexact polynomial division")
    return _trim(quo)


# --------------------------------------------------------------------------
# QPolynomial
# --------------------------------------------------------------------------

def _as_fraction(x: Rational) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class QPolynomial:
    """Dense univariate polynomial in q with exact rational coefficients.

    Stored as integer numerators over one positive common denominator with
    trailing zeros trimmed, so equal polynomials have equal representations.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coefficients: Iterable[Rational] = ()):
        fr = [_as_fraction(c) for c in coefficients]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        self._set([c.numerator * (den // c.denominator) for c in fr], den)

    def _set(self, num: list[int], den: int) -> None:
        _trim(num)
        if not num:
            den = 1
        else:
            g = math.gcd(den, *num)
            if g > 1:
                num = [x // g for x in num]
                den //= g
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _from_int(cls, num: list[int], den: int = 1) -> "QPolynomial":
        p = cls.__new__(cls)
        p._set(num, den)
        return p

    @classmethod
    def q(cls) -> "QPolynomial":
        return cls._from_int([0, 1])

    @classmethod
    def monomial(cls, degree: int, coefficient: Rational = 1) -> "QPolynomial":
        if degree < 0:
            raise ValueError("negative degree")
        c = _as_fraction(coefficient)
        return cls._from_int([0] * degree + [c.numerator], c.denominator)

    @classmethod
    def constant(cls, value: Rational) -> "QPolynomial":
        return cls.monomial(0, value)

    # -- inspection -------------------------------------------------------
    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def integer_coefficients(self) -> tuple[int, ...]:
        if self._den != 1:
            raise ValueError(f"{self} has non-integer coefficients")
        return self._num

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._num) - 1

    def is_zero(self) -> bool:
        return not self._num

    def is_integral(self) -> bool:
        return self._den == 1

    def is_constant(self) -> bool:
        return len(self._num) <= 1

    def leading_coefficient(self) -> Fraction:
        return Fraction(self._num[-1], self._den) if self._num else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return Fraction(self._num[k], self._den) if 0 <= k < len(self._num) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._num)

    def __len__(self) -> int:
        return len(self._num)

    # -- arithmetic -------------------------------------------------------
    @classmethod
    def _coerce(cls, other) -> "QPolynomial | None":
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.constant(other)
        return None

    def __neg__(self) -> "QPolynomial":
        return QPolynomial._from_int([-x for x in self._num], self._den)

    def __pos__(self) -> "QPolynomial":
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return QPolynomial._from_int(_add_int(self._num, 1, o._num, 1), self._den)
        g = math.gcd(self._den, o._den)
        return QPolynomial._from_int(
            _add_int(self._num, o._den // g, o._num, self._den // g),
            self._den // g * o._den,
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QPolynomial._from_int(_mul_int(self._num, o._num), self._den * o._den)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPolynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = QPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other) -> tuple["QPolynomial", "QPolynomial"]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coefficients)
        b = o.coefficients
        db = len(b) - 1
        quo = [Fraction(0)] * max(len(r) - db, 0)
        for k in range(len(quo) - 1, -1, -1):
            c = r[k + db] / b[-1]
            quo[k] = c
            if c:
                for i, y in enumerate(b):
                    r[k + i] -= c * y
        return QPolynomial(quo), QPolynomial(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "QPolynomial | Rational") -> "QPolynomial":
        """Quotient over Q[q]; raises ArithmeticError if there is a remainder."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if len(o._num) == 1:
            c = Fraction(o._num[0], o._den)
            sign = 1 if c > 0 else -1
            return QPolynomial._from_int(
                [sign * x * c.denominator for x in self._num], self._den * abs(c.numerator)
            )
        # self = (A/da), o = (B/db) = (cB'/db) with B' primitive
        cb = _content(o._num) * (1 if o._num[-1] > 0 else -1)
        bp = [x // cb for x in o._num]
        ca = _content(self._num) or 1
        ap = [x // ca for x in self._num]
        quo = _divexact_int(ap, bp)
        # self/o = (ca/da) * (db/cb) * (ap/bp)
        scale = Fraction(ca * o._den, self._den * cb)
        return QPolynomial._from_int(
            [x * scale.numerator for x in quo], scale.denominator
        )

    def divides(self, other: "QPolynomial") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    # -- normal forms -----------------------------------------------------
    def primitive(self) -> tuple[Fraction, "QPolynomial"]:
        """Split into (c, p) with p integral, content 1, positive leading coefficient."""
        if not self._num:
            return Fraction(0), self
        pp = _primitive(self._num)
        c = Fraction(self._num[-1], self._den * pp[-1])
        return c, QPolynomial._from_int(pp)

    def evaluate(self, q0: Rational) -> Fraction:
        x = _as_fraction(q0)
        acc = Fraction(0)
        for c in reversed(self._num):
            acc = acc * x + c
        return acc / self._den

    __call__ = evaluate

    # -- comparison, hashing, rendering -----------------------------------
    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self) -> int:
        if self._hash is None:
            if len(self._num) <= 1:
                self._hash = hash(self[0])
            else:
                self._hash = hash((self._num, self._den))
        return self._hash

    def __str__(self) -> str:
        if not self._num:
            return "0"
        parts: list[str] = []
        for k, x in enumerate(self._num):
            if not x:
                continue
            c = Fraction(x, self._den)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            var = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not var:
                body = _format_rational(mag)
            elif mag == 1:
                body = var
            else:
                body = f"{_format_rational(mag)}*{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"QPolynomial({self})"


def poly_gcd(a: QPolynomial, b: QPolynomial) -> QPolynomial:
    """Greatest common divisor, normalized to content 1 and positive leading coefficient.

    ``poly_gcd(0, 0)`` is 0.
    """
    if a.is_zero():
        return b.primitive()[1]
    if b.is_zero():
        return a.primitive()[1]
    return QPolynomial._from_int(_gcd_int(a._num, b._num))


# --------------------------------------------------------------------------
# QRational
# --------------------------------------------------------------------------

class QRational:
    """Reduced rational function num/den in q.

    Canonical form: gcd(num, den) = 1 and den is an integer polynomial with
    content 1 and positive leading coefficient.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        n = QPolynomial._coerce(num) if not isinstance(num, QRational) else None
        d = QPolynomial._coerce(den) if not isinstance(den, QRational) else None
        if n is None or d is None:
            # QRational inputs: fall back to field division
            value = _coerce_rational(num) / _coerce_rational(den)
            self.num, self.den, self._hash = value.num, value.den, None
            return
        if d.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if n.is_zero():
            self.num, self.den = n, QPolynomial.constant(1)
        elif d.is_constant():
            self.num, self.den = n.exact_div(d), QPolynomial.constant(1)
        else:
            g = poly_gcd(n, d)
            if not g.is_constant():
                n, d = n.exact_div(g), d.exact_div(g)
            self._set_normalized(n, d)
            return
        self._hash = None

    def _set_normalized(self, n: QPolynomial, d: QPolynomial) -> None:
        """Install coprime n/d after making d primitive with positive leading term."""
        c, dp = d.primitive()
        self.num = n.exact_div(c) if c != 1 else n
        self.den = dp
        self._hash = None

    @classmethod
    def _coprime(cls, n: QPolynomial, d: QPolynomial) -> "QRational":
        r = cls.__new__(cls)
        if n.is_zero():
            r.num, r.den, r._hash = n, QPolynomial.constant(1), None
        else:
            r._set_normalized(n, d)
        return r

    @classmethod
    def q(cls) -> "QRational":
        return cls(QPolynomial.q())

    @property
    def numerator(self) -> QPolynomial:
        return self.num

    @property
    def denominator(self) -> QPolynomial:
        return self.den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "QRational":
        r = QRational.__new__(QRational)
        r.num, r.den, r._hash = -self.num, self.den, None
        return r

    def __pos__(self) -> "QRational":
        return self

    def __add__(self, other):
        o = _coerce_rational(other, strict=False)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            if self.den.is_constant():
                return QRational._coprime(self.num + o.num, self.den)
            return QRational(self.num + o.num, self.den)
        if self.den.is_constant():
            return QRational._coprime(o.num + self.num * o.den, o.den)
        if o.den.is_constant():
            return QRational._coprime(self.num + o.num * self.den, self.den)
        g = poly_gcd(self.den, o.den)
        d1 = self.den.exact_div(g)
        d2 = o.den.exact_div(g)
        num = self.num * d2 + o.num * d1
        if g.is_constant():
            # coprime denominators: the sum is already reduced
            return QRational._coprime(num, self.den * d2)
        return QRational(num, self.den * d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_rational(other, strict=False)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_rational(other, strict=False)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce_rational(other, strict=False)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return QRational()
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if not d2.is_constant():
            g = poly_gcd(n1, d2)
            if not g.is_constant():
                n1, d2 = n1.exact_div(g), d2.exact_div(g)
        if not d1.is_constant():
            g = poly_gcd(n2, d1)
            if not g.is_constant():
                n2, d1 = n2.exact_div(g), d1.exact_div(g)
        return QRational._coprime(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def reciprocal(self) -> "QRational":
        if self.num.is_zero():
            raise ZeroDivisionError("reciprocal of zero rational function")
        return QRational._coprime(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce_rational(other, strict=False)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = _coerce_rational(other, strict=False)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __pow__(self, k: int) -> "QRational":
        if not isinstance(k, int):
            raise TypeError("integer exponent required")
        if k < 0:
            return self.reciprocal() ** (-k)
        return QRational._coprime(self.num ** k, self.den ** k)

    def evaluate(self, q0: Rational) -> Fraction:
        d = self.den.evaluate(q0)
        if not d:
            raise PoleError(f"{self} has a pole at q = {q0}")
        return self.num.evaluate(q0) / d

    __call__ = evaluate

    # -- comparison, hashing, rendering -----------------------------------
    def __eq__(self, other) -> bool:
        o = _coerce_rational(other, strict=False)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self._hash is None:
            if self.den.is_constant():
                self._hash = hash(self.num)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"QRational({self})"


def _coerce_rational(x, strict: bool = True) -> QRational | None:
    if isinstance(x, QRational):
        return x
    if isinstance(x, (int, Fraction, QPolynomial)):
        r = QRational.__new__(QRational)
        r.num = QPolynomial._coerce(x)
        r.den = QPolynomial.constant(1)
        r._hash = None
        return r
    if strict:
        raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")
    return None


def evaluate(x, q0: Rational) -> Fraction:
    """Exact value of a scalar at q = q0 (integers and fractions pass through)."""
    if isinstance(x, (QRational, QPolynomial)):
        return x.evaluate(q0)
    return _as_fraction(x)


def to_text(x) -> str:
    """Canonical text for any exact scalar."""
    if isinstance(x, Fraction):
        return _format_rational(x)
    return str(x)


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a"`` or ``"a/b"`` exactly; decimals and floats are rejected."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational 'a/b': {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)
