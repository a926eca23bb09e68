"""Rewriting engine for the q-deformed Fock space.

A basis tuple ``(k_1, ..., k_n)`` stands for a+(k_n) ... a+(k_1)|0>, so
creation appends and ``k_n`` is the outermost creator.  Modes inside one
tuple are pairwise distinct.  Everything here is derived from the two rules

    a(k) a+(l) = q a+(l) a(k) + delta(k, l),        a(k)|0> = 0,

and deliberately avoids the closed forms used elsewhere in the package, so
that it can serve as an independent oracle for them.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .group_algebra import (
    SingularSpecializationError,
    XGroupPolynomial,
    is_symbolic,
    require_invertible,
    resolve_q,
)
from .linalg import fraction_free_solve
from .permutation import OrderedTuple, Permutation, all_permutations
from .scalar import to_text


class RepeatedModeError(ValueError):
    """A creation operator would put a mode into a tuple that already holds it."""


class MissingEnergyError(KeyError):
    """An energy was needed for a mode the assignment does not cover."""


class FockState:
    """Finitely supported map from tuples of distinct modes to scalars."""

    __slots__ = ("_amps",)

    def __init__(self, amplitudes: Mapping[Iterable[int], object] | None = None):
        clean: dict[OrderedTuple, object] = {}
        for t, c in (amplitudes or {}).items():
            t = tuple(t)
            if len(set(t)) != len(t):
                raise RepeatedModeError(f"basis tuple {t} repeats a mode")
            if c:
                clean[t] = clean.get(t, 0) + c
                if not clean[t]:
                    del clean[t]
        self._amps = clean

    @classmethod
    def vacuum(cls) -> "FockState":
        return cls({(): 1})

    @classmethod
    def basis(cls, modes: Iterable[int], amplitude=1) -> "FockState":
        return cls({tuple(modes): amplitude})

    @property
    def amplitudes(self) -> dict[OrderedTuple, object]:
        return dict(self._amps)

    def amplitude(self, modes: Iterable[int]):
        return self._amps.get(tuple(modes), 0)

    def support(self) -> list[OrderedTuple]:
        return sorted(self._amps, key=lambda t: (len(t), t))

    def modes(self) -> set[int]:
        return {k for t in self._amps for k in t}

    def is_zero(self) -> bool:
        return not self._amps

    def __bool__(self) -> bool:
        return bool(self._amps)

    def __add__(self, other: "FockState") -> "FockState":
        out = dict(self._amps)
        for t, c in other._amps.items():
            v = out.get(t, 0) + c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return _raw(out)

    def __neg__(self) -> "FockState":
        return _raw({t: -c for t, c in self._amps.items()})

    def __sub__(self, other: "FockState") -> "FockState":
        return self + (-other)

    def scale(self, c) -> "FockState":
        if not c:
            return FockState()
        return _raw({t: c * v for t, v in self._amps.items()})

    def __mul__(self, c) -> "FockState":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockState):
            return NotImplemented
        return self._amps == other._amps

    def evaluate(self, q0) -> "FockState":
        from .scalar import evaluate
        return FockState({t: evaluate(c, q0) for t, c in self._amps.items()})

    def to_text(self) -> str:
        if not self._amps:
            return "0"
        return " + ".join(
            f"({to_text(self._amps[t])}) * |{','.join(map(str, t))}>" for t in self.support()
        )

    def to_json(self) -> dict:
        return {"terms": [{"modes": list(t), "amplitude": to_text(self._amps[t])}
                          for t in self.support()]}

    def __repr__(self) -> str:
        return f"FockState({self.to_text()})"


def _raw(amps: dict) -> FockState:
    s = FockState.__new__(FockState)
    s._amps = amps
    return s


class EnergyAssignment:
    """Mode label -> exact rational energy."""

    __slots__ = ("_table",)

    def __init__(self, table: Mapping[int, object]):
        self._table = {int(k): Fraction(v) for k, v in table.items()}

    def __getitem__(self, mode: int) -> Fraction:
        try:
            return self._table[mode]
        except KeyError:
            raise MissingEnergyError(f"no energy assigned to mode {mode}") from None

    def __contains__(self, mode: int) -> bool:
        return mode in self._table

    def total(self, modes: Iterable[int]):
        return sum((self[k] for k in modes), Fraction(0))

    @property
    def table(self) -> dict[int, Fraction]:
        return dict(self._table)


# --------------------------------------------------------------------------
# elementary operators
# --------------------------------------------------------------------------

def create(s: FockState, k: int) -> FockState:
    """a+(k) s."""
    out = {}
    for t, c in s._amps.items():
        if k in t:
            raise RepeatedModeError(f"mode {k} already present in {t}")
        out[t + (k,)] = c
    return _raw(out)


class _Powers:
    """Cached powers of q."""

    def __init__(self, q):
        self.q = q
        self._p = [q ** 0 if is_symbolic(q) else Fraction(1)]

    def __getitem__(self, m: int):
        while len(self._p) <= m:
            self._p.append(self._p[-1] * self.q)
        return self._p[m]


def _powers(q) -> _Powers:
    return q if isinstance(q, _Powers) else _Powers(resolve_q(q))


def annihilate(s: FockState, k: int, q=None) -> FockState:
    """a(k) s.

    Moving a(k) inward past the n - j creators standing outside a+(k_j)
    costs q each; the contraction with a+(k_j) leaves the rest untouched.
    """
    pw = _powers(q)
    out: dict[OrderedTuple, object] = {}
    for t, c in s._amps.items():
        try:
            j = t.index(k)
        except ValueError:
            continue
        key = t[:j] + t[j + 1:]
        v = out.get(key, 0) + c * pw[len(t) - 1 - j]
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return _raw(out)


def vacuum_amplitude(s: FockState):
    return s._amps.get((), 0)


def basis_pairing(bra: OrderedTuple, ket: OrderedTuple, q=None):
    """<x_bra, x_ket> by annihilating bra's modes (outermost first) from the ket."""
    pw = _powers(q)
    if len(bra) != len(ket):
        return 0 * pw[0]
    state = FockState.basis(ket)
    for k in reversed(bra):
        state = annihilate(state, k, pw)
        if not state:
            return 0 * pw[0]
    return vacuum_amplitude(state)


def inner_product(x: FockState, y: FockState, q=None):
    """Bilinear pairing of states with real amplitudes, computed by rewriting."""
    pw = _powers(q)
    total = 0 * pw[0]
    for a, ca in x._amps.items():
        for b, cb in y._amps.items():
            if len(a) != len(b) or set(a) != set(b):
                continue
            v = basis_pairing(a, b, pw)
            if v:
                total = total + ca * cb * v
    return total


# --------------------------------------------------------------------------
# the energy operator
# --------------------------------------------------------------------------

def apply_energy_term(p: int, coeffs: XGroupPolynomial, E: EnergyAssignment,
                      s: FockState, q=None) -> FockState:
    """The p-particle term applied to s by literal operator rewriting.

    The term is the sum over modes k_1..k_p, permutations r and i = 1..p of
    c_i(r) E(k_{r(i)}) a+(k_{r(p)}) ... a+(k_{r(1)}) a(k_1) ... a(k_p).
    Only modes occurring in s can survive the annihilators.
    """
    if coeffs.n != p:
        raise ValueError(f"coefficients have degree {coeffs.n}, expected {p}")
    pw = _powers(q)
    present = sorted(s.modes())
    for k in present:
        E[k]
    perms = all_permutations(p)
    table = [(r, coeffs.by_permutation(r)) for r in perms]
    table = [(r, cs) for r, cs in table if cs]
    result = FockState()
    for ks in itertools.permutations(present, p):
        reduced = s
        for k in reversed(ks):
            reduced = annihilate(reduced, k, pw)
            if not reduced:
                break
        if not reduced:
            continue
        for r, cs in table:
            weight = 0
            for d, c in cs.items():
                weight = weight + c * E[ks[r(d + 1) - 1]]
            if not weight:
                continue
            state = reduced
            for i in range(1, p + 1):
                state = create(state, ks[r(i) - 1])
            result = result + state.scale(weight)
    return result


CoefficientSource = Mapping[int, XGroupPolynomial] | Callable[[int], XGroupPolynomial]


def _coeffs_for(source: CoefficientSource, p: int) -> XGroupPolynomial:
    if callable(source):
        return source(p)
    try:
        return source[p]
    except KeyError:
        raise ValueError(f"no energy coefficients supplied for p = {p}") from None


def apply_energy(E: EnergyAssignment, s: FockState, coeff_source: CoefficientSource,
                 q=None) -> FockState:
    """Sum of the p-particle terms for p = 1 .. largest sector present in s."""
    pw = _powers(q)
    top = max((len(t) for t in s._amps), default=0)
    result = FockState()
    for p in range(1, top + 1):
        result = result + apply_energy_term(p, _coeffs_for(coeff_source, p), E, s, pw)
    return result


def eigen_residual(E: EnergyAssignment, modes: OrderedTuple, coeff_source: CoefficientSource,
                   q=None) -> FockState:
    """E x - (sum of energies) x for the basis state x of ``modes``; zero when it is an eigenvector."""
    x = FockState.basis(modes)
    return apply_energy(E, x, coeff_source, q) - x.scale(E.total(modes))


def number_operator(i: int, s: FockState, q=None) -> FockState:
    """Greenberg's n(i) = sum over s >= 0 and k_1..k_s of
    a+(k_1)...a+(k_s) a+(i) a(i) a(k_s)...a(k_1), restricted to modes of s."""
    pw = _powers(q)
    others = sorted(s.modes() - {i})
    result = FockState()
    for size in range(len(others) + 1):
        for ks in itertools.permutations(others, size):
            state = s
            for k in ks:
                state = annihilate(state, k, pw)
                if not state:
                    break
            if not state:
                continue
            state = annihilate(state, i, pw)
            if not state:
                continue
            state = create(state, i)
            for k in reversed(ks):
                state = create(state, k)
            result = result + state
    return result


def apply_greenberg(E: EnergyAssignment, s: FockState, q=None) -> FockState:
    """Sum over modes i of E(i) n(i) applied to s."""
    pw = _powers(q)
    result = FockState()
    for i in sorted(s.modes()):
        result = result + number_operator(i, s, pw).scale(E[i])
    return result


# --------------------------------------------------------------------------
# oracle: coefficients from the eigenvalue equation alone
# --------------------------------------------------------------------------

def _unit_coefficients(p: int, r: Permutation, d: int) -> XGroupPolynomial:
    return XGroupPolynomial(p, {(r, d): Fraction(1)})


def brute_force_coefficients(n: int, q0) -> dict[int, XGroupPolynomial]:
    """Coefficients for sectors 1..n at a rational q0, from rewriting alone.

    For each p the p-particle term applied to the state |1..p> is written
    column by column (one unknown c_i(r) switched on at a time) with
    indicator energies on each mode in turn; the eigenvalue equation minus
    the contribution of the lower terms gives the right-hand side.  The
    square system is solved exactly.
    """
    q0 = Fraction(q0)
    if n < 1:
        raise ValueError("n >= 1 required")
    require_invertible(q0)
    pw = _Powers(q0)
    found: dict[int, XGroupPolynomial] = {}
    for p in range(1, n + 1):
        modes = tuple(range(1, p + 1))
        x = FockState.basis(modes)
        perms = all_permutations(p)
        unknowns = [(r, d) for r in perms for d in range(p)]
        energies = [EnergyAssignment({k: int(k == m) for k in modes}) for m in modes]
        # rows indexed by (energy choice, rearrangement of the modes)
        rows = [(m, r.act(modes)) for m in range(p) for r in perms]
        columns = []
        for r, d in unknowns:
            unit = _unit_coefficients(p, r, d)
            images = [apply_energy_term(p, unit, E, x, pw) for E in energies]
            columns.append([images[m].amplitude(t) for m, t in rows])
        targets = []
        for E in energies:
            target = x.scale(E.total(modes))
            for lower in range(1, p):
                target = target - apply_energy_term(lower, found[lower], E, x, pw)
            targets.append(target)
        rhs = [targets[m].amplitude(t) for m, t in rows]
        matrix = [[columns[c][row] for c in range(len(unknowns))] for row in range(len(rows))]
        try:
            det, sol = fraction_free_solve(matrix, [[v] for v in rhs],
                                           divide=lambda a, b: a / b, one=Fraction(1))
        except ZeroDivisionError as exc:
            raise SingularSpecializationError(
                f"eigenvalue system for p = {p} is singular at q = {q0}") from exc
        found[p] = XGroupPolynomial(p, {u: sol[j][0] / det for j, u in enumerate(unknowns)})
    return found


def random_modes(rng: random.Random, n: int, pool: int = 50) -> OrderedTuple:
    return tuple(rng.sample(range(pool), n))


def random_energies(rng: random.Random, modes: Iterable[int]) -> EnergyAssignment:
    return EnergyAssignment({k: Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for k in modes})
