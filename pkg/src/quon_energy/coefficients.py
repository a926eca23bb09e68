"""Energy-operator coefficients c_i(q, p), the element R_p(q, X), and the
checks built on them.

The coefficient of X^(i-1) p in an ``XGroupPolynomial`` is c_i(q, p).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import fock, zagier
from .group_algebra import (
    XGroupPolynomial,
    alpha,
    alpha_inverse,
    is_symbolic,
    require_invertible,
    resolve_q,
)
from .permutation import (
    OrderedTuple,
    Permutation,
    all_permutations,
    enumerate_snp,
    perm_index,
    relative_inversions,
    reverse,
    split_concat,
    t1k,
)
from .scalar import to_text


def _factor(n: int, j: int, q) -> XGroupPolynomial:
    """e - q^(j-1) X T_{1j}."""
    e = Permutation.identity(n)
    return XGroupPolynomial(n, {(e, 0): 1, (t1k(n, j), 1): -(q ** (j - 1))})


def coeffs_via_product(n: int, q=None, allow_slow: bool = False) -> XGroupPolynomial:
    """alpha_n^-1 (e - q X T_12)(e - q^2 X T_13)...(e - q^(n-1) X T_1n), ascending j."""
    if n < 1:
        raise ValueError("n >= 1 required")
    require_invertible(q)
    qq = resolve_q(q)
    result = XGroupPolynomial.from_group_element(alpha_inverse(n, q, allow_slow=allow_slow))
    for j in range(2, n + 1):
        result = result * _factor(n, j, qq)
    return result


def coeffs_via_explicit(n: int, q=None, allow_slow: bool = False) -> XGroupPolynomial:
    """c_i(s) = (-1)^(i-1) sum over t in S_{n,i-1} of A^-1(s^-1, t^-1) A(t, 1).

    With the composition convention of this package A^-1 is invariant under
    simultaneous left translation, so the inverse is read at (s^-1, t^-1).
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    require_invertible(q)
    qq = resolve_q(q)
    idx = perm_index(n)
    perms = all_permutations(n)
    groups = [enumerate_snp(n, i - 1) for i in range(1, n + 1)]
    needed = sorted({idx[t.inverse()] for g in groups for t in g})
    col = {j: c for c, j in enumerate(needed)}
    if is_symbolic(qq):
        if n >= 5 and not allow_slow:
            raise ValueError("symbolic explicit coefficients for n >= 5 are slow; pass "
                             "allow_slow=True or specialize q")
        inv = zagier.inverse_columns(n, None, needed)
    else:
        inv = zagier.inverse_columns(n, qq, needed)
    terms = {}
    for s in perms:
        row = inv[idx[s.inverse()]]
        for i, group in enumerate(groups, 1):
            total = 0
            for t in group:
                total = total + row[col[idx[t.inverse()]]] * qq ** t.inversions
            if i % 2 == 0:
                total = -total
            terms[(s, i - 1)] = total
    return XGroupPolynomial(n, terms)


def r_p_defining(p: int, q=None, coeffs: XGroupPolynomial | None = None) -> XGroupPolynomial:
    """alpha_p times the coefficient element (by default the explicit-formula one)."""
    if coeffs is None:
        coeffs = coeffs_via_explicit(p, q)
    return XGroupPolynomial.from_group_element(alpha(p, q)) * coeffs


def r_p_closed(p: int, q=None) -> XGroupPolynomial:
    """Sum over s and 1 < m_1 < ... < m_s <= p of
    (-1)^s q^((m_1-1)+...+(m_s-1)) X^s T_{1m_1}...T_{1m_s}."""
    if p < 1:
        raise ValueError("p >= 1 required")
    qq = resolve_q(q)
    terms = {}
    for s in range(p):
        for ms in combinations(range(2, p + 1), s):
            prod = Permutation.identity(p)
            for m in ms:
                prod = prod * t1k(p, m)
            weight = qq ** sum(m - 1 for m in ms)
            terms[(prod, s)] = -weight if s % 2 else weight
    return XGroupPolynomial(p, terms)


# --------------------------------------------------------------------------
# ordered-set forms of the action of R_p and of the p-particle term
# --------------------------------------------------------------------------

SetPolynomial = dict[tuple[OrderedTuple, int], object]


def _accumulate(out: SetPolynomial, key, value) -> None:
    v = out.get(key, 0) + value
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def r_action_on_set(R: XGroupPolynomial, J: OrderedTuple) -> SetPolynomial:
    """R J as a polynomial in X over rearrangements of J."""
    out: SetPolynomial = {}
    for (r, d), c in R.terms.items():
        _accumulate(out, (r.act(J), d), c)
    return out


def r_closed_on_set(J: OrderedTuple, q=None) -> SetPolynomial:
    """Sum over subsets L of J avoiding its first element of
    q^I_J(rev(L) + (J - L)) (-X)^|L| (rev(L) + (J - L))."""
    qq = resolve_q(q)
    J = tuple(J)
    out: SetPolynomial = {}
    rest = J[1:]
    for size in range(len(rest) + 1):
        for L in combinations(rest, size):
            arranged = reverse(L) + tuple(x for x in J if x not in L)
            w = qq ** relative_inversions(J, arranged)
            _accumulate(out, (arranged, size), -w if size % 2 else w)
    return out


def energy_term_via_sets(p: int, R: XGroupPolynomial, E: fock.EnergyAssignment,
                         K: OrderedTuple, q=None) -> fock.FockState:
    """The p-particle term on the basis state K, assembled from R_p acting on
    every order-preserving p-subset J of K, with the spectator modes K - J
    placed in front and the X-degree shifted by |K - J|."""
    qq = resolve_q(q)
    K = tuple(K)
    n = len(K)
    out: dict[OrderedTuple, object] = {}
    if p > n:
        return fock.FockState()
    for J in combinations(K, p):
        arranged, inv = split_concat(K, J)
        spectators = arranged[: n - p]
        weight = qq ** inv
        for (r, d), c in R.terms.items():
            t = spectators + r.act(J)
            v = c * weight * E[t[d + n - p]]
            if v:
                out[t] = out.get(t, 0) + v
    return fock.FockState(out)


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

def _q_text(q) -> str:
    return "symbolic" if is_symbolic(q) else str(Fraction(q))


@dataclass
class Report:
    holds: bool
    mode: str
    q: str
    violations: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"holds": self.holds, "violations": self.violations,
               "mode": self.mode, "q": self.q}
        out.update(self.details)
        return out


def check_remark1(n: int, q=None, coeffs: XGroupPolynomial | None = None) -> Report:
    """Compare c_i(q, p) with c_{p(i)}(q, p) for all i and p."""
    if coeffs is None:
        coeffs = coeffs_via_product(n, q)
    violations = []
    for p in all_permutations(n):
        for i in range(1, n + 1):
            a, b = coeffs.c(i, p), coeffs.c(p(i), p)
            if a != b:
                violations.append({"perm": list(p.images), "i": i,
                                   "c_i": to_text(a), "c_p(i)": to_text(b)})
    return Report(not violations, "symbolic" if is_symbolic(q) else "specialized",
                  _q_text(q), violations, {"n": n})


def _random_state(rng: random.Random, n: int, terms: int = 3) -> fock.FockState:
    modes = fock.random_modes(rng, n)
    amps = {}
    for _ in range(terms):
        order = tuple(rng.sample(modes, n))
        amps[order] = amps.get(order, 0) + Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
    return fock.FockState(amps)


def greenberg_limit_check(n: int, seed: int = 0, states: int = 10) -> Report:
    """At q = 0: the coefficient element is the single term c_1(e) = 1 in every
    sector up to n, and the energy operator agrees with sum_i E(i) n(i) on
    random n-particle states."""
    rng = random.Random(seed)
    q0 = Fraction(0)
    violations = []
    coeffs = {p: coeffs_via_product(p, q0) for p in range(1, n + 1)}
    for p, c in coeffs.items():
        expected = XGroupPolynomial(p, {(Permutation.identity(p), 0): Fraction(1)})
        if c != expected:
            violations.append({"kind": "coefficients", "p": p, "got": c.to_json()})
    for _ in range(states):
        s = _random_state(rng, n)
        E = fock.random_energies(rng, s.modes())
        lhs = fock.apply_energy(E, s, coeffs, q0)
        rhs = fock.apply_greenberg(E, s, q0)
        if lhs != rhs:
            violations.append({"kind": "action", "state": s.to_json(),
                               "energy": lhs.to_json(), "greenberg": rhs.to_json()})
    return Report(not violations, "specialized", "0", violations,
                  {"n": n, "seed": seed, "states": states})


def eigen_check(n: int, q=None, seed: int = 0, draws: int = 20,
                coeff_source=None) -> Report:
    """The energy operator on random n-particle basis states returns
    (sum of energies) times the state."""
    rng = random.Random(seed)
    if coeff_source is None:
        coeff_source = {p: coeffs_via_product(p, q) for p in range(1, n + 1)}
    violations = []
    for _ in range(draws):
        modes = fock.random_modes(rng, n)
        E = fock.random_energies(rng, modes)
        residual = fock.eigen_residual(E, modes, coeff_source, q)
        if residual:
            violations.append({"modes": list(modes),
                               "energies": {str(k): str(v) for k, v in E.table.items()},
                               "residual": residual.to_json()})
    return Report(not violations, "symbolic" if is_symbolic(q) else "specialized",
                  _q_text(q), violations, {"n": n, "seed": seed, "draws": draws})


def uniqueness_probe(n: int, q0=Fraction(1, 2)) -> Report:
    """Bump each coefficient c_i(q0, p), p-particle sector for p <= n, by 1 and
    check that some p-particle basis state stops being an eigenvector.

    ``holds`` is true when every perturbation is detected.
    """
    q0 = Fraction(q0)
    base = {p: coeffs_via_product(p, q0) for p in range(1, n + 1)}
    undetected = []
    tried = 0
    for p in range(1, n + 1):
        modes = tuple(range(2, 2 + p))
        # generic, pairwise distinct energies
        E = fock.EnergyAssignment({k: Fraction(k * k + 1, k + 3) for k in modes})
        states = [r.act(modes) for r in all_permutations(p)]
        for r in all_permutations(p):
            for i in range(1, p + 1):
                tried += 1
                bumped = dict(base)
                bumped[p] = base[p] + XGroupPolynomial(p, {(r, i - 1): Fraction(1)})
                if not any(fock.eigen_residual(E, K, bumped, q0) for K in states):
                    undetected.append({"p": p, "perm": list(r.images), "i": i})
    return Report(not undetected, "specialized", str(q0), undetected,
                  {"n": n, "perturbations": tried})


def compare(a: XGroupPolynomial, b: XGroupPolynomial) -> list[dict]:
    """Entries where two coefficient tables differ."""
    keys = sorted(set(a.terms) | set(b.terms), key=lambda k: (k[0].images, k[1]))
    return [{"perm": list(p.images), "i": d + 1, "left": to_text(a.coefficient(p, d)),
             "right": to_text(b.coefficient(p, d))}
            for p, d in keys if a.coefficient(p, d) != b.coefficient(p, d)]

