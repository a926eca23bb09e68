"""Exact construction and verification of the energy operator for particles
obeying infinite statistics (the q-deformed oscillator algebra)."""

from .coefficients import (
    check_remark1,
    coeffs_via_explicit,
    coeffs_via_product,
    greenberg_limit_check,
    r_p_closed,
    r_p_defining,
    uniqueness_probe,
)
from .fock import (
    EnergyAssignment,
    FockState,
    MissingEnergyError,
    RepeatedModeError,
    annihilate,
    apply_energy,
    apply_energy_term,
    brute_force_coefficients,
    create,
    inner_product,
)
from .group_algebra import (
    GroupAlgebraElement,
    SingularSpecializationError,
    XGroupPolynomial,
    alpha,
    alpha_inverse,
    multiply,
)
from .permutation import (
    Permutation,
    compose,
    enumerate_snp,
    inverse,
    inversions,
    relative_inversions,
    split_concat,
    t1k,
)
from .scalar import PoleError, QPolynomial, QRational, evaluate, poly_gcd
from .zagier import (
    ZagierMatrix,
    build,
    check_integrality,
    delta,
    determinant,
    invert,
    positivity_probe,
    zagier_formula,
)

__version__ = "0.1.0"

__all__ = [
    "EnergyAssignment",
    "FockState",
    "GroupAlgebraElement",
    "MissingEnergyError",
    "Permutation",
    "PoleError",
    "QPolynomial",
    "QRational",
    "RepeatedModeError",
    "SingularSpecializationError",
    "XGroupPolynomial",
    "ZagierMatrix",
    "alpha",
    "alpha_inverse",
    "annihilate",
    "apply_energy",
    "apply_energy_term",
    "brute_force_coefficients",
    "build",
    "check_integrality",
    "check_remark1",
    "coeffs_via_explicit",
    "coeffs_via_product",
    "compose",
    "create",
    "delta",
    "determinant",
    "enumerate_snp",
    "evaluate",
    "greenberg_limit_check",
    "inner_product",
    "inverse",
    "inversions",
    "invert",
    "multiply",
    "poly_gcd",
    "positivity_probe",
    "r_p_closed",
    "r_p_defining",
    "relative_inversions",
    "split_concat",
    "t1k",
    "uniqueness_probe",
    "zagier_formula",
]
