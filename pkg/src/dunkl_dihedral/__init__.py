"""Dunkl operators, intertwiners and kernels for the dihedral root systems I2(s)."""

from .b2integral import bessel_quadrature, kernel_integral_b2, lambda_const, modified_bessel, quadrature_rule
from .coeffs import C_map, C_n, CoeffTable, c_bruteforce, c_closed, c_recursion
from .dunkl_core import apply_dunkl, eta_k, intertwine, intertwine_poly, resolvent_direct, resolvent_series
from .errors import DunklError
from .group import DihedralElement, DihedralSystem, GroupAlgebraMap, Multiplicity
from .kernel import KernelValue, dunkl_kernel, generalized_bessel
from .poly import HomogeneousPolynomial
from .shift import recover_kernel_b2, recover_kernel_even, recover_kernel_i23, shift_principle_sides

__all__ = [
    "C_map",
    "C_n",
    "CoeffTable",
    "DihedralElement",
    "DihedralSystem",
    "DunklError",
    "GroupAlgebraMap",
    "HomogeneousPolynomial",
    "KernelValue",
    "Multiplicity",
    "apply_dunkl",
    "bessel_quadrature",
    "c_bruteforce",
    "c_closed",
    "c_recursion",
    "dunkl_kernel",
    "eta_k",
    "generalized_bessel",
    "intertwine",
    "intertwine_poly",
    "kernel_integral_b2",
    "lambda_const",
    "modified_bessel",
    "quadrature_rule",
    "recover_kernel_b2",
    "recover_kernel_even",
    "recover_kernel_i23",
    "resolvent_direct",
    "resolvent_series",
    "shift_principle_sides",
]
