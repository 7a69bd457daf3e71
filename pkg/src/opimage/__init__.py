"""Exact polynomial and differential-operator toolkit for images of
first-order operator families."""

from .errors import *  # noqa: F401,F403
from .fields import QQ, QQI, GaussianField, GaussianRational, PrimeField, RationalField, Residue, field_from_tag
from .poly import (LaurentPoly, Poly, coefficient_of, holomorphic_part, partial_derivative,
                   poly_add, poly_mul, substitute_linear, substitute_poly)
from .weyl import (ConstCoeffOp, FirstOrderOp, ReducedFamily, apply_lambda, apply_op,
                   commutator_first_order, is_commuting_family, recover_potential,
                   reduce_family)
from .image import (CodimSweep, MembershipReport, TaylorDecomposition, codim_sweep,
                    codim_truncated, eval_E, eval_Z, laplace_negative_part, laplace_transform,
                    member_bruteforce, member_theta, theta_witness_bounds, twisted_taylor)
from .harness import (ICReport, PolyMap, VCReport, ag_inverse, hessian_matrix,
                      ic_instance_check, is_nilpotent_matrix, jacobian_of_shift,
                      jc_power_sums, vc_check)
from .parse import parse_poly

__version__ = "0.1.0"
