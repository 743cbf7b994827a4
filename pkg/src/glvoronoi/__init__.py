"""Desk-scale verification of GL(n) Voronoi summation identities."""

from .chars import DirichletCharacter, PrimeModulus, is_prime
from .coeffs import (EisensteinSource, FileCoefficientSource,
                     InsufficientDataError, hecke_check, load_file_source)
from .kloosterman import (EnumerationBudgetExceeded, char_moment, kl_direct,
                          kl_table, kl_via_chars)
from .lfun import (PoleError, assemble_Y, assemble_Y_tilde, assemble_Z,
                   assemble_Z_tilde, chain_even_lhs, chain_even_rhs_bracket,
                   eis_L, eis_L_twisted, fe_residual, proof_chain_residual,
                   twisted_L_table)
from .mellin import (ContourSpec, G_minus, G_plus, OmegaTransform,
                     TestFunction, mellin, mellin_inversion_check, omega_minus,
                     omega_plus)
from .symalg import check_lemma34
from .voronoi import (VerificationReport, VoronoiInstance, lhs_combined,
                      lhs_even, lhs_odd, polar_correction_even, rhs_even,
                      rhs_odd, verify)
from .zetas import dirichlet_L, hurwitz_zeta, riemann_zeta

__all__ = [
    "DirichletCharacter", "PrimeModulus", "is_prime",
    "EisensteinSource", "FileCoefficientSource", "InsufficientDataError",
    "hecke_check", "load_file_source",
    "EnumerationBudgetExceeded", "char_moment", "kl_direct", "kl_table",
    "kl_via_chars",
    "PoleError", "assemble_Y", "assemble_Y_tilde", "assemble_Z",
    "assemble_Z_tilde", "chain_even_lhs", "chain_even_rhs_bracket", "eis_L",
    "eis_L_twisted", "fe_residual", "proof_chain_residual", "twisted_L_table",
    "ContourSpec", "G_minus", "G_plus", "OmegaTransform", "TestFunction",
    "mellin", "mellin_inversion_check", "omega_minus", "omega_plus",
    "check_lemma34",
    "VerificationReport", "VoronoiInstance", "lhs_combined", "lhs_even",
    "lhs_odd", "polar_correction_even", "rhs_even", "rhs_odd", "verify",
    "dirichlet_L", "hurwitz_zeta", "riemann_zeta",
]

__version__ = "0.1.0"
