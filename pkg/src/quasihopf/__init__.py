"""Exact computations with finite-dimensional quasi-Hopf algebras.

Structures are given by structure constants over the rationals or GF(p).
The library verifies every axiom exactly, builds smash products and
decomposes a comodule algebra ``B`` with a comodule-algebra map ``v: H -> B``
as ``B = A # H``.
"""

from .algebra import (BasedAlgebra, Element, Space, TensorProduct, check_algebra_morphism,
                      tensor, tensor_algebra, verify_associative_unital)
from .fields import GF, QQ, Field, GFElement, parse_field
from .linalg import (LinearMap, NoSolution, NotInvertible, image_basis, inverse, kernel_basis,
                     kron, rank, solve_linear)
from .quasi_hopf import (PQElements, QuasiBialgebra, QuasiHopfAlgebra, compute_pq,
                         is_hopf_specialization, normalize_alpha_beta, verify_lemma3,
                         verify_pq_identities, verify_quasi_bialgebra, verify_quasi_hopf)
from .report import PreconditionError, VerificationError, VerificationReport, Violation
from .representations import (ComoduleAlgebra, HModule, ModuleAlgebra, bv_construction,
                              check_comodule_algebra_morphism, check_module_algebra_morphism,
                              i0_map, lemma1_check, regular_comodule, smash_product,
                              transport_comodule_algebra, verify_comodule_algebra,
                              verify_module_algebra)
from .structure_theorem import (ComoduleBimodule, QuasiHopfBimodule, bimodule_from_comodule,
                                bimodule_structure_iso, coinvariants, decompose, projection_E,
                                recovery_isomorphism, roundtrip, star_multiply, theta_map,
                                verify_bimodule, verify_E_properties, vh_bimodule)

__version__ = "0.1.0"

__all__ = [
    "BasedAlgebra", "Element", "Space", "TensorProduct", "check_algebra_morphism", "tensor",
    "tensor_algebra", "verify_associative_unital",
    "GF", "QQ", "Field", "GFElement", "parse_field",
    "LinearMap", "NoSolution", "NotInvertible", "image_basis", "inverse", "kernel_basis",
    "kron", "rank", "solve_linear",
    "PQElements", "QuasiBialgebra", "QuasiHopfAlgebra", "compute_pq", "is_hopf_specialization",
    "normalize_alpha_beta", "verify_lemma3", "verify_pq_identities", "verify_quasi_bialgebra",
    "verify_quasi_hopf",
    "PreconditionError", "VerificationError", "VerificationReport", "Violation",
    "ComoduleAlgebra", "HModule", "ModuleAlgebra", "bv_construction",
    "check_comodule_algebra_morphism", "check_module_algebra_morphism", "i0_map",
    "lemma1_check", "regular_comodule", "smash_product", "transport_comodule_algebra",
    "verify_comodule_algebra", "verify_module_algebra",
    "ComoduleBimodule", "QuasiHopfBimodule", "bimodule_from_comodule", "bimodule_structure_iso",
    "coinvariants", "decompose", "projection_E", "recovery_isomorphism", "roundtrip",
    "star_multiply", "theta_map", "verify_bimodule", "verify_E_properties", "vh_bimodule",
]
