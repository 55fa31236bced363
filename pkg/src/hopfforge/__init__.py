"""Exact symbolic computation with connected Hopf algebras presented by
weighted generators and commutator relations."""

from .algebra import (Element, Presentation, PresentationMismatchError,
                      check_confluence, check_termination_weights, commutator,
                      multiply)
from .coideal import (RegistrationError, SubalgebraSpec, antipode_image,
                      coideal_check, coideal_signature, coinvariants,
                      containment_check, full_subalgebra, gk_dimension,
                      is_hopf_subalgebra, primitive_of_coideal,
                      register_subalgebra, spans_equal)
from .grading import (FiltrationCertificate, FiltrationError, PowerSeries,
                      Signature, certify, certify_filtration,
                      graded_coproduct_leading, hilbert_divides, hilbert_series,
                      signature)
from .hopf import (AntipodeSolveError, CertificateMissingError,
                   HopfAlgebraError, PresentedHopfAlgebra,
                   SquaredAntipodeAnalysis, antipode_eigenbasis,
                   s_squared_analysis, solve_antipode, verify_bialgebra,
                   verify_hopf)
from .lantern import (GradedLieAlgebra, cocommutativity_test, lantern, mobius,
                      numerology_report, verify_lie)
from .nakayama import (Character, GeneratorAutomorphism, character,
                       compose_with_antipode, counit_character,
                       enveloping_integral_character, nakayama_automorphism,
                       normal_element_check, s4_identity_check, verify_character,
                       winding)
from .report import Check, Report
from .tensor import TensorElement, contract, tensor_multiply, tensor_product

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
