"""Finite operadic categories, their skew monoidal categories of
collections, operads, and the normalization by the unit."""
from .core import (CapExceeded, FinCategory, FinFunction, ValidationReport,
                   connected_components, fibre_data, fibre_restrict, kappa,
                   make_category, validate_category)
from .operadic import (OperadicCategory, OperadicFunctorData, is_genuine,
                       trivial_objects, validate_functor, validate_operadic)
from .builders import (build_S, build_P, build_adjoin_terminal, build_bouquets,
                       build_card_one, build_discrete_zero, build_omega2,
                       cardinality_functor, poset3)
from .skew import (Collection, TensorElement, TensorInterface, alpha,
                   check_opmonoidal, diagnostics, expose_interface, lam,
                   reconstruct, rho, structure_map, tensor, unit,
                   verify_skew_axioms)
from .normalization import (Presheaf, WedgeClass, ft_subcategory,
                            hopf_sufficient_check, is_fibrewise_trivial,
                            left_normal_check, validate_presheaf, wedge,
                            wedge_bijectivity_check, wedge_structure_map)
from .operads import (Operad, enumerate_operads, operad_from_presheaf,
                      terminal_operad, validate_operad)
