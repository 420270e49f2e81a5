"""Well-scoped terms with binding, and substitution in four structural modes."""

from .contexts import (
    GeneratorKind,
    Mode,
    Renaming,
    compose,
    enumerate_renamings,
    generated_closure,
    generator,
    identity,
)
from .signatures import (
    BindingSignature,
    Operator,
    OperatorRef,
    parse_signature,
    print_signature,
    signature_of,
)
from .terms import (
    Algebra,
    OccurrenceProfile,
    Op,
    Term,
    Var,
    check_pairing,
    check_wellformed,
    component_profile,
    contract,
    fold,
    generic_variable,
    occurrence_profile,
    parse_term,
    print_term,
    rename,
    swap_last,
    weaken,
)
from .substitution import (
    ProductRuleCase,
    SubstitutionProblem,
    check_sigma_homomorphism,
    compose_at,
    product_rule_case,
    replace_shared,
    replace_split,
)
from .oracle import oracle_substitute
from .enumeration import (
    EnumerationBounds,
    count_table,
    enumerate_pairs,
    enumerate_terms,
)
from .laws import LawBounds, LawReport, run_suite

__all__ = [
    "Algebra",
    "BindingSignature",
    "EnumerationBounds",
    "GeneratorKind",
    "LawBounds",
    "LawReport",
    "Mode",
    "OccurrenceProfile",
    "Op",
    "Operator",
    "OperatorRef",
    "ProductRuleCase",
    "Renaming",
    "SubstitutionProblem",
    "Term",
    "Var",
    "check_pairing",
    "check_sigma_homomorphism",
    "check_wellformed",
    "component_profile",
    "compose",
    "compose_at",
    "contract",
    "count_table",
    "enumerate_pairs",
    "enumerate_renamings",
    "enumerate_terms",
    "fold",
    "generated_closure",
    "generator",
    "generic_variable",
    "identity",
    "occurrence_profile",
    "oracle_substitute",
    "parse_signature",
    "parse_term",
    "print_signature",
    "print_term",
    "product_rule_case",
    "rename",
    "replace_shared",
    "replace_split",
    "run_suite",
    "signature_of",
    "swap_last",
    "weaken",
]
