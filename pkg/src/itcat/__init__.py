"""Categories of information transformers: monadic channels, laws, and orders.

The package models noisy information channels as arrows of Kleisli categories
of uncertainty monads (exact probability, nondeterminism, two fuzzy variants,
and the trivial deterministic case) plus a numeric linear-Gaussian category.
On top of the arrow calculus it provides:

- a law harness checking the monad laws, the independent-pairing coherence
  conditions, and the categorical axioms of the product/tensor structure;
- accuracy and informativeness orders with explicit witness search, partition
  and covering invariants, and the class monoid of the deterministic category;
- distributions, joints, marginals, conditionals, decision problems, optimal
  strategies, and the prior/posterior optimisation equivalence;
- a text file format, an HTTP service, and a command-line client.
"""

from .spaces import (
    TERMINAL,
    DetMap,
    FiniteSpace,
    SpaceError,
    canonical_map,
    product_space,
    space,
)
from .monads import (
    CATEGORY_ALIASES,
    FUZZY_MIN,
    FUZZY_PROD,
    IDENTITY,
    MONADS,
    POWERSET,
    PROBABILITY,
    Monad,
    MonadValueError,
    fuzzy_row,
    get_monad,
    prob_row,
)
from .kleisli import (
    KleisliArrow,
    arrow,
    compose,
    distribution,
    identity_arrow,
    is_distribution,
    lift,
    product,
    tensor,
)
from .laws import CategorySuite, LawReport, render_suite, run_category_suite
from .informativeness import (
    EQUALITY,
    POINTWISE,
    Comparison,
    Covering,
    InfoClassMonoid,
    WitnessSearch,
    accuracy_le,
    compare,
    covering_le,
    covering_of,
    more_informative,
    partition_monoid,
)
from .linear import (
    LinearClass,
    LinearError,
    LinearIT,
    lin_accuracy_le,
    lin_arrow,
    lin_canonical_class,
    lin_class_le,
    lin_compose,
    lin_conditional,
    lin_distribution,
    lin_identity,
    lin_lift,
    lin_product,
    lin_tensor,
)
from .bayes import (
    BayesError,
    BayesReport,
    DecisionProblem,
    OptResult,
    bayes_principle_check,
    conditional,
    is_independent,
    joint_from,
    marginals,
    opt_set,
    semantical_le,
    theorem4_check,
)
from .itfile import ItFile, ItFileError, parse_it_file, serialize_it_file

__version__ = "0.1.0"

__all__ = [
    "TERMINAL",
    "DetMap",
    "FiniteSpace",
    "SpaceError",
    "canonical_map",
    "product_space",
    "space",
    "CATEGORY_ALIASES",
    "FUZZY_MIN",
    "FUZZY_PROD",
    "IDENTITY",
    "MONADS",
    "POWERSET",
    "PROBABILITY",
    "Monad",
    "MonadValueError",
    "fuzzy_row",
    "get_monad",
    "prob_row",
    "KleisliArrow",
    "arrow",
    "compose",
    "distribution",
    "identity_arrow",
    "is_distribution",
    "lift",
    "product",
    "tensor",
    "CategorySuite",
    "LawReport",
    "render_suite",
    "run_category_suite",
    "EQUALITY",
    "POINTWISE",
    "Comparison",
    "Covering",
    "InfoClassMonoid",
    "WitnessSearch",
    "accuracy_le",
    "compare",
    "covering_le",
    "covering_of",
    "more_informative",
    "partition_monoid",
    "LinearClass",
    "LinearError",
    "LinearIT",
    "lin_accuracy_le",
    "lin_arrow",
    "lin_canonical_class",
    "lin_class_le",
    "lin_compose",
    "lin_conditional",
    "lin_distribution",
    "lin_identity",
    "lin_lift",
    "lin_product",
    "lin_tensor",
    "BayesError",
    "BayesReport",
    "DecisionProblem",
    "OptResult",
    "bayes_principle_check",
    "conditional",
    "is_independent",
    "joint_from",
    "marginals",
    "opt_set",
    "semantical_le",
    "theorem4_check",
    "ItFile",
    "ItFileError",
    "parse_it_file",
    "serialize_it_file",
    "__version__",
]
