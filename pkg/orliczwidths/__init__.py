__version__ = '0.2.0'

from .orlicz import (
    OrliczFunction, ConditionReport, evaluate, inverse, check_axioms,
    check_delta2, check_domination, unit_vector_norm, compose_power,
)
from .luxemburg import (
    FiniteSequence, IndexSet, modular, luxemburg_norm, tail_norm,
    best_coeff_error_oracle,
)
from .charseq import (
    WeightSequence, CharacteristicTriple, rearrange_nonincreasing,
    rearrangement_order, characteristic, rearrangement_consistency,
)
from .widths import (
    DiagonalOperator, WidthReport, best_approx_over_set, basis_width,
    width_on_char_set, kolmogorov_width, ball_containment_check,
    sup_lower_bound_oracle,
)
from .nterm import (
    SearchPolicy, SigmaResult, xi, sigma_exact, extremal_sequence,
    sigma_numeric, sigma_sup_oracle,
)
from .oracles import LemmaAInstance, prop1_check, slope_check, lemmaA_check
from .errors import (
    OrliczError, DomainError, NonInvertibleGaugeError, HypothesisError,
    TruncationError, OracleScaleError, SpecParseError,
)

from .node import Node, Root, OpNode
from .decorators import task, bound

from . import factory
