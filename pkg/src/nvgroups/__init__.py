"""Exact computation in the higher-dimensional Thompson groups nV."""

from .patterns import (
    Address,
    DyadicBrick,
    DyadicInterval,
    Element,
    Pattern,
    common_refinement,
    element_apply,
    element_compose,
    element_equal,
    element_inverse,
    element_refine,
    identity_element,
    pattern_base,
    pattern_cut,
    pattern_swap,
)
from .monoid import (
    Cut,
    LabeledForest,
    Leaf,
    MonoidWord,
    Node,
    Swap,
    apply_relation,
    forest_to_word,
    format_monoid_word,
    fully_divided,
    is_normalized,
    normalize_word,
    parse_monoid_word,
    pull_up_dimension,
    word_length,
    word_to_forest,
    word_to_pattern,
    words_equal,
)
from .group import (
    C,
    Complexity,
    GroupLetter,
    GroupWord,
    Pi,
    PiBar,
    TrunkDecomposition,
    X,
    complexity,
    corner_swap,
    factor_element,
    format_group_word,
    generator_element,
    lower_trunk_complexity,
    lower_until_normalized,
    parse_group_word,
    relation_instance,
    subscript_raise_C,
    subscript_raise_pibar,
    trunk_decompose,
    word_evaluate,
    word_inverse,
)

__version__ = "0.1.0"
