"""Extensions of finitely generated abelian groups with checkable witnesses."""

from .abelian import (
    AbGroup,
    Hom,
    IllDefinedHom,
    ValidationError,
    cyclic,
    free_group,
    from_invariants,
    hom_group,
    make_group,
    make_hom,
    zero_group,
)
from .ext import ExtClass, ExtGroup, baer_sum, classify, ext_group, ext_pullback, ext_pushout, split_over_free
from .fibseq import fibre_sequence_check
from .linalg import IntMatrix, hnf, snf, solve_integer
from .pullpush import mixed_char, pullback, pushout
from .ses import SES, PathData, find_path_data, make_ses, trivial_ses
from .six_term import six_term
from .splice import ESChain, ZigZag, basepoint, check_zig, les_check, splice, splice_swap, trivialize_splice

__version__ = "0.1.0"

__all__ = [
    "AbGroup", "Hom", "IllDefinedHom", "ValidationError", "cyclic", "free_group", "from_invariants",
    "hom_group", "make_group", "make_hom", "zero_group",
    "ExtClass", "ExtGroup", "baer_sum", "classify", "ext_group", "ext_pullback", "ext_pushout",
    "split_over_free", "fibre_sequence_check", "IntMatrix", "hnf", "snf", "solve_integer",
    "mixed_char", "pullback", "pushout", "SES", "PathData", "find_path_data", "make_ses", "trivial_ses",
    "six_term", "ESChain", "ZigZag", "basepoint", "check_zig", "les_check", "splice", "splice_swap",
    "trivialize_splice",
]
