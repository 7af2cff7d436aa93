"""Watson-Crick (theta-) conjugacy of words and languages."""

from .automata import (
    Dfa,
    FreenessStatus,
    FreenessVerdict,
    build_theta_image_dfa,
    contains_theta_palindrome,
    decide_theta_conjugate_freeness,
    format_dfa,
    parse_dfa,
    theta_conjugate_closure_dfa,
)
from .conjugacy import (
    EqualityCase,
    EqualityVerdict,
    classical_conjugates,
    conjugate_set_report,
    conjugate_sets_equal,
    is_theta_conjugate,
    theta_conjugates,
    theta_conjugates_incremental,
)
from .errors import *  # noqa: F401,F403
from .grammars import (
    Grammar,
    PcpInstance,
    Production,
    enumerate_bounded,
    find_conjugate_pair,
    format_grammar,
    parse_grammar,
    pcp_to_grammar,
    reverse_grammar,
    wc_conjugate_grammar,
)
from .iterated import (
    closure_report,
    closure_set,
    closure_size,
    iterate_conjugates,
    paired_parikh,
    stabilization_index,
)
from .words import (
    Alphabet,
    Involution,
    WordSet,
    apply_theta,
    is_theta_palindrome,
    parse_involution_spec,
    primitive_root,
    validate_involution,
)

__version__ = "0.1.0"
