"""Exact computations with leading ideals of height-2 perfect ideals.

From an admissible Hilbert function the toolkit computes lex-segment
ideals, cancellation-minimal Betti tables of the leading ideal and the
complete-intersection degree sequences, constructs actual ideals by
Hilbert-Burch matrix perturbation, and certifies every prediction with
exact truncated linear algebra over k[[x,y]].
"""

from .betti import BettiTable, Cancellation
from .cancel import (
    CancellationOutcome,
    CISequences,
    SeriesExpansion,
    a_invariant,
    apply,
    ci_schedule,
    ci_sequences,
    di_to_ei,
    ei_to_di,
    enumerate_cancellation_outcomes,
    enumerate_e_choices,
    h_from_sequences,
    min_star_table,
    multiplicity,
    realize_slots,
    series_from_sequences,
)
from .errors import (
    InvalidSequences,
    JumpTooLarge,
    MissingEntry,
    MonotonicityViolation,
    NoSlot,
    NotArtinian,
    NotCIAdmissible,
    NotOSequence,
    SmallOrderWarning,
    TCLabError,
    TruncationTooSmall,
    Unreachable,
)
from .lexseg import (
    MonomialIdeal2,
    ek_betti,
    graded_degrees,
    hb_matrix_lex,
    lex_ideal,
    quotient_hilbert_function,
)
from .localring import (
    Certification,
    GradedSubspace,
    LocalPresentation,
    certify,
    hilbert_function,
    leading_ideal_pieces,
    nu_local,
    star_betti,
)
from .oseq import (
    DiffProfile,
    OSequence,
    diff_profile,
    iarrobino_lower,
    is_ci_admissible,
    lex_upper,
    nu3_window,
    nu_star_lower,
    validate,
)
from .poly import (
    DEFAULT_PRIME,
    BiPoly,
    HilbertBurchMatrix,
    PrimeField,
    RationalField,
    apply_schedule,
    insert_unit,
    matrix_from_json,
    matrix_to_json,
    parse_poly,
    perturb,
    poly_str,
    signed_minors,
)

__version__ = "0.1.0"
