from ._core import (
    CccError,
    Chain,
    ConsistencyFailure,
    GuardExceeded,
    HypothesisViolated,
    LengthMismatch,
    NotAMember,
    ParseError,
    dplus,
    eds,
    euclidean_partners,
    gu,
    gu_search,
    is_lattice,
    kissing,
    nearest,
    nsm,
    partner_bruteforce,
    partner_lemma1,
    presets,
    run_cli,
    spectrum,
    theorem1,
)

__all__ = [name for name in dir() if not name.startswith("_")]
