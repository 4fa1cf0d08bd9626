"""Exact pretzel-knot invariants and the cosmetic-surgery obstruction pipeline."""

from .conway import (
    ConwayPoly,
    SymmetricValues,
    W3Audit,
    a2_even_first,
    conway,
    conway_all_odd,
    conway_even_first,
    conway_link,
    five_strand_a2,
    five_strand_w3,
    torus_conway,
)
from .engine import (
    ObstructionReport,
    SlopeConstraint,
    check_pcsc,
    main_theorem_sweep,
    niwu_slopes,
    residual_search,
)
from .errors import (
    BadShape,
    CapExceeded,
    GenusTooSmall,
    NotAKnot,
    NotAKnotPolynomial,
    NotAllOdd,
    NotDivisible,
    OddExponent,
    ParseError,
    PretzelError,
    Unnormalized,
    Unsupported,
    ZeroParameter,
)
from .genus import (
    DeltaGradings,
    GenusResult,
    TauCertificate,
    delta_gradings,
    genus,
    hanselman_q_bound,
    tau_nonzero,
)
from .jones import (
    JonesDerived,
    bracket_jones,
    jones_closed,
    jones_derived,
    jones_polynomial,
    w3_oracle,
)
from .laurent import LaurentPoly, Rational
from .pretzel import (
    NormalizationTrace,
    ParityClass,
    PretzelParams,
    Terminal,
    TerminalKind,
    classify,
    crossing_bound,
    dihedral_canonical,
    mirror,
    normalize,
    parse_params,
)

__version__ = "0.1.0"
