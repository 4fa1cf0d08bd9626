"""Pretzel parameter sequences: validation, reduction moves, symmetry.

A pretzel link is described by an ordered sequence of nonzero integers
(a1, ..., an), the signed half-twist counts of its n vertical strands.
Order matters; the sequence is only changed by the dihedral action on the
strands, by commuting +-1 entries, and by the two strand-count reductions
implemented in :func:`normalize`.

``dihedral_canonical`` is for search deduplication only; it is not a
knot-equivalence decision procedure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Union

from .errors import ParseError, ZeroParameter


@dataclass(frozen=True)
class PretzelParams:
    """An ordered sequence of nonzero twist parameters."""

    params: tuple[int, ...]

    def __post_init__(self):
        if len(self.params) < 1:
            raise ZeroParameter("a pretzel needs at least one strand")
        object.__setattr__(self, "params", tuple(int(a) for a in self.params))
        for a in self.params:
            if a == 0:
                raise ZeroParameter(
                    "zero twist parameter: the diagram splits into a "
                    "connected sum of torus knots (conjecture known for "
                    "connected sums); rejected at construction"
                )

    @property
    def n(self) -> int:
        return len(self.params)

    def __iter__(self):
        return iter(self.params)

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.params) + ")"


ParamsLike = Union[PretzelParams, Iterable[int]]


def as_params(p: ParamsLike) -> PretzelParams:
    if isinstance(p, PretzelParams):
        return p
    return PretzelParams(tuple(p))


_PARAMS_RE = re.compile(r"^\(([-+0-9,\s]*)\)$")


def parse_params(text: str) -> PretzelParams:
    """Parse the CLI syntax "(a1,a2,...,an)"; whitespace is ignored."""
    stripped = "".join(text.split())
    m = _PARAMS_RE.match(stripped)
    if not m:
        raise ParseError(f"cannot parse parameter list: {text!r}")
    body = m.group(1)
    if not body:
        raise ParseError("empty parameter list")
    try:
        values = tuple(int(tok) for tok in body.split(","))
    except ValueError as exc:
        raise ParseError(f"bad integer in parameter list: {text!r}") from exc
    return PretzelParams(values)


class ParityClass(Enum):
    """Orientation/component case of a parameter sequence."""

    ALL_ODD_ODD_N = "AllOddOddN"            # case I: knot
    ONE_EVEN_ODD_N = "OneEvenOddN"          # case II: knot
    ONE_EVEN_EVEN_N = "OneEvenEvenN"        # case III: knot
    TWO_COMPONENT = "TwoComponentAllOddEvenN"
    UNSUPPORTED = "Unsupported"

    @property
    def is_knot(self) -> bool:
        return self in (
            ParityClass.ALL_ODD_ODD_N,
            ParityClass.ONE_EVEN_ODD_N,
            ParityClass.ONE_EVEN_EVEN_N,
        )

    @property
    def components(self) -> int | None:
        if self.is_knot:
            return 1
        if self is ParityClass.TWO_COMPONENT:
            return 2
        return None


def classify(p: ParamsLike) -> ParityClass:
    p = as_params(p)
    evens = sum(1 for a in p if a % 2 == 0)
    odd_n = p.n % 2 == 1
    if evens == 0:
        return ParityClass.ALL_ODD_ODD_N if odd_n else ParityClass.TWO_COMPONENT
    if evens == 1:
        return ParityClass.ONE_EVEN_ODD_N if odd_n else ParityClass.ONE_EVEN_EVEN_N
    return ParityClass.UNSUPPORTED


def mirror(p: ParamsLike) -> PretzelParams:
    """Mirror image: negate every twist parameter."""
    return PretzelParams(tuple(-a for a in as_params(p)))


def crossing_bound(p: ParamsLike) -> int:
    """Crossing count of the standard diagram: sum of |ai|."""
    return sum(abs(a) for a in as_params(p))


def dihedral_key(t: tuple[int, ...]) -> tuple[int, ...]:
    """Tuple-level dihedral canonical form (no validation), for hot loops."""
    n = len(t)
    best = t
    for seq in (t, t[::-1]):
        for r in range(n):
            cand = seq[r:] + seq[:r]
            if cand < best:
                best = cand
    return best


def dihedral_canonical(p: ParamsLike) -> PretzelParams:
    """Lexicographically least sequence over all rotations and reflections.

    Deduplication key for searches; rotations and reflections of the strand
    sequence give the same link.
    """
    return PretzelParams(dihedral_key(as_params(p).params))


# -- normalization ---------------------------------------------------


class TerminalKind(Enum):
    UNKNOT = "unknot"
    TORUS = "torus"          # T(2, m); m = 0 is the 2-component unlink
    CONNECTED_SUM = "connected_sum"


@dataclass(frozen=True)
class Terminal:
    """A recognized endpoint of normalization, no longer a pretzel sequence."""

    kind: TerminalKind
    torus_m: int | None = None
    summands: tuple[int, ...] = ()

    @property
    def is_unknot(self) -> bool:
        if self.kind is TerminalKind.UNKNOT:
            return True
        return self.kind is TerminalKind.TORUS and self.torus_m in (-1, 1)

    @property
    def components(self) -> int:
        if self.kind is TerminalKind.TORUS:
            return 1 if self.torus_m % 2 else 2
        return 1

    def describe(self) -> str:
        if self.kind is TerminalKind.UNKNOT:
            return "unknot"
        if self.kind is TerminalKind.TORUS:
            m = self.torus_m
            if m in (-1, 1):
                return f"T(2,{m}) = unknot"
            if m == 0:
                return "T(2,0) = 2-component unlink"
            return f"torus link T(2,{m})"
        inner = " # ".join(f"T(2,{a})" for a in self.summands)
        return f"connected sum {inner}"


@dataclass(frozen=True)
class Move:
    """One applied reduction move, recorded for audit."""

    kind: str
    before: tuple[int, ...]
    after: tuple[int, ...]


@dataclass(frozen=True)
class NormalizationTrace:
    result: Union[PretzelParams, Terminal]
    moves: tuple[Move, ...] = field(default_factory=tuple)

    @property
    def is_terminal(self) -> bool:
        return isinstance(self.result, Terminal)


def _collect_units_last(seq: list[int]) -> list[int]:
    """Move every +-1 entry to the end, preserving relative orders."""
    body = [a for a in seq if abs(a) != 1]
    units = [a for a in seq if abs(a) == 1]
    return body + units


def normalize(p: ParamsLike) -> NormalizationTrace:
    """Apply the three reduction moves until none applies.

    Per pass (only while >= 3 strands remain): +-1 entries are collected at
    the end of the sequence (they commute with any strand), one (1,-1) pair
    is cancelled if present, and one (2,-1) -> (-2) or (-2,1) -> (2) rewrite
    is applied if possible.

    A remainder of length <= 2 is emitted as a Terminal.  Length 2 is the
    torus link T(2,a+b) (the 2-strand pretzel closes into a single twist
    region).  Length 1 is the unknot: the 1-strand closure caps the twist
    region top and bottom, so all twists unwind.  Component parity forces
    this, e.g. the knot (2,-1,1) cancels down to (2), which must still be a
    knot and hence cannot be the torus link T(2,2).
    """
    start = as_params(p)
    # fast path: nothing to do for the bulk of sweep inputs
    t = start.params
    if len(t) >= 3:
        has_one, has_neg_one = 1 in t, -1 in t
        no_rewrites = (
            not (has_one and has_neg_one)
            and not (2 in t and has_neg_one)
            and not (-2 in t and has_one)
        )
        if no_rewrites and (
            not (has_one or has_neg_one)
            or list(t) == _collect_units_last(list(t))
        ):
            return NormalizationTrace(start, ())

    seq = list(start.params)
    moves: list[Move] = []

    def record(kind: str, before: list[int], after: list[int]) -> None:
        moves.append(Move(kind, tuple(before), tuple(after)))

    while len(seq) >= 3:
        collected = _collect_units_last(seq)
        if collected != seq:
            record("collect_units", seq, collected)
            seq = collected
        if 1 in seq and -1 in seq:
            after = list(seq)
            after.remove(1)
            after.remove(-1)
            record("cancel_pair", seq, after)
            seq = after
            continue
        if 2 in seq and -1 in seq:
            after = list(seq)
            after.remove(-1)
            after[after.index(2)] = -2
            record("two_minus_one", seq, after)
            seq = after
            continue
        if -2 in seq and 1 in seq:
            after = list(seq)
            after.remove(1)
            after[after.index(-2)] = 2
            record("minus_two_one", seq, after)
            seq = after
            continue
        break

    if len(seq) >= 3:
        return NormalizationTrace(PretzelParams(tuple(seq)), tuple(moves))
    if len(seq) == 1:
        terminal = Terminal(TerminalKind.UNKNOT)
    else:
        terminal = Terminal(TerminalKind.TORUS, torus_m=seq[0] + seq[1])
    return NormalizationTrace(terminal, tuple(moves))


FORBIDDEN_SUBSETS = ({1, -1}, {2, -1}, {-2, 1})


def is_normalized(p: ParamsLike) -> bool:
    """True when none of the forbidden sub-multisets occurs and n >= 3."""
    t = as_params(p).params
    if len(t) < 3:
        return False
    present = set(t)
    return not any(f <= present for f in FORBIDDEN_SUBSETS)
