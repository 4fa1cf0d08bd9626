"""Jones polynomials of pretzel diagrams, two independent ways.

``jones_closed`` evaluates a closed-form state sum over bit vectors
v in {0,1}^n for all-odd parameter sequences.  ``bracket_jones`` is a
deliberately dumb, fully independent oracle: it enumerates all 2^c Kauffman
bracket resolutions of the standard n-strand pretzel diagram, counts the
resulting loops, and applies the writhe normalization.  The two must agree
exactly wherever both apply; that equality is part of the acceptance suite.

Conventions.  The skein normalization is
t^-1 V(L+) - t V(L-) = (t^1/2 - t^-1/2) V(L0) with V(unknot) = 1, and
s = t^1/2.  The closed form sends (1,1,1) to t^-1 + t^-3 - t^-4; the bracket
smoothing and over-strand conventions below are calibrated once so that
bracket_jones((1,1,1)) equals that value, and are then frozen.  Whether that
trefoil is called left- or right-handed by any external table is not
asserted anywhere.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadShape, CapExceeded, NotAKnot, NotAllOdd, NotAKnotPolynomial, NotDivisible
from .laurent import UNLINK_FACTOR, LaurentPoly, Rational
from .pretzel import ParamsLike, as_params, classify, crossing_bound

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


#: Default crossing cap for the 2^c state sum (~16.7M states, under a minute).
DEFAULT_BRACKET_CAP = 24

_CAP_ENV = "PRETZEL_PCSC_BRACKET_CAP"


def bracket_cap() -> int:
    raw = os.environ.get(_CAP_ENV)
    if raw is None:
        return DEFAULT_BRACKET_CAP
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_BRACKET_CAP


# -- closed form -------------------------------------------------------


def term_P(v_bit: int, k: int) -> LaurentPoly:
    """The per-strand factor of the closed-form state sum.

    v_bit = 0 gives -s^(-2k); v_bit = 1 gives the alternating geometric
    sum of |k| terms (exponents 1-2j for k > 0, -1+2j for k < 0).
    """
    if k == 0:
        raise BadShape("twist parameter 0 has no strand factor")
    if v_bit == 0:
        return LaurentPoly.monomial(-1, -2 * k)
    if v_bit != 1:
        raise BadShape("state bit must be 0 or 1")
    coeffs = {}
    if k > 0:
        for j in range(1, k + 1):
            e = 1 - 2 * j
            coeffs[e] = coeffs.get(e, 0) + (-1) ** j
    else:
        for j in range(1, -k + 1):
            e = -1 + 2 * j
            coeffs[e] = coeffs.get(e, 0) + (-1) ** j
    return LaurentPoly(coeffs)


def jones_closed(p: ParamsLike) -> LaurentPoly:
    """Closed-form Jones polynomial W(s) of an all-odd pretzel knot.

    Sums (-s - s^-1)^d(v) * prod_i P(v_i, a_i) over v in {0,1}^n with
    d(v) = |(n-1) - sum(v)|.  Requires every a_i odd and n odd (a knot);
    sequences containing the cancelling pair {1,-1} are rejected, since the
    formula presupposes the standard reduction moves have been applied.
    """
    p = as_params(p)
    for a in p:
        if a % 2 == 0:
            raise NotAllOdd(f"{p} has an even parameter; closed form does not apply")
    if p.n % 2 == 0:
        raise NotAKnot(f"{p} is a 2-component link")
    values = set(p.params)
    if 1 in values and -1 in values:
        raise BadShape(
            f"{p} contains the cancelling pair {{1,-1}}; normalize first"
        )

    n = p.n
    factors = [(term_P(0, a), term_P(1, a)) for a in p.params]
    unlink_pow = [LaurentPoly.one()]
    for _ in range(n):
        unlink_pow.append(unlink_pow[-1] * UNLINK_FACTOR)

    total = LaurentPoly.zero()
    for v in range(1 << n):
        ones = v.bit_count()
        term = unlink_pow[abs((n - 1) - ones)]
        for i in range(n):
            term = term * factors[i][(v >> i) & 1]
        total = total + term
    return total


# -- bracket oracle ----------------------------------------------------

# Frozen diagram conventions, calibrated on bracket_jones((1,1,1)) ==
# jones_closed((1,1,1)).  For a positive twist parameter the NE-SW strand
# of each crossing is the over-strand, and the A-smoothing is the vertical
# one (NW-SW, NE-SE); both flip for negative parameters.
_POS_OVER_NWSE = False
_POS_A_IS_VERTICAL = True

# Port numbering within a crossing: 0 = NW, 1 = NE, 2 = SW, 3 = SE.
_H_PAIRS = ((0, 1), (2, 3))  # horizontal smoothing: top cap, bottom cup
_V_PAIRS = ((0, 2), (1, 3))  # vertical smoothing: strands pass side by side


def _build_diagram(p) -> tuple[int, np.ndarray, list[int]]:
    """Standard pretzel diagram: crossing count, fixed-arc matching, signs.

    Region i holds |a_i| crossings stacked vertically; region tops/bottoms
    are joined cyclically (TR_i to TL_{i+1}, BR_i to BL_{i+1}).  For n = 1
    this caps the single region top and bottom.
    """
    counts = [abs(a) for a in p.params]
    c_total = sum(counts)
    nport = 4 * c_total
    F = np.full(nport, -1, dtype=np.int32)
    hands = []
    tl, tr, bl, br = [], [], [], []
    cid = 0
    for i, a in enumerate(p.params):
        c = counts[i]
        first, last = cid, cid + c - 1
        tl.append(4 * first + 0)
        tr.append(4 * first + 1)
        bl.append(4 * last + 2)
        br.append(4 * last + 3)
        for j in range(c):
            hands.append(1 if a > 0 else -1)
            if j < c - 1:
                F[4 * (cid + j) + 2] = 4 * (cid + j + 1) + 0
                F[4 * (cid + j + 1) + 0] = 4 * (cid + j) + 2
                F[4 * (cid + j) + 3] = 4 * (cid + j + 1) + 1
                F[4 * (cid + j + 1) + 1] = 4 * (cid + j) + 3
        cid += c
    n = p.n
    for i in range(n):
        j = (i + 1) % n
        F[tr[i]] = tl[j]
        F[tl[j]] = tr[i]
        F[br[i]] = bl[j]
        F[bl[j]] = br[i]
    return c_total, F, hands


def _orient(F: np.ndarray, hands: list[int]) -> tuple[int, int]:
    """Traverse the underlying curve; return (components, writhe).

    Each crossing has two strand passages (the NW-SE and NE-SW diagonals).
    The crossing sign is det(d_over, d_under) with the usual corner
    direction vectors; for a knot the writhe does not depend on the
    traversal orientation.
    """
    nport = len(F)
    used = bytearray(nport)
    d1 = {}
    d2 = {}
    components = 0
    for start in range(nport):
        if used[start]:
            continue
        components += 1
        port = start
        while True:
            used[port] = 1
            exit_port = port ^ 3  # through the crossing along the diagonal
            used[exit_port] = 1
            cid, corner = divmod(port, 4)
            if corner == 0:
                d1[cid] = 1
            elif corner == 3:
                d1[cid] = -1
            elif corner == 1:
                d2[cid] = 1
            else:
                d2[cid] = -1
            port = int(F[exit_port])
            if port == start:
                break
    vec1 = {1: (1, -1), -1: (-1, 1)}  # NW->SE and back
    vec2 = {1: (-1, -1), -1: (1, 1)}  # NE->SW and back
    writhe = 0
    for cid, h in enumerate(hands):
        v1 = vec1[d1[cid]]
        v2 = vec2[d2[cid]]
        over_is_nwse = _POS_OVER_NWSE if h > 0 else not _POS_OVER_NWSE
        (xo, yo), (xu, yu) = (v1, v2) if over_is_nwse else (v2, v1)
        writhe += 1 if xo * yu - yo * xu > 0 else -1
    return components, writhe


@njit(cache=True)
def _state_sum_counts(c: int, F, tables):  # pragma: no cover - jit kernel
    """Enumerate all 2^c resolutions; bucket states by (#A, loop count).

    Loops are the cycles alternating between the smoothing matching and the
    fixed-arc matching F, found with a stamped walk (a flat union-find over
    the 4c arc endpoints).
    """
    nport = 4 * c
    counts = np.zeros((c + 1, c + 2), dtype=np.int64)
    partner = np.empty(nport, dtype=np.int32)
    stamp = np.zeros(nport, dtype=np.int64)
    for state in range(1 << c):
        cur = state + 1
        a_count = 0
        for cid in range(c):
            bit = (state >> cid) & 1
            if bit == 0:
                a_count += 1
            base = 4 * cid
            partner[base] = tables[cid, bit, 0]
            partner[base + 1] = tables[cid, bit, 1]
            partner[base + 2] = tables[cid, bit, 2]
            partner[base + 3] = tables[cid, bit, 3]
        loops = 0
        for p0 in range(nport):
            if stamp[p0] == cur:
                continue
            loops += 1
            p = p0
            while stamp[p] != cur:
                stamp[p] = cur
                q = partner[p]
                stamp[q] = cur
                p = F[q]
        counts[a_count, loops] += 1
    return counts


def _smoothing_tables(c: int, hands: list[int]) -> np.ndarray:
    tables = np.zeros((c, 2, 4), dtype=np.int32)
    for cid, h in enumerate(hands):
        a_vertical = _POS_A_IS_VERTICAL if h > 0 else not _POS_A_IS_VERTICAL
        for bit in range(2):
            vertical = a_vertical if bit == 0 else not a_vertical
            pairs = _V_PAIRS if vertical else _H_PAIRS
            for x, y in pairs:
                tables[cid, bit, x] = 4 * cid + y
                tables[cid, bit, y] = 4 * cid + x
    return tables


def bracket_jones(p: ParamsLike, cap: int | None = None) -> LaurentPoly:
    """Jones polynomial via the Kauffman bracket state sum, the oracle.

    Enumerates every resolution of the standard diagram, so it is
    exponential in the crossing number and guarded by a cap (default
    DEFAULT_BRACKET_CAP, overridable via the PRETZEL_PCSC_BRACKET_CAP
    environment variable or the ``cap`` argument).
    """
    p = as_params(p)
    cls = classify(p)
    if not cls.is_knot:
        raise NotAKnot(f"{p} is {cls.value}, not a knot")
    limit = cap if cap is not None else bracket_cap()
    c = crossing_bound(p)
    if c > limit:
        raise CapExceeded(f"{c} crossings exceed the state-sum cap {limit}")

    c_total, F, hands = _build_diagram(p)
    components, writhe = _orient(F, hands)
    if components != 1:
        raise NotAKnot(f"{p} has {components} diagram components")

    tables = _smoothing_tables(c_total, hands)
    counts = _state_sum_counts(c_total, F, tables)

    delta = LaurentPoly({2: -1, -2: -1})  # -A^2 - A^-2
    delta_pow = [LaurentPoly.one()]
    for _ in range(c_total + 1):
        delta_pow.append(delta_pow[-1] * delta)

    bracket = LaurentPoly.zero()
    for a_count in range(c_total + 1):
        for loops in range(1, c_total + 2):
            m = int(counts[a_count, loops])
            if m == 0:
                continue
            mono = LaurentPoly.monomial(m, 2 * a_count - c_total)
            bracket = bracket + mono * delta_pow[loops - 1]

    sign = -1 if writhe % 2 else 1
    normalized = LaurentPoly.monomial(sign, -3 * writhe) * bracket

    # A-exponent m corresponds to s^(-m/2) under A = t^(-1/4), s = t^(1/2).
    out = {}
    for a_exp, coeff in normalized.items():
        if a_exp % 2:
            raise AssertionError("odd A-exponent after writhe normalization")
        out[-a_exp // 2] = coeff
    return LaurentPoly(out)


# -- derived quantities -------------------------------------------------


@dataclass(frozen=True)
class JonesDerived:
    """V with its derivative data: V''(1), V'''(1), a2 and w3."""

    V: LaurentPoly
    vpp1: int
    vppp1: int
    a2: int
    w3: Rational


def jones_derived(V: LaurentPoly) -> JonesDerived:
    """Extract V''(1), V'''(1), a2 = -V''(1)/6 and w3 = V'''/72 + V''/24."""
    if V.t_derivative_at_one(0) != 1:
        raise NotAKnotPolynomial(f"V(1) = {V.t_derivative_at_one(0)} != 1")
    vpp = V.t_derivative_at_one(2)
    vppp = V.t_derivative_at_one(3)
    if vpp % 6:
        raise NotDivisible(f"V''(1) = {vpp} is not divisible by 6")
    a2 = -vpp // 6
    w3 = Fraction(vppp, 72) + Fraction(vpp, 24)
    return JonesDerived(V=V, vpp1=vpp, vppp1=vppp, a2=a2, w3=w3)


def jones_polynomial(p: ParamsLike, cap: int | None = None) -> tuple[LaurentPoly, str]:
    """Jones polynomial of a pretzel knot and the method that produced it.

    Uses the bracket oracle when the diagram is within the state-sum cap,
    and the closed form for all-odd knots beyond it (the two are proven
    equal on the shared range by the acceptance suite).
    """
    p = as_params(p)
    cls = classify(p)
    if not cls.is_knot:
        raise NotAKnot(f"{p} is {cls.value}, not a knot")
    limit = cap if cap is not None else bracket_cap()
    if crossing_bound(p) <= limit:
        return bracket_jones(p, cap=limit), "bracket"
    if all(a % 2 for a in p.params):
        return jones_closed(p), "closed_form"
    raise CapExceeded(
        f"{p}: {crossing_bound(p)} crossings exceed cap {limit} and the "
        "closed form needs all-odd parameters"
    )


def w3_oracle(p: ParamsLike, cap: int | None = None) -> tuple[Rational, str]:
    """w3 from Jones derivatives, with the method that produced V."""
    V, source = jones_polynomial(p, cap=cap)
    return jones_derived(V).w3, source
