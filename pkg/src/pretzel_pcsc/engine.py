"""The cosmetic-surgery decision pipeline and its exhaustive searches.

``check_pcsc`` runs one knot through the obstruction chain and returns an
ObstructionReport with the verdict, every invariant that was computed, and
the citation chain justifying the verdict.  A ``Residual`` verdict means no
obstruction applied; it must never occur for a valid pretzel knot, and the
sweeps assert that it does not.

Routing is deliberately conservative about genus: the genus gates are only
taken when the genus value is exact (3-strand and all-odd formulas, and the
even-first bound without +-1 parameters).  Knots whose genus is only
bounded are sent through the Conway-coefficient obstruction first, which is
sound regardless of genus and matches how the residual families are
disposed of by hand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .conway import SymmetricValues, a2_even_first, five_strand_a2, five_strand_w3_printed
from .errors import NotAKnot, Unsupported
from .genus import delta_gradings, genus, hanselman_q_bound, tau_nonzero, thickness_of
from .jones import w3_oracle
from .laurent import Rational
from .pretzel import (
    NormalizationTrace,
    ParamsLike,
    PretzelParams,
    Terminal,
    as_params,
    classify,
    dihedral_canonical,
    dihedral_key,
    normalize,
)

#: Crossing bound below which the verified-small-knot citation applies.
SMALL_KNOT_CROSSINGS = 16

#: For all-odd knots, w3 uses the bracket oracle up to this many crossings
#: and the (equally exact, acceptance-verified) closed form beyond it.
W3_BRACKET_CUTOFF = 15

CITATIONS = {
    "unknot": "trivial knot: the conjecture concerns nontrivial knots",
    "torus": "torus knots: classification of Seifert fibered spaces",
    "two_bridge": "2-bridge knots: verified by Ichihara-Jong-Mattman-Saito",
    "small": "prime knots with at most 16 crossings: verified by Hanselman",
    "wang": "genus-one knots: Wang",
    "thickness": "thickness <= 1 and genus != 2: Hanselman slope bound",
    "tau": "tau != 0: Ni-Wu",
    "a2": "a2 != 0: Boyer-Lines",
    "w3": "a2 = 0 and w3 != 0: Ichihara-Wu",
}


@dataclass(frozen=True)
class SlopeConstraint:
    """Slopes q with q^2 = -1 (mod p): the only cosmetic candidates."""

    p: int
    q_cap: int
    admissible_q: tuple[int, ...]


def niwu_slopes(p: int, q_cap: int) -> SlopeConstraint:
    """Exhaustive list of q <= q_cap with q^2 = -1 (mod p)."""
    if p < 1:
        raise ValueError("p must be a positive integer")
    qs = tuple(q for q in range(1, q_cap + 1) if (q * q + 1) % p == 0)
    return SlopeConstraint(p=p, q_cap=q_cap, admissible_q=qs)


@dataclass(frozen=True)
class ObstructionReport:
    """Verdict for one parameter sequence, with its justification."""

    input: PretzelParams
    normalized: NormalizationTrace
    verdict: str
    invariants: dict
    citations: tuple[str, ...]
    notes: tuple[str, ...] = ()


# Verdict vocabulary: HoldsByCitation, HoldsByGenusThickness, HoldsByTau,
# HoldsByA2, HoldsByW3, Residual.  Residual must never occur for a valid
# pretzel knot; the sweeps treat any occurrence as a failure.
VERDICT_RESIDUAL = "Residual"


def _report(p, trace, verdict, invariants, citations, notes=()):
    return ObstructionReport(
        input=p,
        normalized=trace,
        verdict=verdict,
        invariants=invariants,
        citations=tuple(citations),
        notes=tuple(notes),
    )


def _thickness_report(p, trace, norm, inv, g, rich):
    th = thickness_of(norm.params)
    inv["thickness"] = th
    # genus >= 3 leaves no admissible slope q; this branch is never taken
    # with g = 2, so a nonempty list would be a routing bug.
    if th + 2 * g.value >= 2 * g.value * (g.value - 1):
        raise AssertionError(f"thickness route taken with admissible slopes: {p}")
    if rich:
        grad = delta_gradings(norm)
        inv["delta_values"] = sorted(str(v) for v in grad.values)
        qb = hanselman_q_bound(th, g.value)
        inv["q_bound"] = str(qb.bound)
        inv["admissible_q"] = list(qb.admissible_q)
    return _report(p, trace, "HoldsByGenusThickness", inv, [CITATIONS["thickness"]])


def _a2_track(p, trace, norm, inv, a2_value, cap=None):
    """Conway-coefficient obstructions: valid for any genus."""
    inv["a2"] = a2_value
    if a2_value != 0:
        return _report(p, trace, "HoldsByA2", inv, [CITATIONS["a2"]])
    if all(a % 2 for a in norm.params):
        w3, source = w3_oracle(norm, cap=W3_BRACKET_CUTOFF)
    else:
        w3, source = w3_oracle(norm, cap=cap)
    inv["w3"] = str(w3)
    inv["w3_source"] = source
    if norm.n == 5 and all(a % 2 for a in norm):
        printed = five_strand_w3_printed(SymmetricValues.from_params(norm))
        inv["w3_printed_formula"] = str(printed)
    if w3 != 0:
        return _report(p, trace, "HoldsByW3", inv, [CITATIONS["w3"]])
    return _report(p, trace, VERDICT_RESIDUAL, inv, [])


def check_pcsc(p: ParamsLike, cap: int | None = None, rich: bool = True) -> ObstructionReport:
    """Decide the conjecture for one pretzel knot, with citations.

    Raises Unsupported for two or more even parameters and NotAKnot for
    2-component links; every knot input gets a verdict.  ``rich`` adds
    human-oriented extras (grading values, slope bounds) to the invariant
    map; sweeps turn it off.
    """
    p = as_params(p)
    t = p.params
    even_count = sum(1 for a in t if a % 2 == 0)
    odd_n = len(t) % 2
    if even_count >= 2:
        raise Unsupported(f"{p} has two or more even parameters")
    if even_count == 0 and not odd_n:
        raise NotAKnot(f"{p} is a 2-component link")
    cls = classify(p)

    trace = normalize(p)
    inv: dict = {
        "parity_class": cls.value,
        "crossing_bound": sum(abs(a) for a in t),
    }

    if trace.is_terminal:
        term: Terminal = trace.result
        inv["terminal"] = term.describe()
        if term.is_unknot:
            return _report(p, trace, "HoldsByCitation", inv, [CITATIONS["unknot"]])
        if term.components != 1:
            raise NotAKnot(f"{p} normalizes to {term.describe()}")
        return _report(p, trace, "HoldsByCitation", inv, [CITATIONS["torus"]])

    norm: PretzelParams = trace.result
    nt = norm.params
    inv["normalized"] = list(nt)
    cb = sum(abs(a) for a in nt)
    inv["crossing_bound_normalized"] = cb

    if cb <= SMALL_KNOT_CROSSINGS:
        return _report(
            p, trace, "HoldsByCitation", inv, [CITATIONS["small"]],
            ["primality of the normalized pretzel knot is assumed, not verified"],
        )

    evens = [i for i, a in enumerate(nt) if a % 2 == 0]

    if not evens:
        # all-odd: Gabai genus (n-1)/2 exactly (n = 3 is Kim-Lee's case 1)
        g = genus(norm)
        inv["genus"] = g.value
        inv["genus_exact"] = g.exact
        inv["genus_source"] = g.source
        if g.value == 1:
            return _report(p, trace, "HoldsByCitation", inv, [CITATIONS["wang"]])
        if g.value != 2:
            return _thickness_report(p, trace, norm, inv, g, rich)
        # n = 5: the genus-2 case
        cert = tau_nonzero(norm)
        inv["neg_count"] = cert.neg_count
        inv["pos_count"] = cert.pos_count
        if cert.certified:
            return _report(p, trace, "HoldsByTau", inv, [CITATIONS["tau"]])
        return _a2_track(
            p, trace, norm, inv,
            five_strand_a2(SymmetricValues.from_params(norm)), cap=cap,
        )

    # Even-first knots whose odd parameters are all +-1 are 2-bridge.
    tail = [a for i, a in enumerate(nt) if i != evens[0]]
    if len(nt) >= 4 and all(abs(a) == 1 for a in tail):
        return _report(p, trace, "HoldsByCitation", inv, [CITATIONS["two_bridge"]])

    trusted = len(nt) % 2 == 1 or len({1 if a > 0 else -1 for a in tail}) == 1
    if trusted:
        g = genus(norm)
        inv["genus"] = g.value
        inv["genus_exact"] = g.exact
        inv["genus_source"] = g.source
        if g.exact:
            if g.value == 1:
                return _report(p, trace, "HoldsByCitation", inv, [CITATIONS["wang"]])
            if g.value != 2:
                return _thickness_report(p, trace, norm, inv, g, rich)
            return _a2_track(p, trace, norm, inv, _a2_even(norm), cap=cap)
        # bound only (+-1 parameters): the Conway obstruction is sound
        # for any genus, so try it before falling back on the bound.
        return _a2_or_genus_fallback(p, trace, norm, inv, cap, rich)
    # n even with mixed-sign tail: the printed bound cases are unreliable
    # here, so go straight to the Conway obstruction.
    return _a2_or_genus_fallback(p, trace, norm, inv, cap, rich)


def _a2_even(norm: PretzelParams) -> int:
    rot_at = next(i for i, a in enumerate(norm) if a % 2 == 0)
    rotated = norm.params[rot_at:] + norm.params[:rot_at]
    return a2_even_first(rotated)


def _a2_or_genus_fallback(p, trace, norm, inv, cap, rich):
    a2_value = _a2_even(norm)
    inv["a2"] = a2_value
    if a2_value != 0:
        return _report(p, trace, "HoldsByA2", inv, [CITATIONS["a2"]])
    # a2 vanishes: now it is worth computing the genus from the Conway
    # polynomial span.  The span is a true lower bound whatever the sign
    # pattern, so >= 3 safely rules out genus 2; anything lower stays on
    # the Conway/Jones obstruction track rather than trusting a bound.
    g = genus(norm)
    inv["genus"] = g.value
    inv["genus_exact"] = g.exact
    inv["genus_source"] = g.source
    if g.value >= 3:
        return _thickness_report(p, trace, norm, inv, g, rich)
    return _a2_track(p, trace, norm, inv, a2_value, cap=cap)


# -- enumeration -------------------------------------------------------


def _canonical_key(t: tuple[int, ...]) -> tuple[int, ...]:
    return min(dihedral_key(t), dihedral_key(tuple(-a for a in t)))


def iter_all_odd_knots(n: int, max_abs: int) -> Iterator[tuple[int, ...]]:
    """Canonical all-odd knot sequences, deduplicated by symmetry + mirror.

    Canonical keys start with -M where M is the largest magnitude, so the
    enumeration fixes the first entry per magnitude class instead of
    walking the full box.
    """
    if n % 2 == 0:
        return
    if n == 1:
        for m in range(1, max_abs + 1, 2):
            yield (m,)
        return
    for m in range(1, max_abs + 1, 2):
        rest = [a for a in range(-m, m + 1) if a % 2]
        head = (-m,)
        for body in itertools.product(rest, repeat=n - 1):
            t = head + body
            if t == _canonical_key(t):
                yield t


def iter_even_first_knots(n: int, max_abs: int) -> Iterator[tuple[int, ...]]:
    """Canonical one-even knot sequences, the even parameter first.

    Every knot with exactly one even parameter has a dihedral
    representative with it in front; a positive even entry quotients out
    the mirror, and the lesser of tail/reversed-tail the reflection.
    """
    evens = [a for a in range(2, max_abs + 1, 2)]
    odd = [a for a in range(-max_abs, max_abs + 1) if a % 2]
    for a1 in evens:
        for tail in itertools.product(odd, repeat=n - 1):
            if tail > tail[::-1]:
                continue
            yield (a1,) + tail


def iter_knots(max_n: int, max_abs: int) -> Iterator[tuple[int, ...]]:
    for n in range(1, max_n + 1):
        if n % 2:
            yield from iter_all_odd_knots(n, max_abs)
        if n >= 2:
            yield from iter_even_first_knots(n, max_abs)


# -- searches ----------------------------------------------------------


@dataclass
class ResidualRecord:
    """One tuple on the a2 = 0 locus, with everything the argument needs."""

    params: tuple[int, ...]
    s1: int
    s2: int
    s3: int
    a2: int
    w3: Rational
    w3_source: str
    w3_printed: Rational
    sum_sq_identity: bool   # sum a_i^2 == S^2 + 4
    sum_cube_identity: bool  # sum a_i^3 == S^3
    s3_constraint: bool      # s3 == s1 + 2


@dataclass
class ResidualSearchReport:
    max_abs: int
    tuples_checked: int
    a2_zero_records: list[ResidualRecord] = field(default_factory=list)
    residual: list[tuple[int, ...]] = field(default_factory=list)
    case2_tuples_checked: int = 0
    case2_zeroes: int = 0


def iter_five_strand_residual_locus(max_abs: int) -> Iterator[tuple[int, ...]]:
    """5-strand all-odd tuples with 2 or 3 negatives, up to symmetry.

    Mirror normalization keeps the majority sign positive (so exactly two
    negatives), dihedral_canonical removes rotations and reflections after
    +-1 entries are commuted to the end, and tuples containing the
    cancelling pair {1,-1} are excluded.
    """
    odd = [a for a in range(-max_abs, max_abs + 1) if a % 2]
    seen = set()
    for t in itertools.product(odd, repeat=5):
        neg = sum(1 for a in t if a < 0)
        if neg != 2:
            continue
        if 1 in t and -1 in t:
            continue
        units_last = tuple(a for a in t if abs(a) != 1) + tuple(
            a for a in t if abs(a) == 1
        )
        key = dihedral_canonical(PretzelParams(units_last)).params
        if key in seen:
            continue
        seen.add(key)
        yield key


def residual_search(max_abs: int = 15, cap: int = 15) -> ResidualSearchReport:
    """Exhaust the five-strand residual case analysis.

    Verifies that no 5-strand all-odd knot with 2 or 3 negative parameters
    and |a_i| <= max_abs has both a2 = 0 and w3 = 0, and that on the
    a2 = 0 locus the power-sum identities characterize w3 = 0.

    w3 comes from the bracket oracle up to ``cap`` crossings and from the
    closed-form Jones polynomial beyond it (both exact; the acceptance
    suite proves them equal on the shared range).  Each record carries its
    source.
    """
    if max_abs < 5:
        raise ValueError("max_abs must be at least 5")
    report = ResidualSearchReport(max_abs=max_abs, tuples_checked=0)
    for t in iter_five_strand_residual_locus(max_abs):
        report.tuples_checked += 1
        sym = SymmetricValues.from_params(t)
        a2 = five_strand_a2(sym)
        if a2 != 0:
            continue
        w3, source = w3_oracle(t, cap=cap)
        printed = five_strand_w3_printed(sym)
        s = sum(t)
        rec = ResidualRecord(
            params=t,
            s1=sym.s1, s2=sym.s2, s3=sym.s3,
            a2=a2,
            w3=w3, w3_source=source, w3_printed=printed,
            sum_sq_identity=sum(a * a for a in t) == s * s + 4,
            sum_cube_identity=sum(a ** 3 for a in t) == s ** 3,
            s3_constraint=sym.s3 == sym.s1 + 2,
        )
        report.a2_zero_records.append(rec)
        if w3 == 0:
            report.residual.append(t)

    # The two-positive sign pattern: with a1 = a2 = 1 forced, the combined
    # constraint polynomial 2k3k4k5 + k3k4 + k3k5 + k4k5 - 1 must not
    # vanish for k_i <= -2 (entries <= -3; -1 entries would cancel).
    k_range = range(-(max_abs + 1) // 2, -1)
    for k3, k4, k5 in itertools.product(k_range, repeat=3):
        combined = 2 * k3 * k4 * k5 + k3 * k4 + k3 * k5 + k4 * k5 - 1
        regrouped = k3 * k4 * (k5 + 1) + k3 * k5 * (k4 + 1) + k4 * k5 - 1
        if combined != regrouped:
            raise AssertionError("regrouped constraint polynomial differs")
        report.case2_tuples_checked += 1
        if combined == 0:
            report.case2_zeroes += 1
    return report


@dataclass
class SweepReport:
    max_abs: int
    max_n: int
    total: int
    residual: list[tuple[int, ...]]
    verdict_counts: dict
    rows: list[dict]


class _SweepWorker:
    """Picklable per-knot evaluator returning a compact result tuple."""

    def __init__(self, cap):
        self.cap = cap

    def __call__(self, t):
        rep = check_pcsc(t, cap=self.cap, rich=False)
        inv = rep.invariants
        return (
            t,
            rep.verdict,
            inv.get("parity_class", ""),
            inv.get("crossing_bound", ""),
            inv.get("genus", ""),
            inv.get("thickness", ""),
            inv.get("a2", ""),
            inv.get("w3", ""),
            "; ".join(rep.citations),
        )


def iter_sweep_results(
    max_abs: int, max_n: int, cap: int | None = None, jobs: int | None = None
) -> Iterator[tuple]:
    """Compact verdict tuples for every knot, in enumeration order.

    ``jobs=None`` uses one worker per CPU; results arrive in the same
    deterministic order regardless of the worker count.
    """
    worker = _SweepWorker(cap)
    knots = iter_knots(max_n, max_abs)
    if jobs is None:
        import os

        jobs = os.cpu_count() or 1
    if jobs > 1:
        import multiprocessing as mp

        with mp.Pool(jobs) as pool:
            yield from pool.imap(worker, knots, chunksize=512)
    else:
        for t in knots:
            yield worker(t)


def main_theorem_sweep(
    max_abs: int = 9,
    max_n: int = 7,
    cap: int | None = None,
    collect_rows: bool = True,
    jobs: int | None = 1,
) -> SweepReport:
    """check_pcsc over every deduplicated pretzel knot in the box.

    Tabulates verdicts by (n, parity class, verdict) and optionally
    collects one row per knot; any Residual verdict is recorded and makes
    the caller fail.
    """
    counts: dict = {}
    rows: list[dict] = []
    residual: list[tuple[int, ...]] = []
    total = 0
    for t, verdict, cls, cb, g, th, a2, w3, citation in iter_sweep_results(
        max_abs, max_n, cap=cap, jobs=jobs
    ):
        total += 1
        key = (len(t), cls, verdict)
        counts[key] = counts.get(key, 0) + 1
        if verdict == VERDICT_RESIDUAL:
            residual.append(t)
        if collect_rows:
            rows.append(
                {
                    "params": "(" + ",".join(str(a) for a in t) + ")",
                    "n": len(t),
                    "class": cls,
                    "crossing_bound": cb,
                    "genus": g,
                    "thickness": th,
                    "a2": a2,
                    "w3": w3,
                    "verdict": verdict,
                    "citation": citation,
                }
            )
    if collect_rows:
        rows.sort(key=lambda r: (r["n"], r["params"]))
    counts_out = {
        f"n={n}|{cls}|{verdict}": v for (n, cls, verdict), v in sorted(counts.items())
    }
    return SweepReport(
        max_abs=max_abs,
        max_n=max_n,
        total=total,
        residual=residual,
        verdict_counts=counts_out,
        rows=rows,
    )
