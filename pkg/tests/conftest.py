import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def all_odd_normalized(n, max_abs, max_sum=None):
    """All-odd knot tuples without the cancelling pair, for grid tests."""
    odd = [a for a in range(-max_abs, max_abs + 1) if a % 2]
    out = []
    for t in itertools.product(odd, repeat=n):
        if 1 in t and -1 in t:
            continue
        if max_sum is not None and sum(abs(a) for a in t) > max_sum:
            continue
        out.append(t)
    return out


def even_first_normalized(n, max_abs, max_sum=None, allow_units=True):
    """One-even knot tuples (even first) obeying the reduction exclusions."""
    odds = [a for a in range(-max_abs, max_abs + 1) if a % 2]
    if not allow_units:
        odds = [a for a in odds if abs(a) != 1]
    out = []
    for e in range(-max_abs, max_abs + 1):
        if e % 2 or e == 0:
            continue
        for tail in itertools.product(odds, repeat=n - 1):
            t = (e,) + tail
            vals = set(t)
            if {1, -1} <= vals or {2, -1} <= vals or {-2, 1} <= vals:
                continue
            if max_sum is not None and sum(abs(a) for a in t) > max_sum:
                continue
            out.append(t)
    return out


@pytest.fixture(scope="session")
def small_all_odd_knots():
    knots = []
    for n in (1, 3, 5):
        knots.extend(all_odd_normalized(n, 7, max_sum=11))
    return knots
