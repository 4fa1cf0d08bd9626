import pytest
from hypothesis import given, strategies as st

from pretzel_pcsc.errors import ParseError, ZeroParameter
from pretzel_pcsc.pretzel import (
    ParityClass,
    PretzelParams,
    TerminalKind,
    classify,
    crossing_bound,
    dihedral_canonical,
    is_normalized,
    mirror,
    normalize,
    parse_params,
)

nonzero = st.integers(-9, 9).filter(lambda a: a != 0)
param_tuples = st.lists(nonzero, min_size=1, max_size=7).map(tuple)


class TestConstruction:
    def test_zero_rejected(self):
        with pytest.raises(ZeroParameter):
            PretzelParams((0, 3, 5))

    def test_empty_rejected(self):
        with pytest.raises(ZeroParameter):
            PretzelParams(())

    def test_parse(self):
        assert parse_params("(-2, 3, 7)").params == (-2, 3, 7)
        assert parse_params(" ( 1 , 1 , 1 ) ").params == (1, 1, 1)

    def test_parse_rejects_garbage(self):
        for bad in ["", "3,5", "(a,b)", "(3;5)", "()"]:
            with pytest.raises(ParseError):
                parse_params(bad)


class TestClassify:
    @pytest.mark.parametrize(
        "params,expected",
        [
            ((3, 5, -7), ParityClass.ALL_ODD_ODD_N),
            ((4, 3, 3), ParityClass.ONE_EVEN_ODD_N),
            ((2, 3, 3, 3), ParityClass.ONE_EVEN_EVEN_N),
            ((3, 3), ParityClass.TWO_COMPONENT),
            ((4, 6, 8), ParityClass.UNSUPPORTED),
            ((2, 4, 3), ParityClass.UNSUPPORTED),
        ],
    )
    def test_examples(self, params, expected):
        assert classify(params) is expected

    @given(param_tuples)
    def test_mirror_preserves_class(self, t):
        assert classify(t) is classify(mirror(t))

    def test_component_counts(self):
        assert classify((3, 5, -7)).components == 1
        assert classify((3, 3)).components == 2
        assert classify((4, 6, 8)).components is None


class TestMirrorAndBound:
    def test_mirror(self):
        assert mirror((3, 5, -7)).params == (-3, -5, 7)
        assert mirror((2, 3, 3)).params == (-2, -3, -3)

    @given(param_tuples)
    def test_mirror_involution(self, t):
        assert mirror(mirror(t)).params == t

    def test_crossing_bound(self):
        assert crossing_bound((-2, 3, 7)) == 12
        assert crossing_bound((1,)) == 1
        assert crossing_bound((3, 3, 3, -3, -3)) == 15


class TestDihedralCanonical:
    def test_examples(self):
        assert dihedral_canonical((3, -5, 3)).params == (-5, 3, 3)
        assert dihedral_canonical((1, 1, 1)).params == (1, 1, 1)
        # least over rotations *and* reflections
        assert dihedral_canonical((7, 3, -2)).params == (-2, 3, 7)

    @given(param_tuples)
    def test_invariant_under_symmetries(self, t):
        canon = dihedral_canonical(t).params
        n = len(t)
        for r in range(n):
            rot = t[r:] + t[:r]
            assert dihedral_canonical(rot).params == canon
        assert dihedral_canonical(t[::-1]).params == canon


class TestNormalize:
    def test_rewrite_to_unknot(self):
        trace = normalize((2, -1, 3))
        assert trace.is_terminal
        assert trace.result.is_unknot

    def test_unit_cancellation_to_unknot(self):
        trace = normalize((1, 1, 1, -1, -1))
        assert trace.is_terminal
        assert trace.result.is_unknot

    def test_fixed_point(self):
        trace = normalize((-2, 3, 7))
        assert not trace.is_terminal
        assert trace.result.params == (-2, 3, 7)
        assert trace.moves == ()

    def test_two_component_unlink(self):
        trace = normalize((1, -1))
        assert trace.is_terminal
        assert trace.result.kind is TerminalKind.TORUS
        assert trace.result.torus_m == 0
        assert trace.result.components == 2

    def test_torus_terminal(self):
        trace = normalize((3, 5))
        assert trace.is_terminal
        assert trace.result.torus_m == 8

    def test_minus_two_one_rewrite(self):
        trace = normalize((-2, 1, 3, 3))
        assert not trace.is_terminal
        assert trace.result.params == (2, 3, 3)

    def test_parity_guard_on_cancellation(self):
        # (2,-1,1) is a knot; its remainder (2) must not be read as the
        # 2-component torus link T(2,2), so length-1 remainders are unknots.
        trace = normalize((2, -1, 1))
        assert trace.is_terminal
        assert trace.result.is_unknot

    def test_moves_recorded(self):
        trace = normalize((3, 1, -1, 3, 3))
        kinds = [m.kind for m in trace.moves]
        assert "cancel_pair" in kinds
        assert trace.result.params == (3, 3, 3)

    @given(param_tuples)
    def test_idempotent(self, t):
        trace = normalize(t)
        if not trace.is_terminal:
            again = normalize(trace.result)
            assert not again.is_terminal
            assert again.result.params == trace.result.params

    @given(param_tuples)
    def test_result_normalized(self, t):
        trace = normalize(t)
        if not trace.is_terminal:
            assert is_normalized(trace.result)
