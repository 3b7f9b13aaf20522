import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flashmod.codes import LoadBalancingCode, SelfRandomizedCode, make_code
from flashmod.core import (
    ERASE_REQUIRED,
    CellState,
    CodeKind,
    CodeParams,
    WriteKind,
)
from flashmod.field import FieldSpec


def sr_params(k, q):
    return CodeParams(k=k, l=2, q=q, kind=CodeKind.SELF_RANDOMIZED)


def lb_params(k, q):
    return CodeParams(k=k, l=2, q=q, kind=CodeKind.LOAD_BALANCING)


def test_make_code_dispatch():
    assert isinstance(make_code(sr_params(2, 4)), SelfRandomizedCode)
    assert isinstance(make_code(lb_params(2, 4)), LoadBalancingCode)
    with pytest.raises(ValueError):
        SelfRandomizedCode(lb_params(2, 4))
    with pytest.raises(ValueError):
        LoadBalancingCode(sr_params(2, 4))
    with pytest.raises(ValueError):
        make_code(lb_params(2, 4), field=FieldSpec(5))  # needs m = k+1 = 3


class TestSelfRandomized:
    def test_decode_examples(self):
        code = make_code(sr_params(2, 8))
        assert code.decode(CellState.zeros(4, 8)) == 0
        assert code.decode(CellState([1, 0, 0, 0], 8)) == 3
        assert code.decode(CellState([2, 0, 0, 0], 8)) == 1

    def test_encode_examples(self):
        code = make_code(sr_params(2, 8))
        state = CellState.zeros(4, 8)
        out = code.encode(state, 3)
        assert out.is_written and out.cell == 0
        assert state.levels == [1, 0, 0, 0]
        out = code.encode(state, 1)
        assert out.is_written and out.cell == 0
        assert state.levels == [2, 0, 0, 0]
        # writing the decoded value again changes nothing
        assert code.encode(state, 1).kind is WriteKind.NOOP
        assert state.levels == [2, 0, 0, 0]

    def test_full_cell_signals_erase(self):
        code = make_code(sr_params(1, 2))
        state = CellState.zeros(2, 2)
        assert code.encode(state, 1).is_written  # cell 0
        assert code.encode(state, 0).is_written  # cell 1
        # n(q-1) = 2 increments used up; next change hits a full cell
        out = code.encode(state, 1)
        assert out is ERASE_REQUIRED
        assert state.levels == [1, 1]

    def test_write_indices_sweep_uniformly(self):
        # with uniform inputs the written cell index is uniform; check
        # each frequency within 3 sigma of multinomial noise
        code = make_code(sr_params(2, 2**14))
        state = CellState.zeros(4, 2**14)
        rng = np.random.default_rng(42)
        counts = np.zeros(4, dtype=int)
        writes = 10_000
        done = 0
        while done < writes:
            out = code.encode(state, int(rng.integers(0, 4)))
            if out.is_written:
                counts[out.cell] += 1
                done += 1
        expected = writes / 4
        sigma = (writes * 0.25 * 0.75) ** 0.5
        assert np.all(np.abs(counts - expected) <= 3 * sigma), counts


class TestLoadBalancing:
    def test_decode_examples(self):
        code = make_code(lb_params(1, 8))
        assert code.decode(CellState.zeros(4, 8)) == 0
        assert code.decode(CellState([1, 0, 0, 0], 8)) == 1
        assert code.decode(CellState([0, 0, 1, 0], 8)) == 1

    def test_encode_tie_breaks_to_first_candidate(self):
        code = make_code(lb_params(1, 8))
        state = CellState.zeros(4, 8)
        assert code.candidate_cells(state, 1) == [0, 2]
        out = code.encode(state, 1)
        assert out.is_written and out.cell == 0
        assert state.levels == [1, 0, 0, 0]
        assert code.decode(state) == 1

    def test_encode_prefers_less_charged_candidate(self):
        # candidates for value 1 on this state are cells 0 and 2 with
        # levels (4, 0), so the write lands on cell 2
        code = make_code(lb_params(1, 8))
        state = CellState([4, 0, 0, 0], 8)
        assert code.decode(state) == 0
        assert code.candidate_cells(state, 1) == [0, 2]
        out = code.encode(state, 1)
        assert out.is_written and out.cell == 2
        assert state.levels == [4, 0, 1, 0]
        assert code.decode(state) == 1

    def test_both_candidates_full_signals_erase(self):
        code = make_code(lb_params(1, 2))
        state = CellState([1, 0, 1, 0], 2)
        assert code.decode(state) == 0
        assert sorted(code.candidate_cells(state, 1)) == [0, 2]
        assert code.encode(state, 1) is ERASE_REQUIRED
        assert state.levels == [1, 0, 1, 0]

    def test_noop_when_value_already_stored(self):
        code = make_code(lb_params(2, 4))
        state = CellState.zeros(8, 4)
        assert code.encode(state, 0).kind is WriteKind.NOOP

    def test_candidates_are_always_distinct(self):
        code = make_code(lb_params(2, 16))
        rng = np.random.default_rng(3)
        state = CellState.zeros(8, 16)
        for x in rng.integers(0, 4, size=400).tolist():
            cells = code.candidate_cells(state, x)
            assert len(set(cells)) == 2
            code.encode(state, x)


@pytest.mark.parametrize("kind", list(CodeKind))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_round_trip_across_cycles(kind, k):
    "decode returns the last written value, for every reachable state."
    params = CodeParams(k=k, l=2, q=4, kind=kind)
    code = make_code(params)
    rng = np.random.default_rng(1000 + k)
    state = CellState.zeros(params.n, params.q)
    for x in rng.integers(0, params.value_count, size=2500).tolist():
        out = code.encode(state, x)
        if out is ERASE_REQUIRED:
            state = CellState.zeros(params.n, params.q)
            continue
        assert code.decode(state) == x


@settings(max_examples=30)
@given(
    kind=st.sampled_from(list(CodeKind)),
    k=st.integers(1, 3),
    q=st.integers(2, 6),
    data=st.data(),
)
def test_round_trip_property(kind, k, q, data):
    "Written and NoOp outcomes always leave the state decoding to the value."
    params = CodeParams(k=k, l=2, q=q, kind=kind)
    code = make_code(params)
    state = CellState.zeros(params.n, params.q)
    values = data.draw(st.lists(st.integers(0, params.value_count - 1), max_size=60))
    for x in values:
        before = list(state.levels)
        out = code.encode(state, x)
        if out is ERASE_REQUIRED:
            assert state.levels == before
            state = CellState.zeros(params.n, params.q)
            continue
        if out.is_written:
            # exactly one level rose by exactly one
            diffs = [(i, a - b) for i, (a, b) in enumerate(zip(state.levels, before)) if a != b]
            assert diffs == [(out.cell, 1)]
        else:
            assert state.levels == before
        assert code.decode(state) == x


@pytest.mark.parametrize("kind", list(CodeKind))
def test_decode_is_stateless(kind):
    "Decoding a rebuilt copy of the levels gives the same value."
    params = CodeParams(k=2, l=2, q=8, kind=kind)
    code = make_code(params)
    rng = np.random.default_rng(9)
    state = CellState.zeros(params.n, params.q)
    for x in rng.integers(0, params.value_count, size=300).tolist():
        if code.encode(state, x) is ERASE_REQUIRED:
            state = CellState.zeros(params.n, params.q)
    rebuilt = CellState(list(state.levels), params.q)
    assert code.decode(rebuilt) == code.decode(state)


def test_encode_rejects_out_of_range_values():
    code = make_code(sr_params(2, 4))
    state = CellState.zeros(4, 4)
    with pytest.raises(ValueError):
        code.encode(state, 4)
    lb = make_code(lb_params(1, 4))
    with pytest.raises(ValueError):
        lb.encode(CellState.zeros(4, 4), -1)


def test_codes_reject_mismatched_state():
    code = make_code(sr_params(2, 4))
    with pytest.raises(ValueError):
        code.decode(CellState.zeros(8, 4))
    with pytest.raises(ValueError):
        code.encode(CellState.zeros(4, 8), 1)  # q mismatch
