"""Deterministic stream: reference implementation cross-check and contracts."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centroqx.rng import GOLDEN, derive_seed, raw_stream, sign_stream, uniform_open

_MASK = 0xFFFFFFFFFFFFFFFF


def _ref_mix(z: int) -> int:
    """Independent reference for the 64-bit finalizer (splitmix64)."""
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _ref_stream(seed: int, count: int, offset: int = 0) -> list[int]:
    state = seed & _MASK
    out = []
    for k in range(offset + count):
        state = (state + GOLDEN) & _MASK
        if k >= offset:
            out.append(_ref_mix(state))
    return out


def test_known_answer_seed_zero():
    # Standard first outputs of the sequence for seed 0.
    got = [int(v) for v in raw_stream(0, 3)]
    assert got == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


@pytest.mark.parametrize("seed", [0, 1, 42, 2**63, _MASK])
def test_matches_reference_stream(seed):
    assert [int(v) for v in raw_stream(seed, 16)] == _ref_stream(seed, 16)


def test_offset_is_stream_slicing():
    whole = raw_stream(9, 20)
    assert np.array_equal(whole[5:], raw_stream(9, 15, offset=5))
    u = uniform_open(9, 20)
    assert np.array_equal(u[5:], uniform_open(9, 15, offset=5))


def test_uniform_open_range_and_determinism():
    u = uniform_open(7, 10_000)
    assert np.all(u > -1.0) and np.all(u < 1.0)
    assert np.array_equal(u, uniform_open(7, 10_000))
    # crude uniformity sanity: mean near 0, spread near 1/sqrt(3)
    assert abs(float(u.mean())) < 0.05
    assert abs(float(u.std()) - 1.0 / np.sqrt(3.0)) < 0.02


def test_sign_stream_values():
    s = sign_stream(3, 1000)
    assert set(np.unique(s)) <= {-1.0, 1.0}
    assert np.array_equal(s, np.sign(uniform_open(3, 1000)))


def test_derive_seed_reference():
    # Reference: fold each index through mix((state ^ index) + GOLDEN).
    def ref(seed, *indices):
        state = seed & _MASK
        for idx in indices:
            state = _ref_mix(((state ^ (idx & _MASK)) + GOLDEN) & _MASK)
        return state

    assert derive_seed(0, 0xA) == ref(0, 0xA)
    assert derive_seed(123, 1, 2, 3) == ref(123, 1, 2, 3)


def test_derive_seed_separates_purposes():
    seeds = {derive_seed(5, i) for i in range(64)}
    assert len(seeds) == 64
    assert derive_seed(5, 1, 2) != derive_seed(5, 2, 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=_MASK), st.integers(min_value=0, max_value=64))
def test_uniform_open_bounds_property(seed, count):
    u = uniform_open(seed, count)
    assert u.shape == (count,)
    assert np.all(np.abs(u) < 1.0)


def test_raw_stream_rejects_negative_count():
    with pytest.raises(ValueError):
        raw_stream(0, -1)
