import os
import subprocess
import sys
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from so3eight import _kernels_py, kernels

try:
    from so3eight import _ckernels
except ImportError:  # pragma: no cover - the extension is optional
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernel not built")

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def int_matrices(draw, max_rows=7, max_cols=7, elements=small_ints):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    return [draw(st.lists(elements, min_size=c, max_size=c)) for _ in range(r)], c


def _check_canonical(red, piv, ncols):
    assert len(red) == len(piv)
    assert piv == sorted(piv)
    for row, p in zip(red, piv):
        assert all(x == 0 for x in row[:p])
        assert row[p] > 0
        g = 0
        for x in row:
            g = gcd(g, x)
        assert g == 1
        for other, q in zip(red, piv):
            if other is not row:
                assert other[p] == 0


@given(int_matrices())
@settings(max_examples=200, deadline=None)
def test_python_kernel_is_canonical_and_matches_sympy_rank(data):
    rows, ncols = data
    red, piv = _kernels_py.rref_int(rows, ncols)
    _check_canonical(red, piv, ncols)
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert len(piv) == expected
    assert _kernels_py.rank_int(rows, ncols) == expected


@given(int_matrices())
@settings(max_examples=200, deadline=None)
def test_python_kernel_preserves_row_space(data):
    rows, ncols = data
    red, _ = _kernels_py.rref_int(rows, ncols)
    if not rows:
        assert red == []
        return
    m = sympy.Matrix(rows)
    stacked = sympy.Matrix(rows + red) if red else m
    assert stacked.rank() == m.rank()


@needs_c
@given(int_matrices(max_rows=9, max_cols=9, elements=st.integers(-1000, 1000)))
@settings(max_examples=300, deadline=None)
def test_backends_agree(data):
    rows, ncols = data
    assert _ckernels.rref_int(rows, ncols) == _kernels_py.rref_int(rows, ncols)
    assert _ckernels.rank_int(rows, ncols) == _kernels_py.rank_int(rows, ncols)


@needs_c
def test_overflow_falls_back_to_exact_result():
    big = 2**61
    rows = [[big + i, big - 3 * i, 7 * i + 1] for i in range(1, 5)]
    assert _ckernels.rref_int(rows, 3) == _kernels_py.rref_int(rows, 3)
    huge = [[10**40, 1], [3, 10**30]]
    assert _ckernels.rref_int(huge, 2) == _kernels_py.rref_int(huge, 2)


def test_zero_and_empty_inputs():
    assert _kernels_py.rref_int([], 3) == ([], [])
    assert _kernels_py.rref_int([[0, 0, 0]], 3) == ([], [])
    assert kernels.rank_int([[0, 2, 4], [0, 1, 2]], 3) == 1


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_can_be_forced():
    env = dict(os.environ, SO3EIGHT_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from so3eight import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
