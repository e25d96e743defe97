import numpy as np
import pytest

import olsconv as oc
from olsconv import PostProcSpec, apply_postproc


def test_identity():
    y = np.array([3.0, 1.0, 4.0])
    out = apply_postproc(y, PostProcSpec("none"), (0, 3), True, True)
    assert np.array_equal(out, y)


def test_scale():
    out = apply_postproc(np.array([1.0, 2.0]), PostProcSpec("scale", 2.5),
                         (0, 2), True, True)
    assert np.array_equal(out, [2.5, 5.0])


def test_magnitude_squared_complex():
    out = apply_postproc(np.array([3 + 4j]), PostProcSpec("magnitude_squared"),
                         (0, 1), True, True)
    assert out.dtype.kind == "f"
    assert np.array_equal(out, [25.0])


def test_magnitude_squared_real():
    out = apply_postproc(np.array([-3.0, 2.0]),
                         PostProcSpec("magnitude_squared"), (0, 2), True, True)
    assert np.array_equal(out, [9.0, 4.0])


def test_derivative_linear_ramp_interior():
    y = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    out = apply_postproc(y, PostProcSpec("derivative"), (1, 4))
    assert np.array_equal(out, [1.0, 1.0, 1.0])


def test_derivative_one_sided_edges():
    y = np.array([0.0, 1.0, 4.0, 9.0])
    out = apply_postproc(y, PostProcSpec("derivative"), (0, 4), True, True)
    # one-sided at both ends, central in the middle
    assert np.array_equal(out, [1.0, 2.0, 4.0, 5.0])


def test_derivative_needs_halo():
    y = np.arange(5.0)
    with pytest.raises(oc.HaloUnavailable):
        apply_postproc(y, PostProcSpec("derivative"), (0, 3))
    with pytest.raises(oc.HaloUnavailable):
        apply_postproc(y, PostProcSpec("derivative"), (2, 5))


def test_derivative_single_sample_signal():
    out = apply_postproc(np.array([7.0]), PostProcSpec("derivative"),
                         (0, 1), True, True)
    assert np.array_equal(out, [0.0])


def test_output_length_matches_range():
    y = np.arange(10.0)
    for kind in ("none", "scale", "magnitude_squared", "derivative"):
        out = apply_postproc(y, PostProcSpec(kind), (2, 7))
        assert out.shape == (5,)


def test_spec_validation():
    with pytest.raises(ValueError):
        PostProcSpec("sqrt")
    assert PostProcSpec("derivative").halo == 1
    assert PostProcSpec("none").halo == 0
    assert PostProcSpec("magnitude_squared").real_output
