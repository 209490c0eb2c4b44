"""Truncated weighted-shift realization: weights, matrices, norms, spectra."""

import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import basis_words_up_to
from qheis.algebra import A, B, C, Element, I, element_power, multiply, normalize
from qheis.lie import apply_symbolic
from qheis.ratfun import RF_Q
from qheis.spectral import (
    NonConvergenceError,
    NumericQ,
    apply_numeric,
    coherent_vector,
    compact_decay_report,
    lower_index_est,
    matrix,
    op_norm,
    spectral_radius_est,
    spectrum_facts,
    weights,
)

HALF = NumericQ(Fraction(1, 2))
SQRT2 = math.sqrt(2)


def test_numeric_q_validation():
    assert float(NumericQ.coerce("1/4")) == 0.25
    for bad in (Fraction(0), Fraction(1), Fraction(3, 2), Fraction(-1, 2)):
        with pytest.raises(ValueError):
            NumericQ(bad)


def test_weights():
    w = weights(HALF, 50)
    assert w.values[0] == 1.0
    assert w.values[1] == pytest.approx(math.sqrt(1.5), abs=1e-15)
    assert abs(w.values[49] - SQRT2) < 1e-12
    assert all(w.values[i] < w.values[i + 1] for i in range(49))
    assert all(v < SQRT2 for v in w.values)


def test_apply_numeric_examples():
    assert apply_numeric(C, 2, HALF) == {2: pytest.approx(0.25, abs=1e-16)}
    assert apply_numeric(A, 0, HALF) == {}
    vec = apply_numeric(element_power(B, 2), 1, HALF)
    assert set(vec) == {3}
    assert vec[3] == pytest.approx(math.sqrt(21 / 8), abs=1e-14)


def test_apply_numeric_matches_symbolic():
    for bw in basis_words_up_to(3):
        x = Element({bw: RF_Q})
        for n in range(11):
            sym = apply_symbolic(x, n).numeric(HALF.value)
            num = apply_numeric(x, n, HALF)
            assert set(sym) == set(num)
            for idx in sym:
                assert num[idx] == pytest.approx(sym[idx], abs=1e-12)


def test_matrix_examples():
    m = matrix(C, HALF, 3)
    assert np.allclose(np.diag(m.data), [1.0, 0.5, 0.25])
    assert np.allclose(matrix(I, HALF, 4).data, np.eye(4))
    defect = normalize(multiply(A, B) - RF_Q * multiply(B, A) - I)
    assert matrix(defect, HALF, 10).max_abs() < 1e-14
    assert matrix(multiply(A, B) - RF_Q * multiply(B, A), HALF, 10).data == pytest.approx(
        np.eye(10), abs=1e-14
    )


def test_matrix_diagonal_powers():
    for k in range(1, 4):
        m = matrix(element_power(C, k), HALF, 50)
        expected = np.array([0.5 ** (k * n) for n in range(50)])
        assert np.max(np.abs(np.diag(m.data) - expected)) < 1e-12
        off = m.data - np.diag(np.diag(m.data))
        assert np.max(np.abs(off)) == 0.0


def test_adjointness_of_truncations():
    ma, mb = matrix(A, HALF, 40), matrix(B, HALF, 40)
    assert np.max(np.abs(ma.data - mb.data.T)) < 1e-14


def test_apply_then_project_semantics():
    # columns are computed in the infinite model: the product of truncated
    # matrices corrupts exactly the final column of A.B, nothing else
    n = 12
    prod = matrix(A, HALF, n).data @ matrix(B, HALF, n).data
    exact = matrix(multiply(A, B), HALF, n).data
    assert np.max(np.abs(prod[:, : n - 1] - exact[:, : n - 1])) < 1e-14
    assert abs(prod[n - 1, n - 1] - exact[n - 1, n - 1]) > 0.5


def test_op_norm_shift_powers():
    for l, target in ((1, SQRT2), (2, 2.0), (3, 2 * SQRT2)):
        value = op_norm(element_power(B, l), HALF, 200)
        assert abs(value - target) < 1e-8, (l, value)
    assert abs(op_norm(B, HALF, 200) - SQRT2) < 1e-9
    # adjoint powers have the same norms
    assert abs(op_norm(element_power(A, 2), HALF, 200) - 2.0) < 1e-8


def test_op_norm_diagonal_powers():
    for k in range(1, 4):
        assert abs(op_norm(element_power(C, k), HALF, 50) - 1.0) < 1e-12


def test_op_norm_power_method():
    # separated diagonal spectrum: power iteration converges
    assert abs(op_norm(element_power(C, 3), HALF, 50, method="power") - 1.0) < 1e-10
    # clustered shift spectrum: it must refuse rather than return a bad value
    with pytest.raises(NonConvergenceError) as err:
        op_norm(B, HALF, 200, method="power")
    assert err.value.iterations == 10000
    assert abs(err.value.estimate - SQRT2) < 1e-5


def test_op_norm_zero_and_validation():
    assert op_norm(Element.zero(), HALF, 10) == 0.0
    with pytest.raises(ValueError):
        op_norm(B, HALF, 1)
    with pytest.raises(ValueError):
        op_norm(B, HALF, 10, method="qr")


def test_spectral_radius_estimates():
    est = spectral_radius_est(HALF, 50, 500)
    assert len(est) == 50
    assert abs(est[-1] - SQRT2) < 1e-6
    # sup over a larger window set can only grow
    smaller = spectral_radius_est(HALF, 50, 300)
    assert all(s <= l + 1e-15 for s, l in zip(smaller, est))
    est34 = spectral_radius_est(NumericQ(Fraction(3, 4)), 50, 500)
    assert abs(est34[-1] - 2.0) < 1e-6


def test_lower_index_estimates():
    est = lower_index_est(HALF, 500, 520)
    assert est[1] == pytest.approx(SQRT2 * 0.375**0.25, abs=1e-12)
    assert abs(est[499] - SQRT2) / SQRT2 < 0.01
    assert all(est[i] < est[i + 1] for i in range(len(est) - 1))
    with pytest.raises(ValueError):
        lower_index_est(HALF, 50, 50)


def test_coherent_vectors():
    assert coherent_vector(0, HALF, 200).residual == 0.0
    assert coherent_vector(0.7, HALF, 200).residual < 1e-8
    assert coherent_vector(1.0, HALF, 300).residual < 1e-8
    boundaryish = 0.9 * SQRT2 * cmath.exp(1j * math.pi / 3)
    w = coherent_vector(boundaryish, HALF, 300)
    assert w.residual < 1e-8
    assert not w.outside_disk
    rng = random.Random(53)
    for _ in range(20):
        r = 0.9 * SQRT2 * rng.random()
        phi = 2 * math.pi * rng.random()
        c = r * cmath.exp(1j * phi)
        assert coherent_vector(c, HALF, 300).residual < 1e-8, c


def test_coherent_outside_disk_flagged():
    w = coherent_vector(1.5, HALF, 120)
    assert w.outside_disk
    assert w.residual > 1e-8


def test_spectrum_facts_descriptors():
    b = spectrum_facts("B", q0=HALF)
    assert (b.point_spectrum, b.approx_point_spectrum, b.compression_spectrum) == (
        "empty",
        "circle",
        "open-disk",
    )
    assert b.radius_numeric == pytest.approx(SQRT2)
    a = spectrum_facts("A")
    assert (a.point_spectrum, a.approx_point_spectrum, a.compression_spectrum) == (
        "open-disk",
        "closed-disk",
        "empty",
    )
    assert str(a.radius_sq) == "(-1)/(-1 + q)"
    c2 = spectrum_facts("C", k=2, q0=HALF)
    assert c2.point_spectrum == "eigenvalue-list"
    assert c2.approx_point_spectrum == "closure-of-eigenvalues"
    assert c2.eigenvalues[:4] == (1.0, 0.25, 0.0625, 0.015625)
    assert c2.eigenvalue_formula == "q^(2*n)"
    with pytest.raises(ValueError):
        spectrum_facts("C", k=0)
    with pytest.raises(ValueError):
        spectrum_facts("D")


def test_compact_decay_reports():
    r = compact_decay_report(C, HALF, 40)
    assert r.verdict == "consistent-with-compact"
    assert r.tail[6] == pytest.approx(2.0**-6, abs=1e-15)
    assert compact_decay_report(B, HALF, 40).verdict == "non-compact-witness"
    mixed = compact_decay_report(B + element_power(B, 3), HALF, 40)
    assert mixed.verdict == "non-compact-witness"
    assert min(mixed.tail) > 1.0
    assert compact_decay_report(Element.zero(), HALF, 10).verdict == "consistent-with-compact"
