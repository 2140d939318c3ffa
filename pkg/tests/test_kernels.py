"""Backend equivalence: the compiled kernels must match the NumPy reference."""

import numpy as np
import pytest

from qbackflow.kernels import BACKEND, KIND_EXPONENT, KIND_RATE, available_backends

BACKENDS = available_backends()

needs_compiled = pytest.mark.skipif(
    "compiled" not in BACKENDS, reason="compiled extension not built"
)


def test_active_backend_is_known():
    assert BACKEND in ("compiled", "reference")


@needs_compiled
@pytest.mark.parametrize("kind", [KIND_EXPONENT, KIND_RATE])
@pytest.mark.parametrize("s", [0.5, 1.0, 2.0, 3.0, 5.0])
def test_quadrature_backends_agree(kind, s):
    ref, comp = BACKENDS["reference"], BACKENDS["compiled"]
    times = np.linspace(0.0, 50.0, 101)
    v1, e1, c1 = ref.phase_damping_quad(kind, s, 1.0, times, 40.0, 1e-8, 1e-12)
    v2, e2, c2 = comp.phase_damping_quad(kind, s, 1.0, times, 40.0, 1e-8, 1e-12)
    assert c1.all() and c2.all()
    assert np.max(np.abs(v1 - v2) / (1.0 + np.abs(v1))) <= 1e-12
    assert np.all(e1 >= 0.0) and np.all(e2 >= 0.0)


@needs_compiled
@pytest.mark.parametrize("a_tau", [0.05, 0.25, 0.25 + 3e-9, 0.6, 4.0])
def test_telegraph_backends_agree(a_tau):
    ref, comp = BACKENDS["reference"], BACKENDS["compiled"]
    nu = np.linspace(0.0, 25.0, 5001)
    assert np.max(np.abs(ref.telegraph_memory(a_tau, 1.0, nu) - comp.telegraph_memory(a_tau, 1.0, nu))) <= 1e-13
    assert np.max(np.abs(ref.telegraph_memory_rate(a_tau, 1.0, nu) - comp.telegraph_memory_rate(a_tau, 1.0, nu))) <= 1e-13


@needs_compiled
def test_gain_backends_agree():
    ref, comp = BACKENDS["reference"], BACKENDS["compiled"]
    rng = np.random.default_rng(0)
    lam = 0.75 + 0.2 * np.sin(np.cumsum(rng.uniform(0, 0.1, size=(40, 2000)), axis=1))
    a = ref.positive_gain_total(lam)
    b = comp.positive_gain_total(lam)
    assert np.max(np.abs(a - b)) <= 1e-12
    # 1-D input is treated as a single row by both
    assert float(ref.positive_gain_total(lam[0])[0]) == pytest.approx(float(a[0]))
    assert float(comp.positive_gain_total(lam[0])[0]) == pytest.approx(float(b[0]))


@needs_compiled
def test_convergence_flags_agree_on_hard_case():
    # tolerance far below what GK15 refinement can reach on the sqrt cusp
    ref, comp = BACKENDS["reference"], BACKENDS["compiled"]
    times = np.array([7.0])
    _, _, c1 = ref.phase_damping_quad(KIND_EXPONENT, 0.5, 1.0, times, 40.0, 1e-15, 1e-18)
    _, _, c2 = comp.phase_damping_quad(KIND_EXPONENT, 0.5, 1.0, times, 40.0, 1e-15, 1e-18)
    assert not c1[0] and not c2[0]


def test_reference_gain_totals_by_hand():
    ref = BACKENDS["reference"]
    lam = np.array([[0.5, 0.7, 0.6, 0.9, 0.9]])
    # rises: +0.2 and +0.3; the flat step contributes nothing
    assert ref.positive_gain_total(lam)[0] == pytest.approx(0.5, abs=1e-15)
