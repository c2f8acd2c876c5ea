import io
import math

import numpy as np
import pytest

import ghastates as g
from ghastates.dynamics import (
    _oracle_grid,
    _rep_for,
    _series_grid,
    coherent_state_for,
    peak_deviation,
    refined_extremum,
)
from ghastates.errors import (
    ClampWarning,
    InvalidParameterError,
    NegativeVarianceError,
    WrongSystemError,
)
from ghastates.series import moment_series


def test_evolve_identity_at_t0():
    spec = g.type1()
    st = g.gha_coherent_state(spec, 0.4)
    assert np.array_equal(g.evolve(st, spec, 0.0).coeffs, st.coeffs)


def test_evolve_preserves_norm():
    spec = g.hydrogen()
    st = g.gha_coherent_state(spec, 0.6)
    for t in (0.3, 7.0, 123.0):
        assert abs(np.linalg.norm(g.evolve(st, spec, t).coeffs) - 1) < 1e-14


def test_morse_evolution_phase_pattern():
    # level n advances as exp(+i (p-n)^2 t) since its energy is -(p-n)^2
    spec = g.morse(7.59)
    st = g.gha_coherent_state(spec, 0.4)
    t = 2.3
    moved = g.evolve(st, spec, t)
    n = np.arange(7)
    expected = st.coeffs[:7] * np.exp(1j * (spec.p - n) ** 2 * t)
    assert np.abs(moved.coeffs[:7] - expected).max() < 1e-14


def test_basis_state_is_stationary():
    spec = g.type2()
    rep = g.build_rep(spec, 12)
    st = g.basis_state(12, 3, spectrum_id="type2")
    base = g.expectations_oracle(st, rep)
    moved = g.expectations_oracle(g.evolve(st, spec, 17.3), rep)
    for name in ("mean_xi", "mean_rho", "mean_xi2", "mean_rho2"):
        assert getattr(base, name) == pytest.approx(getattr(moved, name),
                                                    abs=1e-13)


def test_vacuum_saturates_floor():
    spec = g.harmonic()
    rep = g.build_rep(spec, 10)
    es = g.expectations_oracle(g.basis_state(10, 0), rep)
    assert es.mean_xi == 0.0 and es.mean_rho == 0.0
    assert g.uncertainty(es) == pytest.approx(0.5, abs=1e-14)


def test_harmonic_linear_cs_constant_half():
    spec = g.harmonic()
    st = g.linear_coherent_state(0.8, tail=1e-16)
    rep = _rep_for(spec, st, 1.0, 1.0)
    for t in (0.0, 1.7, 42.0):
        es = g.expectations_oracle(g.evolve(st, spec, t), rep)
        assert g.uncertainty(es) == pytest.approx(0.5, abs=1e-12)


def test_harmonic_textbook_mean_position():
    # third route: the classic result <xi(t)> = sqrt(2) L r cos(t - phi)
    # anchors the sign and phase conventions of both implementations
    spec = g.harmonic()
    r, phi = 0.8, 0.6
    st = g.linear_coherent_state(r * np.exp(1j * phi), tail=1e-16)
    rep = _rep_for(spec, st, 1.0, 1.0)
    for t in (0.0, 0.9, 2.4, 7.7):
        expected_xi = math.sqrt(2.0) * r * math.cos(t - phi)
        expected_rho = -math.sqrt(2.0) * r * math.sin(t - phi)
        eo = g.expectations_oracle(g.evolve(st, spec, t), rep)
        es = g.expectations_series(spec, "linear", r, phi, t)
        assert eo.mean_xi == pytest.approx(expected_xi, abs=1e-12)
        assert eo.mean_rho == pytest.approx(expected_rho, abs=1e-12)
        assert es.mean_xi == pytest.approx(expected_xi, abs=1e-12)
        assert es.mean_rho == pytest.approx(expected_rho, abs=1e-12)


@pytest.mark.parametrize("sysname,kind", [
    ("type1", "gha"), ("type2", "linear"), ("hydrogen", "gha"),
])
def test_series_matches_oracle_spot(sysname, kind):
    spec = g.make_spectrum(sysname)
    r, phi, t = 0.35, 1.1, 23.7
    es = g.expectations_series(spec, kind, r, phi, t)
    st = coherent_state_for(spec, kind, r, phi)
    eo = g.expectations_oracle(g.evolve(st, spec, t), _rep_for(spec, st, 1, 1))
    for name in ("mean_xi", "mean_rho", "mean_xi2", "mean_rho2"):
        a, b = getattr(es, name), getattr(eo, name)
        assert abs(a - b) <= 1e-9 * (1 + abs(b))


def test_series_matches_oracle_nonunit_b():
    spec = g.type1(b=2.5)
    r, phi, t = 0.3, 0.4, 11.0
    es = g.expectations_series(spec, "gha", r, phi, t)
    st = coherent_state_for(spec, "gha", r, phi)
    eo = g.expectations_oracle(g.evolve(st, spec, t), _rep_for(spec, st, 1, 1))
    for name in ("mean_xi", "mean_rho", "mean_xi2", "mean_rho2"):
        assert getattr(es, name) == pytest.approx(getattr(eo, name), abs=1e-10)


def test_series_scales_with_L_and_hbar():
    spec = g.type1()
    es = g.expectations_series(spec, "gha", 0.3, 0.0, 5.0, L_scale=2.0,
                               hbar=3.0)
    base = g.expectations_series(spec, "gha", 0.3, 0.0, 5.0)
    assert es.mean_xi == pytest.approx(2.0 * base.mean_xi)
    assert es.mean_rho == pytest.approx(1.5 * base.mean_rho)
    assert es.mean_xi2 == pytest.approx(4.0 * base.mean_xi2)


def test_phase_shift_rotates_first_moments():
    # shifting phi rotates (mean_xi, mean_rho) in its plane at t = 0
    spec = g.type2()
    r, phi, delta = 0.4, 0.3, 0.9
    a = g.expectations_series(spec, "gha", r, phi, 0.0)
    b = g.expectations_series(spec, "gha", r, phi + delta, 0.0)
    ua = complex(a.mean_xi / math.sqrt(2), a.mean_rho / math.sqrt(2))
    ub = complex(b.mean_xi / math.sqrt(2), b.mean_rho / math.sqrt(2))
    assert ub == pytest.approx(ua * np.exp(1j * delta), abs=1e-12)
    # for linear states of the harmonic ladder the uncertainty at t = 0
    # does not depend on the phase at all
    ha = g.harmonic()
    ta = g.trace(ha, "linear", r, phi, n_points=2, t_end=1e-9, path="series")
    tb = g.trace(ha, "linear", r, phi + delta, n_points=2, t_end=1e-9,
                 path="series")
    assert ta.values[0] == pytest.approx(tb.values[0], abs=1e-12)


def test_small_r_approaches_floor():
    for sysname in ("type1", "hydrogen"):
        spec = g.make_spectrum(sysname)
        tr = g.trace(spec, "gha", 1e-3, path="series", n_points=201)
        assert np.abs(tr.values - 0.5).max() < 1e-4


def test_trace_paths_agree():
    spec = g.type1()
    tr = g.trace(spec, "gha", 0.5, path="both", n_points=101, t_end=40.0)
    assert tr.max_discrepancy is not None and tr.max_discrepancy < 1e-10
    assert tr.alt_values is not None


def test_trace_floor_and_meta():
    spec = g.morse(7.59)
    tr = g.trace(spec, "gha", 0.1, path="oracle", n_points=301, t_end=20.0)
    assert tr.values.min() >= 0.5 - 1e-9
    assert tr.meta["system"] == "morse" and tr.meta["dim"] == 8
    assert tr.meta["path"] == "oracle"


def test_trace_validation():
    spec = g.type1()
    with pytest.raises(InvalidParameterError):
        g.trace(spec, "gha", 0.1, n_points=1)
    with pytest.raises(InvalidParameterError):
        g.trace(spec, "gha", 0.1, t_end=0.0)
    with pytest.raises(InvalidParameterError):
        g.trace(spec, "gha", 0.1, path="magic")
    with pytest.raises(WrongSystemError):
        g.trace(g.morse(7.59), "linear", 0.1)
    with pytest.raises(WrongSystemError):
        g.trace(g.square_well(), "gha", 0.1, path="series")


def test_square_well_oracle_trace_available():
    tr = g.trace(g.square_well(), "gha", 0.5, path="oracle", n_points=51,
                 t_end=5.0)
    assert tr.values.min() >= 0.5 - 1e-9


def test_trace_csv_format_and_determinism():
    spec = g.type1()
    tr = g.trace(spec, "gha", 0.3, n_points=11, t_end=5.0, path="series")
    bufs = []
    for _ in range(2):
        buf = io.StringIO()
        g.write_trace_csv(tr, buf)
        bufs.append(buf.getvalue())
    assert bufs[0] == bufs[1]
    lines = bufs[0].splitlines()
    assert lines[0] == "t,mean_xi,mean_rho,var_xi,var_rho,uncertainty"
    assert len(lines) == 12
    # discrepancy column appears only for the dual-path trace
    tr2 = g.trace(spec, "gha", 0.3, n_points=11, t_end=5.0, path="both")
    buf = io.StringIO()
    g.write_trace_csv(tr2, buf)
    assert buf.getvalue().splitlines()[0].endswith(",discrepancy")


def test_moment_series_unsupported():
    with pytest.raises(WrongSystemError):
        moment_series(g.q_deformed(0.5), "gha", 0.3)
    with pytest.raises(WrongSystemError):
        moment_series(g.morse(7.59), "linear", 0.3)
    with pytest.raises(WrongSystemError):
        moment_series(g.type1(), "squeezed", 0.3)


def test_series_r_zero_is_vacuum():
    es = g.expectations_series(g.type1(), "gha", 0.0, 0.0, 3.0)
    assert es.mean_xi == 0.0 and es.mean_rho == 0.0
    assert g.uncertainty(es) == pytest.approx(0.5, abs=1e-15)


def test_expectation_set_clamps_and_raises():
    with pytest.warns(ClampWarning):
        es = g.ExpectationSet(1.0, 0.0, 1.0 - 1e-13, 1.0)
    assert es.var_xi == 0.0
    with pytest.raises(NegativeVarianceError):
        g.ExpectationSet(1.0, 0.0, 0.9, 1.0)


def test_refined_extremum_quadratic():
    t = np.linspace(0.0, 2.0, 21)
    v = 3.0 - (t - 0.97) ** 2
    t_star, v_star = refined_extremum(t, v, "max")
    assert t_star == pytest.approx(0.97, abs=1e-12)
    assert v_star == pytest.approx(3.0, abs=1e-12)
    t_star, v_star = refined_extremum(t, -v, "min")
    assert v_star == pytest.approx(-3.0, abs=1e-12)


def test_peak_deviation_on_flat_trace():
    tr = g.trace(g.harmonic(), "linear", 0.5, n_points=101, t_end=10.0,
                 path="series")
    assert peak_deviation(tr) < 1e-12


def test_grid_helpers_shapes():
    spec = g.hydrogen()
    st = coherent_state_for(spec, "gha", 0.3, 0.2)
    rep = _rep_for(spec, st, 1.0, 1.0)
    ts = np.linspace(0, 5, 7)
    mo = _oracle_grid(st, spec, rep, ts)
    ms = _series_grid(moment_series(spec, "gha", 0.3), 0.2, ts, 1.0, 1.0)
    assert all(a.shape == (7,) for a in mo)
    assert all(a.shape == (7,) for a in ms)
