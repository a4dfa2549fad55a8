import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ampfsi import modes
from ampfsi.params import make_preset

K = 2.0 * np.pi
# independently computed: cosh(2*pi)/(2*pi*sinh(2*pi))
MA_2PI = 0.159156053151315


class TestAddedMass:
    def test_frozen_value(self):
        assert modes.added_mass(K, 1.0, 1.0) == pytest.approx(MA_2PI,
                                                              rel=1e-12)

    def test_even_in_kx(self):
        assert modes.added_mass(-K, 1.0, 1.0) == modes.added_mass(K, 1.0, 1.0)

    def test_scales_with_rho(self):
        assert modes.added_mass(K, 1.0, 3.0) == pytest.approx(3 * MA_2PI)

    def test_shallow_limit(self):
        # kx*H -> 0: Ma -> rho/(kx^2 H)
        kx = 0.01
        assert modes.added_mass(kx, 1.0, 1.0) == pytest.approx(
            1.0 / kx**2, rel=1e-4)

    def test_deep_limit(self):
        # kx*H >> 1: Ma -> rho/kx
        assert modes.added_mass(50.0, 1.0, 1.0) == pytest.approx(1.0 / 50.0)

    def test_zero_mode_rejected(self):
        with pytest.raises(modes.DegenerateModeError):
            modes.added_mass(0.0, 1.0, 1.0)


class TestPolynomials:
    def test_traditional_cubic_roots_satisfy_polynomial(self):
        r = modes.traditional_roots(1.0, K**2, MA_2PI, 0.1)
        assert len(r) == 3
        coeffs = [1.0 / 0.01, -2.0 / 0.01 + K**2 + MA_2PI / 0.01,
                  1.0 / 0.01 - 2 * MA_2PI / 0.01, MA_2PI / 0.01]
        assert modes.poly_residual_scale(coeffs, r) < 1e-12

    def test_amp_roots_product_one(self):
        # quadratic A^2 - 2cA + 1: product of roots is exactly 1
        r = modes.amp_roots(1.0, K**2, MA_2PI, 0.1)
        assert abs(r[0] * r[1] - 1.0) < 1e-12

    def test_amp_roots_on_unit_circle_when_stable(self):
        dt = 0.9 * modes.amp_dt_max(1.0, K**2, MA_2PI)
        r = modes.amp_roots(1.0, K**2, MA_2PI, dt)
        assert np.allclose(np.abs(r), 1.0, atol=1e-12)

    def test_amp_dt_max_frozen(self):
        # 2*sqrt((1 + Ma)/(4 pi^2)) computed independently
        assert modes.amp_dt_max(1.0, K**2, MA_2PI) == pytest.approx(
            0.34270550525410565, rel=1e-12)

    def test_traditional_dt_max_frozen(self):
        res = modes.traditional_stability(1.0, K**2, MA_2PI)
        assert res.dt_max == pytest.approx(0.2918823460800665, rel=1e-12)


class TestTheorems:
    def test_heavy_shell_stable_below_bound(self):
        res = modes.traditional_stability(1.0, K**2, MA_2PI, dt=0.2)
        assert res.verdict == "weakly stable"

    def test_heavy_shell_unstable_above_bound(self):
        res = modes.traditional_stability(1.0, K**2, MA_2PI, dt=0.3)
        assert res.verdict == "unstable"

    def test_light_shell_unconditionally_unstable(self):
        res = modes.traditional_stability(0.01, 0.01 * K**2, MA_2PI)
        assert res.verdict == "unconditionally unstable"
        assert res.dt_max == 0.0

    def test_amp_always_conditionally_stable(self):
        for rhosh in (1e-3, 1.0, 1e3):
            res = modes.amp_stability(rhosh, rhosh * K**2, MA_2PI)
            assert res.dt_max > 0
            assert res.verdict == "weakly stable"

    @settings(max_examples=200, deadline=None)
    @given(rhosh=st.floats(1e-3, 1e3), Lc=st.floats(1e-3, 1e4),
           Ma=st.floats(1e-3, 1e2), frac=st.floats(0.01, 0.99))
    def test_traditional_roots_match_theorem(self, rhosh, Lc, Ma, frac):
        if abs(Ma - rhosh) < 1e-8 * rhosh:
            return  # boundary of the mass condition: roots at roundoff
        res = modes.traditional_stability(rhosh, Lc, Ma)
        if res.verdict == "unconditionally unstable":
            dt = 0.1 * np.sqrt(rhosh / Lc)
            assert not modes.von_neumann_check(
                modes.traditional_roots(rhosh, Lc, Ma, dt))
        else:
            dt = frac * res.dt_max
            if abs(dt - res.dt_max) / res.dt_max < 1e-8:
                return  # boundary exclusion
            roots = modes.traditional_roots(rhosh, Lc, Ma, dt)
            assert modes.von_neumann_check(roots)

    @settings(max_examples=200, deadline=None)
    @given(rhosh=st.floats(1e-3, 1e3), Lc=st.floats(1e-3, 1e4),
           Ma=st.floats(1e-3, 1e2), frac=st.floats(0.01, 1.99))
    def test_amp_roots_match_bound(self, rhosh, Lc, Ma, frac):
        dt_max = modes.amp_dt_max(rhosh, Lc, Ma)
        dt = frac * dt_max
        if abs(dt - dt_max) / dt_max < 1e-8:
            return
        roots = modes.amp_roots(rhosh, Lc, Ma, dt)
        assert modes.von_neumann_check(roots) == (dt < dt_max)


class TestModeEvolution:
    def test_amp_recursion_matches_root_powers(self):
        rhosh, Lc, Ma, dt = 1.0, K**2, MA_2PI, 0.05
        A = modes.amp_roots(rhosh, Lc, Ma, dt)[0]
        n = np.arange(52)
        exact = np.real(A**n)  # seed eta_0 = Re A^0, eta_1 = Re A^1
        eta = modes.mode_evolve("amp", rhosh, Lc, Ma, dt, 50,
                                [exact[0], exact[1]])
        assert np.allclose(eta, exact, atol=1e-10)

    def test_traditional_recursion_satisfies_characteristic_relation(self):
        rhosh, Lc, Ma, dt = 1.0, K**2, MA_2PI, 0.05
        eta_r = modes.mode_evolve("traditional", rhosh, Lc, Ma, dt, 30,
                                  [1.0, 0.9, 0.7])
        a = dt**2 * Lc / rhosh
        m = Ma / rhosh
        for i in range(3, len(eta_r)):
            pred = (2 * eta_r[i - 1] - eta_r[i - 2] - a * eta_r[i - 1]
                    - m * (eta_r[i - 1] - 2 * eta_r[i - 2] + eta_r[i - 3]))
            assert eta_r[i] == pytest.approx(pred, rel=1e-12, abs=1e-12)

    def test_amp_amplitude_constant_when_stable(self):
        rhosh, Lc, Ma = 1.0, K**2, MA_2PI
        dt = 0.9 * modes.amp_dt_max(rhosh, Lc, Ma)
        eta = modes.mode_evolve("amp", rhosh, Lc, Ma, dt, 1000, [1.0, 0.3])
        amp = modes.amp_mode_amplitude(eta, rhosh, Lc, Ma, dt)
        assert np.isfinite(eta).all()
        rel = np.abs(amp - amp[0]) / amp[0]
        assert rel.max() < 1e-10

    def test_traditional_light_shell_grows(self):
        rhosh, Lc, Ma = 0.01, 0.01 * K**2, MA_2PI
        dt = 0.01
        eta = modes.mode_evolve("traditional", rhosh, Lc, Ma, dt, 200,
                                [1e-3, 1e-3, 1e-3])
        assert np.abs(eta[-1]) > 1e3 * np.abs(eta[2])

    def test_unknown_scheme(self):
        with pytest.raises(ValueError):
            modes.mode_evolve("monolithic", 1, 1, 1, 0.1, 10, [0, 0, 0])


class TestCrossConsistency:
    @pytest.mark.parametrize("delta", [1e-2, 1.0, 1e3])
    def test_amp_bound_times_frequency_is_two(self, delta):
        from ampfsi.exact import mp_i1_dispersion
        p = make_preset(delta)
        w, _ = mp_i1_dispersion(K, p)
        Ma = modes.added_mass(K, p.H, p.rho)
        dt_max = modes.amp_dt_max(p.rhosh, p.shell_symbol(K), Ma)
        assert dt_max * w == pytest.approx(2.0, rel=1e-12)


class TestStabilityMap:
    def test_rows_shape_and_verdicts(self):
        rows = modes.stability_map_rows([0.01, 1.0], [K], [0.01],
                                        ["amp", "traditional"])
        assert len(rows) == 4
        amp_rows = [r for r in rows if r[3] == "amp"]
        assert all(r[5] == "weakly stable" for r in amp_rows)
        light_trad = [r for r in rows
                      if r[3] == "traditional" and r[0] == 0.01]
        assert light_trad[0][5] == "unconditionally unstable"
