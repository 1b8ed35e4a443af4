import numpy as np
import numpy.testing as npt
import pytest

from sewi.spectral import (
    DomainError,
    Grid,
    GridMismatchError,
    PHI_SERIES_RADIUS,
    SpectralField,
    analyze,
    apply_filter,
    free_propagator,
    pad_modes,
    phi1,
    phi_c,
    phi_s,
    project_from_function,
    sobolev_norm,
    synthesize,
    truncate_modes,
)
from conftest import random_field


def dft_coefficient_oracle(f, grid, l, n_quad_factor=8):
    """Trapezoid quadrature of the coefficient integral on a much finer grid.

    For periodic integrands the trapezoid rule equals the left-endpoint sum.
    """
    a, b = grid.a[0], grid.b[0]
    m = n_quad_factor * grid.n[0]
    x = a + (b - a) / m * np.arange(m)
    mu = 2.0 * np.pi * l / (b - a)
    vals = f(x) * np.exp(-1j * mu * (x - a))
    return np.sum(vals) * (b - a) / m / (b - a)


class TestGrid:
    def test_basic_1d(self):
        g = Grid(-16, 16, 64)
        assert g.dims == 1
        assert g.spacing == (0.5,)
        assert g.volume == 32.0

    def test_mode_symmetry(self):
        g = Grid(-16, 16, 8)
        mu = g.frequencies[0]
        assert mu[0] == 0.0
        # mu_{-l} = -mu_l for representable l
        for l in range(1, 4):
            assert mu[-l] == -mu[l]

    def test_2d_laplacian_symbol(self):
        g = Grid((-8, -8), (8, 8), (8, 8))
        mx, my = g.frequencies
        npt.assert_allclose(g.musq[2, 3], mx[2] ** 2 + my[3] ** 2)

    @pytest.mark.parametrize("n", [3, 2, 5, 7])
    def test_rejects_bad_mode_counts(self, n):
        with pytest.raises(ValueError):
            Grid(0, 1, n)

    def test_rejects_empty_box(self):
        with pytest.raises(ValueError):
            Grid(1.0, 1.0, 8)

    def test_rejects_3d(self):
        with pytest.raises(ValueError):
            Grid((0, 0, 0), (1, 1, 1), (8, 8, 8))


class TestAnalyze:
    def test_single_mode_identity(self):
        g = Grid(-16, 16, 16)
        x = g.nodes[0]
        mu3 = g.frequencies[0][3]
        fld = analyze(np.exp(1j * mu3 * (x + 16.0)), g)
        assert abs(fld.coeffs[3] - 1.0) < 1e-12
        others = np.delete(fld.coeffs, 3)
        assert np.max(np.abs(others)) < 1e-12

    def test_constant(self):
        g = Grid(-16, 16, 16)
        fld = analyze(np.full(16, 2.0 + 0j), g)
        assert abs(fld.coeffs[0] - 2.0) < 1e-14
        assert np.max(np.abs(fld.coeffs[1:])) < 1e-14

    def test_cosine_against_quadrature_oracle(self):
        g = Grid(-16, 16, 32)
        x = g.nodes[0]
        mu1 = g.frequencies[0][1]
        f = lambda t: np.cos(mu1 * (t + 16.0))
        fld = analyze(f(x).astype(complex), g)
        oracle_p1 = dft_coefficient_oracle(f, g, 1)
        oracle_m1 = dft_coefficient_oracle(f, g, -1)
        npt.assert_allclose(fld.coeffs[1], oracle_p1, atol=1e-13)
        npt.assert_allclose(fld.coeffs[-1], oracle_m1, atol=1e-13)
        # frozen analytic value: cos = (e^{i mu x'} + e^{-i mu x'})/2
        npt.assert_allclose(fld.coeffs[1], 0.5, atol=1e-13)
        npt.assert_allclose(fld.coeffs[-1], 0.5, atol=1e-13)

    def test_shape_mismatch(self):
        g = Grid(-16, 16, 16)
        with pytest.raises(GridMismatchError):
            analyze(np.zeros(8, complex), g)


class TestSynthesize:
    def test_constant_mode(self):
        g = Grid(-16, 16, 16)
        c = np.zeros(16, complex)
        c[0] = 1.0
        vals = synthesize(SpectralField(g, c))
        npt.assert_allclose(vals, 1.0, atol=1e-14)

    def test_round_trip_random(self, grid1d, rng):
        s = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        rt = synthesize(analyze(s, grid1d))
        npt.assert_allclose(rt, s, rtol=0, atol=1e-12 * np.max(np.abs(s)))

    def test_round_trip_random_2d(self, grid2d, rng):
        s = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
        rt = synthesize(analyze(s, grid2d))
        npt.assert_allclose(rt, s, rtol=0, atol=1e-12 * np.max(np.abs(s)))

    def test_quarter_point_phase(self):
        # mode 1 at x = a + (b-a)/4 has phase exp(i pi/2) = i
        g = Grid(-16, 16, 16)
        c = np.zeros(16, complex)
        c[1] = 1.0
        val = synthesize(SpectralField(g, c), np.array([-16 + 32.0 / 4]))
        npt.assert_allclose(val, [1j], atol=1e-14)

    def test_offgrid_matches_nodes(self, grid1d, rng):
        fld = random_field(grid1d, rng)
        on_nodes = synthesize(fld)
        off = synthesize(fld, grid1d.nodes[0])
        npt.assert_allclose(off, on_nodes, atol=1e-11 * np.max(np.abs(on_nodes)))

    def test_point_outside_domain(self, grid1d, rng):
        fld = random_field(grid1d, rng)
        with pytest.raises(DomainError):
            synthesize(fld, np.array([17.0]))

    def test_offgrid_2d(self, grid2d, rng):
        fld = random_field(grid2d, rng)
        xs = grid2d.nodes[0][:3]
        ys = grid2d.nodes[1][:3]
        vals = synthesize(fld, (xs[:, None], ys[None, :]))
        nodes = synthesize(fld)[:3, :3]
        npt.assert_allclose(vals, nodes, atol=1e-11 * np.max(np.abs(nodes)))


class TestProjection:
    def test_band_limited_exact(self):
        g = Grid(-16, 16, 16)
        mu2 = g.frequencies[0][2]
        for oversample in (1, 2, 4):
            fld = project_from_function(
                lambda x: np.exp(1j * mu2 * (x + 16.0)), g, oversample
            )
            assert abs(fld.coeffs[2] - 1.0) < 1e-12

    def test_zero_function(self):
        g = Grid(-16, 16, 16)
        fld = project_from_function(lambda x: np.zeros_like(x), g)
        assert np.all(fld.coeffs == 0)

    def test_square_wave_against_analytic_series(self):
        # sign(x) on (-1, 1): with the exp(i mu_l (x-a)) convention the
        # analytic coefficients are (-1)^l (1-(-1)^l)/(i pi l), i.e.
        # 2i/(pi l) at odd l, 0 at even l.
        g = Grid(-1, 1, 16)
        fld = project_from_function(np.sign, g, oversample=64)
        l = g.mode_numbers[0]
        expected = np.zeros(16, complex)
        odd = l % 2 != 0
        expected[odd] = 2j / (np.pi * l[odd])
        aliasing_tol = 2.0 / (64 * 16)
        npt.assert_allclose(fld.coeffs, expected, atol=aliasing_tol)

    def test_truncate_pad_round_trip(self, rng):
        fine = Grid(-16, 16, 64)
        coarse = Grid(-16, 16, 16)
        fld = random_field(coarse, rng)
        back = truncate_modes(pad_modes(fld, fine), coarse)
        npt.assert_allclose(back.coeffs, fld.coeffs, atol=0)


class TestFreePropagator:
    def test_zero_time_identity(self, grid1d, rng):
        fld = random_field(grid1d, rng)
        out = free_propagator(fld, 0.0)
        npt.assert_allclose(out.coeffs, fld.coeffs, atol=0)

    def test_single_mode_phase_period(self):
        g = Grid(0, 2 * np.pi, 8)
        c = np.zeros(8, complex)
        c[1] = 1.0
        mu1sq = g.musq[1]
        out = free_propagator(SpectralField(g, c), 2 * np.pi / mu1sq)
        npt.assert_allclose(out.coeffs[1], 1.0, atol=1e-14)

    @pytest.mark.parametrize("alpha", [0.0, 1.0, 2.0])
    def test_isometry(self, grid1d, rng, alpha):
        fld = random_field(grid1d, rng)
        out = free_propagator(fld, 0.37)
        n0, n1 = sobolev_norm(fld, alpha), sobolev_norm(out, alpha)
        assert abs(n1 - n0) <= 1e-13 * n0

    def test_composition(self, grid1d, rng):
        fld = random_field(grid1d, rng)
        ab = free_propagator(free_propagator(fld, 0.2), 0.17)
        once = free_propagator(fld, 0.37)
        npt.assert_allclose(ab.coeffs, once.coeffs, atol=1e-14)


class TestPhiFunctions:
    def test_phi1_at_zero(self):
        assert phi1(0.0) == 1.0

    def test_phi1_at_i_pi(self):
        # (e^{i pi} - 1)/(i pi) = 2i/pi
        npt.assert_allclose(phi1(1j * np.pi), 2j / np.pi, atol=1e-15)

    def test_phi1_threshold_continuity(self):
        # the branch switch introduces no jump: values straddling the switch
        # radius differ only by the true variation of phi1 itself
        lo, hi = 0.99 * PHI_SERIES_RADIUS, 1.01 * PHI_SERIES_RADIUS
        true_diff = (np.exp(1j * lo) - 1.0) / (1j * lo) - (np.exp(1j * hi) - 1.0) / (1j * hi)
        assert abs((phi1(1j * lo) - phi1(1j * hi)) - true_diff) < 1e-10

    def test_phi_s_values(self):
        assert phi_s(0.0) == 1.0
        npt.assert_allclose(phi_s(np.pi), 0.0, atol=1e-15)
        npt.assert_allclose(phi_s(np.pi / 2), 2 / np.pi, atol=1e-15)

    def test_phi_s_bounded(self):
        th = np.linspace(-200.0, 200.0, 20001)
        assert np.max(np.abs(phi_s(th))) <= 1.0 + 1e-15

    def test_phi_c_values(self):
        npt.assert_allclose(phi_c(0.0), -1.0 / 3.0, atol=1e-15)
        npt.assert_allclose(phi_c(np.pi), -1.0 / np.pi**2, atol=1e-15)

    @pytest.mark.parametrize("theta", [0.3, 1.7, 12.9])
    def test_even_functions(self, theta):
        assert phi_s(-theta) == phi_s(theta)
        assert phi_c(-theta) == phi_c(theta)

    def test_series_and_formula_agree_across_threshold(self):
        # both branches evaluated on a band around the switch radius
        band = np.linspace(0.5 * PHI_SERIES_RADIUS, 2.0 * PHI_SERIES_RADIUS, 101)
        direct_s = np.sin(band) / band
        direct_c = (band * np.cos(band) - np.sin(band)) / band**3
        direct_1 = (np.exp(1j * band) - 1.0) / (1j * band)
        assert np.max(np.abs(phi_s(band) - direct_s)) < 1e-10
        assert np.max(np.abs(phi_c(band) - direct_c)) < 1e-10
        assert np.max(np.abs(phi1(1j * band) - direct_1)) < 1e-10


class TestApplyFilter:
    def test_zero_mode_values(self, grid1d, rng):
        fld = random_field(grid1d, rng)
        c0 = fld.coeffs[0]
        npt.assert_allclose(apply_filter(fld, "phi_s", 0.1).coeffs[0], c0)
        npt.assert_allclose(apply_filter(fld, "phi1", 0.1).coeffs[0], c0)
        npt.assert_allclose(apply_filter(fld, "phi_c", 0.1).coeffs[0], -c0 / 3.0)

    def test_sinc_filter_contracts_l2(self, grid1d, rng):
        fld = random_field(grid1d, rng)
        out = apply_filter(fld, "phi_s", 0.05)
        assert sobolev_norm(out, 0.0) <= sobolev_norm(fld, 0.0) * (1 + 1e-14)

    @pytest.mark.parametrize("tau", [1e-1, 1e-2, 1e-3])
    def test_sinc_smoothing_bound(self, tau, rng):
        # || phi_s(tau*Lap) u ||_{H2} <= C/tau * ||u||_{L2} with C <= 2,
        # checked against the sup of the symbol over the grid modes
        g = Grid(-16, 16, 512)
        fld = random_field(g, rng, decay=0.5)
        out = apply_filter(fld, "phi_s", tau)
        symbol_sup = np.max((1.0 + g.musq) * np.abs(phi_s(tau * g.musq)))
        assert symbol_sup <= 2.0 / tau
        assert sobolev_norm(out, 2.0) <= symbol_sup * sobolev_norm(fld, 0.0) * (1 + 1e-12)

    def test_rejects_nonpositive_tau(self, grid1d, rng):
        fld = random_field(grid1d, rng)
        with pytest.raises(ValueError):
            apply_filter(fld, "phi_s", 0.0)

    def test_rejects_unknown_filter(self, grid1d, rng):
        fld = random_field(grid1d, rng)
        with pytest.raises(ValueError):
            apply_filter(fld, "phi_2", 0.1)


class TestSobolevNorm:
    def test_constant_l2(self):
        g = Grid(-16, 16, 16)
        fld = analyze(np.ones(16, complex), g)
        npt.assert_allclose(sobolev_norm(fld, 0.0), np.sqrt(32.0), rtol=1e-14)

    def test_single_mode_h1(self):
        g = Grid(0, 2 * np.pi, 16)
        c = np.zeros(16, complex)
        c[1] = 1.0
        npt.assert_allclose(
            sobolev_norm(SpectralField(g, c), 1.0), np.sqrt(4 * np.pi), rtol=1e-14
        )

    def test_zero_field(self):
        g = Grid(-16, 16, 16)
        fld = SpectralField(g, np.zeros(16, complex))
        for alpha in (0.0, 0.5, 1.0, 2.0):
            assert sobolev_norm(fld, alpha) == 0.0

    def test_parseval_against_quadrature(self, rng):
        # ||u||_L2^2 versus oversampled trapezoid quadrature of |u|^2
        g = Grid(-16, 16, 32)
        fld = random_field(g, rng)
        fine = g.refined(8)
        vals = synthesize(pad_modes(fld, fine))
        quad = fine.cell_volume * np.sum(np.abs(vals) ** 2)
        norm2 = sobolev_norm(fld, 0.0) ** 2
        assert abs(norm2 - quad) <= 1e-10 * norm2
