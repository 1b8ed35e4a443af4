"""Problem definition: external potentials, power nonlinearity, the spatial
operator B(v) = V*v + f(|v|^2)*v, its directional derivative, and the
conserved observables (mass and energy) of the periodic nonlinear
Schrodinger equation

    i u_t = -Laplacian(u) + V(x) u + beta |u|^(2*sigma) u.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .spectral import Grid, GridMismatchError, SpectralField, pad_modes, synthesize

__all__ = [
    "NonlinearitySpec",
    "Potential",
    "InitialDatum",
    "ConfigurationError",
    "pow_density",
    "apply_B",
    "gateaux_dB",
    "mass",
    "energy",
    "make_potential",
    "make_initial_datum",
    "POTENTIAL_KINDS",
    "INITIAL_DATUM_KINDS",
]


class ConfigurationError(ValueError):
    """Unknown catalogue key or invalid physical parameter."""


# Densities below this are treated as exactly zero when raised to a power, so
# that rho^p never produces inf/nan from the p < 0 branches (0^p with p < 0).
_DENSITY_FLOOR = 1e-300


def pow_density(rho, p: float):
    """rho**p for nonnegative densities, evaluated as exp(p*log(rho)) with a
    hard zero below the underflow floor. Monotone, branch-free, and safe for
    every real exponent including negative ones."""
    rho = np.asarray(rho, dtype=float)
    live = rho > _DENSITY_FLOOR
    with np.errstate(over="ignore", invalid="ignore"):
        if p == 0.0:
            out = np.where(live, 1.0, 0.0)
        elif p == 1.0:
            out = np.where(live, rho, 0.0)
        elif p == 2.0:
            out = np.where(live, rho * rho, 0.0)
        else:
            out = np.where(live, np.exp(p * np.log(np.where(live, rho, 1.0))), 0.0)
    return out


@dataclass(frozen=True)
class NonlinearitySpec:
    """Power nonlinearity f(rho) = beta * rho^sigma acting as f(|u|^2) u."""

    beta: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ConfigurationError(f"sigma must be positive, got {self.sigma}")

    def f(self, rho):
        return self.beta * pow_density(rho, self.sigma)

    def interaction_density(self, rho):
        """Antiderivative F(rho) = beta * rho^(sigma+1) / (sigma+1)."""
        return self.beta / (self.sigma + 1.0) * pow_density(rho, self.sigma + 1.0)


@dataclass(frozen=True)
class Potential:
    """Real-valued external potential, evaluable at arbitrary coordinates.

    ``regularity`` is metadata ("smooth", "H2_per", or "Linf") used by the
    experiment catalogue; it does not change evaluation.
    """

    kind: str
    func: Callable = field(compare=False)
    regularity: str = "smooth"
    params: tuple = ()

    def __call__(self, *coords):
        return np.asarray(self.func(*coords), dtype=float)

    def sample(self, grid: Grid) -> np.ndarray:
        """Values at the grid nodes (broadcastable to ``grid.shape``)."""
        return self(*grid.meshes)

    def sup_on(self, grid: Grid) -> float:
        return float(np.max(np.abs(np.broadcast_to(self.sample(grid), grid.shape))))


@dataclass(frozen=True)
class InitialDatum:
    """Catalogue entry for an initial wave function."""

    key: str
    func: Callable = field(compare=False)
    params: tuple = ()

    def __call__(self, *coords):
        return self.func(*coords)


# ---------------------------------------------------------------------------
# The operator B and its Gateaux derivative.


def _check_broadcast(u: np.ndarray, other) -> None:
    try:
        np.broadcast_shapes(np.shape(u), np.shape(other))
    except ValueError as exc:
        raise GridMismatchError(
            f"shapes {np.shape(u)} and {np.shape(other)} are not on the same grid"
        ) from exc


def apply_B(u: np.ndarray, v, nl: NonlinearitySpec) -> np.ndarray:
    """Pointwise B(u) = V*u + beta*|u|^(2 sigma)*u on sampled values.

    ``v`` is the potential sampled on the same grid (array broadcastable to
    ``u`` or a scalar). Where u vanishes the nonlinear term is exactly zero.
    """
    u = np.asarray(u)
    _check_broadcast(u, v)
    rho = u.real**2 + u.imag**2
    return (v + nl.beta * pow_density(rho, nl.sigma)) * u


def gateaux_dB(v_vals: np.ndarray, w_vals: np.ndarray, pot, nl: NonlinearitySpec) -> np.ndarray:
    """Directional derivative of B at v in direction w (real parameter):

        dB(v)[w] = V w + f(rho) w + f'(rho) rho w + G(v) conj(w),
        G(v) = beta*sigma*rho^(sigma-1)*v^2,  G(0) = 0,  rho = |v|^2.

    The G term carries the phase v^2 and is continuous at v = 0 for every
    sigma > 0; the density floor in :func:`pow_density` realizes the zero
    branch without NaN even when sigma < 1.
    """
    v_vals = np.asarray(v_vals)
    w_vals = np.asarray(w_vals)
    _check_broadcast(v_vals, w_vals)
    _check_broadcast(v_vals, pot)
    rho = v_vals.real**2 + v_vals.imag**2
    bs = nl.beta * nl.sigma
    # f(rho) + f'(rho)*rho = beta*(1+sigma)*rho^sigma
    diag = pot + nl.beta * (1.0 + nl.sigma) * pow_density(rho, nl.sigma)
    gterm = bs * pow_density(rho, nl.sigma - 1.0) * v_vals * v_vals
    return diag * w_vals + gterm * np.conj(w_vals)


# ---------------------------------------------------------------------------
# Observables.


def mass(fld: SpectralField) -> float:
    """Integral of |u|^2 over the box, computed via Parseval."""
    c = fld.coeffs.ravel()
    return float(fld.grid.volume * np.real(np.vdot(c, c)))


def energy(fld: SpectralField, potential: Potential, nl: NonlinearitySpec, oversample: int = 4) -> float:
    """Total energy: spectral gradient term plus quadrature of V|u|^2 + F(|u|^2).

    The potential and interaction integrals use the periodic trapezoid rule on
    an `oversample`-times finer grid, matching the projection quadrature used
    by the time steppers.
    """
    g = fld.grid
    c = fld.coeffs.ravel()
    kinetic = g.volume * float(np.sum(g.musq.ravel() * np.abs(c) ** 2))
    fine = g.refined(oversample)
    u = synthesize(pad_modes(fld, fine)) if oversample > 1 else synthesize(fld)
    with np.errstate(over="ignore", invalid="ignore"):
        rho = u.real**2 + u.imag**2
        vvals = potential(*fine.meshes)
        pot_term = fine.cell_volume * float(np.sum(vvals * rho))
        inter_term = fine.cell_volume * float(np.sum(nl.interaction_density(rho)))
    return kinetic + pot_term + inter_term


# ---------------------------------------------------------------------------
# Catalogue of potentials and initial data.


def _zero_potential(*coords):
    return np.zeros((), dtype=float)


def _kink_bump(x, *rest):
    # 1D bump ((x^2-4)/16)^1.51 * (1 - x^2/16^2)^2 with the non-integer power
    # of the sign-changing base taken as the odd extension
    # sign(s)*|s|^1.51; this keeps the intended curvature kink at |x| = 2.
    base = (x * x - 4.0) / 16.0
    window = 1.0 - x * x / 256.0
    return np.sign(base) * np.abs(base) ** 1.51 * window * window


POTENTIAL_KINDS = ("zero", "constant", "box1d", "box2d", "h2bump", "custom")


def make_potential(kind: str, **params) -> Potential:
    """Build a catalogue potential.

    kinds:
      zero                           identically 0
      constant  (v0)                 V = v0
      box1d     (height=10, edge=4)  V = height where |x| >= edge, else 0
      box2d     (height=10, half_width=2)
                                     V = height where |x| <= hw and |y| <= hw
      h2bump                         curvature-kink bump, H2-regular
      custom    (func, regularity)   arbitrary callable

    Box boundaries take the inside (nonzero for box2d, wall for box1d) value.
    """
    if kind == "zero":
        return Potential("zero", _zero_potential, "smooth")
    if kind == "constant":
        v0 = float(params.pop("v0", 0.0))
        _reject_extra(kind, params)
        return Potential("constant", lambda *c: np.full((), v0), "smooth", (("v0", v0),))
    if kind == "box1d":
        height = float(params.pop("height", 10.0))
        edge = float(params.pop("edge", 4.0))
        _reject_extra(kind, params)

        def wall(x, *rest):
            return np.where(np.abs(x) >= edge, height, 0.0)

        return Potential("box1d", wall, "Linf", (("height", height), ("edge", edge)))
    if kind == "box2d":
        height = float(params.pop("height", 10.0))
        hw = float(params.pop("half_width", 2.0))
        _reject_extra(kind, params)

        def box(x, y):
            return np.where((np.abs(x) <= hw) & (np.abs(y) <= hw), height, 0.0)

        return Potential("box2d", box, "Linf", (("height", height), ("half_width", hw)))
    if kind == "h2bump":
        _reject_extra(kind, params)
        return Potential("h2bump", _kink_bump, "H2_per")
    if kind == "custom":
        func = params.pop("func")
        regularity = params.pop("regularity", "smooth")
        _reject_extra(kind, params)
        return Potential("custom", func, regularity)
    raise ConfigurationError(f"unknown potential kind {kind!r}; expected one of {POTENTIAL_KINDS}")


def _reject_extra(kind: str, params: dict) -> None:
    if params:
        raise ConfigurationError(f"unexpected parameters for {kind!r}: {sorted(params)}")


def _soliton_pair(x):
    # Interacting two-soliton profile for the focusing cubic equation
    # (beta = -2, sigma = 1); a classic hard long-time benchmark.
    num = 8.0 * (9.0 * np.exp(-4.0 * x) + 16.0 * np.exp(4.0 * x)) - 32.0 * (
        4.0 * np.exp(-2.0 * x) + 9.0 * np.exp(2.0 * x)
    )
    den = (
        -128.0
        + 4.0 * np.exp(-6.0 * x)
        + 16.0 * np.exp(6.0 * x)
        + 81.0 * np.exp(-2.0 * x)
        + 64.0 * np.exp(2.0 * x)
    )
    return num / den


INITIAL_DATUM_KINDS = (
    "odd_power_gaussian",
    "gaussian_odd",
    "benchmark_soliton",
    "custom",
)


def make_initial_datum(key: str, **params) -> InitialDatum:
    """Build a catalogue initial datum.

    kinds:
      odd_power_gaussian (p)   x*|x|^p * exp(-r^2/2); odd in the first
                               coordinate, regularity set by p
      gaussian_odd             x * exp(-r^2/2)
      benchmark_soliton        closed-form two-soliton profile (1D)
      custom (func)            arbitrary callable
    """
    if key == "odd_power_gaussian":
        p = float(params.pop("p"))
        _reject_extra(key, params)

        def f(*coords):
            x = coords[0]
            r2 = sum(np.asarray(c) ** 2 for c in coords)
            return x * np.abs(x) ** p * np.exp(-r2 / 2.0)

        return InitialDatum("odd_power_gaussian", f, (("p", p),))
    if key == "gaussian_odd":
        _reject_extra(key, params)

        def f(*coords):
            x = coords[0]
            r2 = sum(np.asarray(c) ** 2 for c in coords)
            return x * np.exp(-r2 / 2.0)

        return InitialDatum("gaussian_odd", f)
    if key == "benchmark_soliton":
        _reject_extra(key, params)
        return InitialDatum("benchmark_soliton", _soliton_pair)
    if key == "custom":
        func = params.pop("func")
        _reject_extra(key, params)
        return InitialDatum("custom", func)
    raise ConfigurationError(
        f"unknown initial datum {key!r}; expected one of {INITIAL_DATUM_KINDS}"
    )
