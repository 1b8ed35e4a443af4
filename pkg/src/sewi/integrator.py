"""Time steppers for the periodic nonlinear Schrodinger equation.

The workhorse is an explicit two-step symmetric exponential wave integrator:
starting from the Duhamel representation over (t_n - tau, t_n + tau), the
nonlinear part B(u) = V u + f(|u|^2) u is frozen at t_n and the oscillatory
kernel integrated exactly, which yields per Fourier mode

    u_hat[n+1] = exp(-2i tau mu^2) u_hat[n-1]
                 - 2i tau exp(-i tau mu^2) phi_s(tau mu^2) w_hat[n],

with w = P_N B(u[n]) the projected nonlinear term. The recursion is invariant
under swapping n+1 with n-1 and negating tau (time symmetric), and it is
explicit: one nonlinear-term projection per step, no iteration.

The first step uses the one-step exponential integrator

    u_hat[1] = exp(-i tau mu^2) u_hat[0]
               - i tau phi1(-i tau mu^2) w_hat[0],

optionally applied m times with step tau/m (substepping), which gives a more
accurate start for low-regularity data.

P_N B(u) is computed by sampling on an oversampled grid (default 4N per
dimension) and truncating the transform, an anti-aliased approximation of the
exact projection; ``projection="pseudospectral"`` collapses this to plain
collocation on the N-point grid.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
import scipy.fft as sfft

from .model import NonlinearitySpec, Potential, energy, mass, pow_density
from .spectral import (
    Grid,
    SpectralField,
    _corner_indices,
    phi1,
    phi_s,
    project_from_function,
    sobolev_norm,
)

__all__ = [
    "SolverConfig",
    "SolverState",
    "BlowUpError",
    "RunReport",
    "StabilityReport",
    "first_step",
    "sewi_step",
    "evolve",
    "stability_check",
]


class BlowUpError(RuntimeError):
    """Non-finite coefficients appeared during time stepping.

    Carries the failing step index and time, the last finite state, and (when
    raised from :func:`evolve`) the partial run report for post-mortem use.
    """

    def __init__(self, step: int, t: float, last_state: SpectralField, report=None):
        super().__init__(f"solution blew up at step {step} (t = {t:g})")
        self.step = step
        self.t = t
        self.last_state = last_state
        self.report = report


@dataclass(frozen=True)
class SolverConfig:
    """Time-stepping parameters.

    ``T/tau`` must be a whole number of steps (checked to a few ulp of the
    floating-point quotient); anything else is rejected rather than silently
    adjusted, because adjusted steps corrupt convergence measurements.
    """

    tau: float
    T: float
    first_step: str = "ewi1_substeps"
    substeps: int = 16
    projection: str = "oversampled"
    oversample: int = 4
    snapshot_every: int | None = None
    snapshot_times: tuple | None = None

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if self.T < 0:
            raise ValueError("T must be nonnegative")
        if self.first_step not in ("ewi1", "ewi1_substeps"):
            raise ValueError(f"unknown first_step mode {self.first_step!r}")
        if self.substeps < 1:
            raise ValueError("substeps must be >= 1")
        if self.projection not in ("oversampled", "pseudospectral"):
            raise ValueError(f"unknown projection mode {self.projection!r}")
        if self.oversample < 1:
            raise ValueError("oversample must be >= 1")
        if self.snapshot_every is not None and self.snapshot_every < 1:
            raise ValueError("snapshot_every must be a positive integer")
        _integer_steps(self.T, self.tau)  # raises if not a whole count

    @property
    def n_steps(self) -> int:
        return _integer_steps(self.T, self.tau)

    @property
    def effective_oversample(self) -> int:
        return 1 if self.projection == "pseudospectral" else self.oversample

    def echo(self) -> dict:
        return {
            "tau": self.tau,
            "T": self.T,
            "first_step": self.first_step,
            "substeps": self.substeps,
            "projection": self.projection,
            "oversample": self.oversample,
        }


def _integer_steps(T: float, tau: float) -> int:
    q = T / tau
    n = int(round(q))
    # allow a couple ulp of division roundoff on an intended-integer ratio
    if abs(q - n) > 4.0 * np.spacing(max(abs(q), 1.0)):
        raise ValueError(f"T/tau = {q!r} is not a whole number of steps")
    return n


class _StepKernel:
    """Per-(grid, tau) cache: filter tables, phase tables, and the potential
    sampled on the oversampled grid. The per-step cost is transform-dominated."""

    def __init__(self, grid: Grid, tau: float, potential: Potential,
                 nl: NonlinearitySpec, oversample: int):
        self.grid = grid
        self.tau = tau
        self.nl = nl
        self.oversample = oversample
        musq = grid.musq
        self.phase_half = np.exp(-1j * tau * musq)   # exp(i tau Laplacian)
        self.phase_full = np.exp(-2j * tau * musq)   # exp(2 i tau Laplacian)
        self.phis = phi_s(tau * musq)
        self.phi1 = phi1(-1j * tau * np.asarray(musq))
        self.fine = grid.refined(oversample)
        self.vfine = potential(*self.fine.meshes)
        self.size = grid.size
        self.fine_size = self.fine.size
        if oversample > 1:
            self._ix = np.ix_(*[
                _corner_indices(nc, nf) for nc, nf in zip(grid.n, self.fine.n)
            ])
        else:
            self._ix = None

    def nonlinear_coeffs(self, c: np.ndarray) -> np.ndarray:
        """Coefficients of P_N B(u) for the field with coefficients c."""
        if self._ix is None:
            u = sfft.ifftn(c) * self.size
        else:
            cf = np.zeros(self.fine.shape, dtype=np.complex128)
            cf[self._ix] = c
            u = sfft.ifftn(cf) * self.fine_size
        # overflow here just means the run is blowing up; the per-step finite
        # check turns it into a BlowUpError
        with np.errstate(over="ignore", invalid="ignore"):
            rho = u.real**2 + u.imag**2
            w = (self.vfine + self.nl.beta * pow_density(rho, self.nl.sigma)) * u
        w_hat = sfft.fftn(w) / (self.fine_size if self._ix is not None else self.size)
        return w_hat[self._ix] if self._ix is not None else w_hat

    def two_step(self, c_curr: np.ndarray, c_prev: np.ndarray) -> np.ndarray:
        w = self.nonlinear_coeffs(c_curr)
        return self.phase_full * c_prev - (2j * self.tau) * (self.phase_half * self.phis * w)

    def one_step(self, c: np.ndarray) -> np.ndarray:
        w = self.nonlinear_coeffs(c)
        return self.phase_half * c - (1j * self.tau) * (self.phi1 * w)


@dataclass
class SolverState:
    """Two-step history (current and previous field) plus the cached kernel.

    Negative ``tau`` is accepted, which is what makes the discrete
    time-reversal identity directly testable.
    """

    n: int
    psi: SpectralField
    psi_prev: SpectralField
    tau: float
    potential: Potential
    nl: NonlinearitySpec
    oversample: int = 4
    kernel: _StepKernel = field(default=None, repr=False)

    def __post_init__(self):
        if self.psi.grid != self.psi_prev.grid:
            raise ValueError("history fields must live on the same grid")
        if self.kernel is None:
            self.kernel = _StepKernel(
                self.psi.grid, self.tau, self.potential, self.nl, self.oversample
            )

    def advance(self, psi_next: SpectralField) -> None:
        self.psi_prev = self.psi
        self.psi = psi_next
        self.n += 1


def sewi_step(state: SolverState) -> SpectralField:
    """One two-step update: returns the field one step past ``state.psi``.

    Raises :class:`BlowUpError` if non-finite coefficients appear.
    """
    c_next = state.kernel.two_step(state.psi.coeffs, state.psi_prev.coeffs)
    if not np.all(np.isfinite(c_next.view(np.float64))):
        raise BlowUpError(state.n + 1, (state.n + 1) * state.tau, state.psi)
    return SpectralField(state.psi.grid, c_next)


def first_step(psi0: SpectralField, cfg: SolverConfig, potential: Potential,
               nl: NonlinearitySpec) -> SpectralField:
    """Bootstrap the two-step recursion: one-step integrator once with step
    tau, or ``substeps`` times with step tau/m."""
    k = cfg.effective_oversample
    if cfg.first_step == "ewi1":
        kernel = _StepKernel(psi0.grid, cfg.tau, potential, nl, k)
        return SpectralField(psi0.grid, kernel.one_step(psi0.coeffs))
    m = cfg.substeps
    kernel = _StepKernel(psi0.grid, cfg.tau / m, potential, nl, k)
    c = psi0.coeffs
    for _ in range(m):
        c = kernel.one_step(c)
    return SpectralField(psi0.grid, c)


@dataclass(frozen=True)
class StabilityReport:
    quantity: float
    threshold: float
    warning: bool
    message: str


def stability_check(cfg: SolverConfig, potential: Potential, nl: NonlinearitySpec,
                    psi0: SpectralField) -> StabilityReport:
    """Advisory von-Neumann-type check: tau * (sup|V| + |beta| (sup|u0|^2)^sigma).

    Values above 1 flag marginal amplification of the frozen-coefficient
    recursion; the run is never blocked.
    """
    from .spectral import synthesize

    g = psi0.grid
    vsup = potential.sup_on(g)
    u0 = synthesize(psi0)
    rho_sup = float(np.max(u0.real**2 + u0.imag**2))
    fsup = abs(nl.beta) * float(pow_density(np.asarray(rho_sup), nl.sigma))
    q = cfg.tau * (vsup + fsup)
    warn = q > 1.0
    msg = (
        f"stability quantity tau*(sup|V| + |f(sup rho0)|) = {q:.3g}"
        + (" exceeds 1; expect amplification" if warn else "")
    )
    return StabilityReport(quantity=q, threshold=1.0, warning=warn, message=msg)


@dataclass
class RunReport:
    """Observable time series plus run metadata.

    ``records`` holds one dict per snapshot: n, t, mass, energy, l2_norm,
    h1_norm. JSON serialization carries the config echo, the records, any
    warnings, and the wall-clock time; the final field is kept in memory and
    stored separately (binary snapshot format) when requested.
    """

    config: dict
    records: list
    warnings: list
    wallclock: float
    final_state: SpectralField | None = None

    def to_json_dict(self) -> dict:
        return {
            "config": self.config,
            "records": self.records,
            "warnings": self.warnings,
            "wallclock": self.wallclock,
        }

    def save_json(self, path) -> None:
        import json
        from pathlib import Path

        Path(path).write_text(json.dumps(self.to_json_dict(), indent=2) + "\n")

    def save_observables_csv(self, path) -> None:
        from pathlib import Path

        lines = ["n,t,mass,energy,l2_norm,h1_norm"]
        for r in self.records:
            lines.append(
                f"{r['n']},{r['t']:.16e},{r['mass']:.16e},{r['energy']:.16e},"
                f"{r['l2_norm']:.16e},{r['h1_norm']:.16e}"
            )
        Path(path).write_text("\n".join(lines) + "\n")


def _snapshot_steps(cfg: SolverConfig, n_steps: int) -> set:
    if cfg.snapshot_times is not None:
        steps = set()
        for t in cfg.snapshot_times:
            k = _integer_steps(float(t), cfg.tau)
            if k < 0 or k > n_steps:
                raise ValueError(f"snapshot time {t} outside the run")
            steps.add(k)
        return steps
    every = cfg.snapshot_every or max(1, n_steps // 200)
    steps = set(range(0, n_steps + 1, every))
    steps.add(n_steps)
    return steps


def evolve(psi0, grid: Grid, cfg: SolverConfig, potential: Potential,
           nl: NonlinearitySpec, observers: Sequence[Callable] = ()) -> RunReport:
    """Run the integrator from t = 0 to t = T and collect observables.

    ``psi0`` may be a callable (projected onto the grid first) or an already
    projected :class:`SpectralField`. Observers are called as
    ``observer(n, t, field)`` at every snapshot step. Identical inputs produce
    bit-identical reports.

    On blow-up, raises :class:`BlowUpError` with the partial report and the
    last finite state attached.
    """
    t0 = time.perf_counter()
    if isinstance(psi0, SpectralField):
        if psi0.grid != grid:
            raise ValueError("initial field lives on a different grid")
        psi0_field = psi0
        psi0_label = "field"
    else:
        func = psi0.func if hasattr(psi0, "func") else psi0
        psi0_label = getattr(psi0, "key", "custom")
        psi0_field = project_from_function(func, grid, cfg.effective_oversample)

    config_echo = {
        "grid": {"a": list(grid.a), "b": list(grid.b), "n": list(grid.n)},
        "potential": {"kind": potential.kind, "params": dict(potential.params)},
        "beta": nl.beta,
        "sigma": nl.sigma,
        "psi0": psi0_label,
        **cfg.echo(),
    }

    warnings: list = []
    stab = stability_check(cfg, potential, nl, psi0_field)
    if stab.warning:
        warnings.append(stab.message)

    n_steps = cfg.n_steps
    snaps = _snapshot_steps(cfg, n_steps)
    records: list = []

    def record(n: int, fld: SpectralField) -> None:
        t = n * cfg.tau
        records.append(
            {
                "n": n,
                "t": t,
                "mass": mass(fld),
                "energy": energy(fld, potential, nl, cfg.effective_oversample),
                "l2_norm": sobolev_norm(fld, 0.0),
                "h1_norm": sobolev_norm(fld, 1.0),
            }
        )
        for obs in observers:
            obs(n, t, fld)

    def partial_report(final=None):
        return RunReport(config_echo, records, warnings, time.perf_counter() - t0, final)

    if 0 in snaps:
        record(0, psi0_field)
    if n_steps == 0:
        return partial_report(psi0_field)

    psi1 = first_step(psi0_field, cfg, potential, nl)
    if not np.all(np.isfinite(psi1.coeffs.view(np.float64))):
        raise BlowUpError(1, cfg.tau, psi0_field, partial_report())
    state = SolverState(
        n=1, psi=psi1, psi_prev=psi0_field, tau=cfg.tau,
        potential=potential, nl=nl, oversample=cfg.effective_oversample,
    )
    if 1 in snaps:
        record(1, psi1)

    while state.n < n_steps:
        try:
            nxt = sewi_step(state)
        except BlowUpError as err:
            err.report = partial_report()
            raise
        state.advance(nxt)
        if state.n in snaps:
            record(state.n, state.psi)

    return partial_report(state.psi)
