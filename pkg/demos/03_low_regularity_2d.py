"""2D run with a discontinuous box potential and a fractional nonlinearity
(sigma = 0.1): the regime where low regularity caps the attainable orders.
This demo keeps the resolutions small so it finishes in about a minute; the
acceptance suite runs the full sweep.

Run:  python3 demos/03_low_regularity_2d.py
"""

from dataclasses import replace
from pathlib import Path

import numpy as np

from sewi.harness import box2d_spatial_experiment, spatial_convergence
from sewi import Grid, SolverConfig, evolve, make_initial_datum, make_potential, synthesize
from sewi.model import NonlinearitySpec
from sewi import svgplot

out = Path(__file__).parent / "out" / "low_regularity_2d"
out.mkdir(parents=True, exist_ok=True)
cache = Path(__file__).parent / "out" / "cache"

# shrunken sweep: N in {16, 32, 64} per dimension against a 128^2 reference
spec = replace(box2d_spatial_experiment(), sweep=(16, 32, 64), ref_n=(128, 128))
table = spatial_convergence(spec, cache_dir=cache)
for r in table.rows:
    print(f"N={r.n_modes} eL2={r.e_l2:.3e} eH1={r.e_h1:.3e}")
print(f"least-squares slopes: L2 {table.slope_l2:.2f}, H1 {table.slope_h1:.2f}")
table.to_csv(out / "spatial.csv")

# a quick look at the density sitting in the box potential
grid = Grid((-8.0, -8.0), (8.0, 8.0), (64, 64))
rep = evolve(
    make_initial_datum("odd_power_gaussian", p=0.51),
    grid,
    SolverConfig(tau=1e-3, T=0.25),
    make_potential("box2d", height=10.0, half_width=2.0),
    NonlinearitySpec(beta=1.0, sigma=0.1),
)
u = synthesize(rep.final_state)
dens = np.abs(u) ** 2
x = grid.nodes[0]
mid = grid.n[1] // 2
svgplot.save(
    out / "slice.svg",
    svgplot.semilogy(
        [{"label": "|u(x, 0)|^2 at T", "x": x.tolist(),
          "y": np.maximum(dens[:, mid], 1e-30).tolist()}],
        title="density slice through the box potential", xlabel="x", ylabel="|u|^2",
    ),
)
print(f"outputs in {out}")
