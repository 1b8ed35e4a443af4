"""Convergence orders for the kink-bump potential with sigma = 1.1 and the
odd H4 datum: second order in time (L2) and fourth order in space, with the
fractional H1 rates typical of limited regularity.

The temporal sweep runs in seconds; the spatial sweep takes a couple of
minutes because every row integrates 10^4 steps.

Run:  python3 demos/02_convergence_bump_potential.py
"""

from pathlib import Path

from sewi.harness import (
    bump_spatial_experiment,
    bump_temporal_experiment,
    spatial_convergence,
    temporal_convergence,
)
from sewi import svgplot

out = Path(__file__).parent / "out" / "convergence_bump"
out.mkdir(parents=True, exist_ok=True)
cache = Path(__file__).parent / "out" / "cache"


def show(table, label, xlabel):
    print(f"--- {label}")
    for r in table.rows:
        o2 = "-" if r.order_l2 is None else f"{r.order_l2:.2f}"
        o1 = "-" if r.order_h1 is None else f"{r.order_h1:.2f}"
        print(f"  {xlabel}={r.resolution:<10.4g} eL2={r.e_l2:.3e} eH1={r.e_h1:.3e} "
              f"orders {o2}/{o1}")
    print(f"  least-squares slopes: L2 {table.slope_l2:.3f}, H1 {table.slope_h1:.3f}")
    table.to_csv(out / f"{label}.csv")
    xs = [r.resolution for r in table.rows]
    svg = svgplot.loglog(
        [
            {"label": "L2 error", "x": xs, "y": [r.e_l2 for r in table.rows]},
            {"label": "H1 error", "x": xs, "y": [r.e_h1 for r in table.rows]},
        ],
        title=label, xlabel=xlabel, ylabel="error at T",
        guides=(round(table.slope_l2 * 2) / 2, round(table.slope_h1 * 2) / 2),
    )
    svgplot.save(out / f"{label}.svg", svg)


show(temporal_convergence(bump_temporal_experiment(), cache_dir=cache),
     "temporal", "tau")
show(spatial_convergence(bump_spatial_experiment(), cache_dir=cache),
     "spatial", "h")
print(f"tables and figures in {out}")
