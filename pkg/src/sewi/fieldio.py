"""Binary snapshot format and CSV export for spectral fields.

Snapshot layout (all little-endian):

    bytes 0-3   magic "SEWI"
    u32         format version (currently 1)
    u32         dims (1 or 2)
    per dim     a f64, b f64, N u64
    payload     coefficients as interleaved (re, im) f64 pairs, FFT order,
                C (row-major) over dimensions

The CSV export is lossy by design: field values on the sample grid for
plotting, not a round-trippable representation.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .spectral import Grid, SpectralField, synthesize

MAGIC = b"SEWI"
VERSION = 1

__all__ = ["save_field", "load_field", "density_csv", "MAGIC", "VERSION"]


class SnapshotFormatError(ValueError):
    """File is not a readable field snapshot."""


def save_field(fld: SpectralField, path) -> None:
    g = fld.grid
    parts = [MAGIC, struct.pack("<II", VERSION, g.dims)]
    for ai, bi, ni in zip(g.a, g.b, g.n):
        parts.append(struct.pack("<ddQ", ai, bi, ni))
    coeffs = np.ascontiguousarray(fld.coeffs, dtype="<c16")
    parts.append(coeffs.tobytes())
    Path(path).write_bytes(b"".join(parts))


def load_field(path) -> SpectralField:
    blob = Path(path).read_bytes()
    if len(blob) < 12 or blob[:4] != MAGIC:
        raise SnapshotFormatError(f"{path}: bad magic")
    version, dims = struct.unpack_from("<II", blob, 4)
    if version != VERSION:
        raise SnapshotFormatError(f"{path}: unsupported version {version}")
    if dims not in (1, 2):
        raise SnapshotFormatError(f"{path}: bad dims {dims}")
    off = 12
    a, b, n = [], [], []
    for _ in range(dims):
        ai, bi, ni = struct.unpack_from("<ddQ", blob, off)
        off += 24
        a.append(ai)
        b.append(bi)
        n.append(int(ni))
    grid = Grid(tuple(a), tuple(b), tuple(n))
    expected = off + 16 * grid.size
    if len(blob) != expected:
        raise SnapshotFormatError(
            f"{path}: payload size {len(blob) - off} != {16 * grid.size}"
        )
    coeffs = np.frombuffer(blob, dtype="<c16", count=grid.size, offset=off)
    return SpectralField(grid, coeffs.reshape(grid.shape).astype(np.complex128))


def density_csv(fld: SpectralField, path) -> None:
    """Write sampled values (coords, Re u, Im u, |u|^2) at the grid nodes."""
    g = fld.grid
    u = synthesize(fld)
    lines = []
    if g.dims == 1:
        lines.append("x,re_u,im_u,density")
        x = g.nodes[0]
        for j in range(g.n[0]):
            v = u[j]
            lines.append(
                f"{x[j]:.16e},{v.real:.16e},{v.imag:.16e},{abs(v) ** 2:.16e}"
            )
    else:
        lines.append("x,y,re_u,im_u,density")
        x, y = g.nodes
        for j in range(g.n[0]):
            for k in range(g.n[1]):
                v = u[j, k]
                lines.append(
                    f"{x[j]:.16e},{y[k]:.16e},{v.real:.16e},{v.imag:.16e},{abs(v) ** 2:.16e}"
                )
    Path(path).write_text("\n".join(lines) + "\n")
