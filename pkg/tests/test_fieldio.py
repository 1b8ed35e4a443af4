import numpy as np
import numpy.testing as npt
import pytest

from sewi.fieldio import MAGIC, SnapshotFormatError, density_csv, load_field, save_field
from sewi.spectral import Grid, synthesize
from conftest import random_field


def test_round_trip_1d(tmp_path, rng):
    g = Grid(-16, 16, 64)
    fld = random_field(g, rng)
    p = tmp_path / "state.sewi"
    save_field(fld, p)
    back = load_field(p)
    assert back.grid == g
    npt.assert_array_equal(back.coeffs, fld.coeffs)


def test_round_trip_2d(tmp_path, rng):
    g = Grid((-8, -8), (8, 8), (16, 32))
    fld = random_field(g, rng)
    p = tmp_path / "state.sewi"
    save_field(fld, p)
    back = load_field(p)
    assert back.grid == g
    npt.assert_array_equal(back.coeffs, fld.coeffs)


def test_header_layout(tmp_path, rng):
    g = Grid(-16, 16, 8)
    fld = random_field(g, rng)
    p = tmp_path / "state.sewi"
    save_field(fld, p)
    blob = p.read_bytes()
    assert blob[:4] == MAGIC
    assert len(blob) == 4 + 8 + 24 + 16 * 8  # magic, version+dims, (a,b,N), payload


def test_rejects_corrupt_file(tmp_path, rng):
    g = Grid(-16, 16, 8)
    fld = random_field(g, rng)
    p = tmp_path / "state.sewi"
    save_field(fld, p)
    p.write_bytes(p.read_bytes()[:-8])
    with pytest.raises(SnapshotFormatError):
        load_field(p)
    p.write_bytes(b"NOPE" + b"\x00" * 40)
    with pytest.raises(SnapshotFormatError):
        load_field(p)


def test_density_csv_values(tmp_path, rng):
    g = Grid(-16, 16, 8)
    fld = random_field(g, rng)
    p = tmp_path / "density.csv"
    density_csv(fld, p)
    lines = p.read_text().strip().splitlines()
    assert lines[0] == "x,re_u,im_u,density"
    assert len(lines) == 9
    vals = synthesize(fld)
    x, re, im, dens = (float(v) for v in lines[1].split(","))
    assert x == g.nodes[0][0]
    npt.assert_allclose(re + 1j * im, vals[0], rtol=1e-12)
    npt.assert_allclose(dens, abs(vals[0]) ** 2, rtol=1e-12)
