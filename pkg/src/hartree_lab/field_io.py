"""Flat binary serialization of Field snapshots.

Layout: a 24-byte header -- ``dim`` (int64 LE), ``N`` (int64 LE), ``L``
(float64 LE) -- followed by the samples as little-endian float64 pairs
(re, im), row-major.  That pair layout is exactly little-endian complex128,
so the payload is written and read with no per-element conversion and
round-trips bit-exactly.  A JSON sidecar (``<path>.json``) mirrors the header
for humans and records the representation ("physical"/"frequency").
"""

import json
import struct
from pathlib import Path

import numpy as np

from .grid import Field, Grid

_HEADER = struct.Struct("<qqd")


def save_field(field: Field, path, extra: dict | None = None) -> None:
    path = Path(path)
    g = field.grid
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(g.dim, g.n_points, g.half_width))
        fh.write(np.ascontiguousarray(field.values, dtype="<c16").tobytes())
    sidecar = {
        "dim": g.dim,
        "N": g.n_points,
        "L": g.half_width,
        "space": field.space,
        "layout": "float64-le interleaved re/im, row-major",
    }
    if extra:
        sidecar.update(extra)
    with open(path.with_name(path.name + ".json"), "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_field(path) -> Field:
    path = Path(path)
    with open(path, "rb") as fh:
        dim, n, L = _HEADER.unpack(fh.read(_HEADER.size))
        grid = Grid(dim, n, L)
        raw = fh.read(16 * n**dim)
        values = np.frombuffer(raw, dtype="<c16").reshape(grid.shape).astype(np.complex128)
    space = "physical"
    sidecar = path.with_name(path.name + ".json")
    if sidecar.exists():
        with open(sidecar) as fh:
            space = json.load(fh).get("space", "physical")
    return Field(grid, values, space)
