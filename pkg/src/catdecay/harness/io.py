"""Plain-text Wigner grid files.

Layout: ``#``-prefixed header lines carrying ``hbar``, ``t`` and the two
axes, followed by one whitespace-separated row of ``W`` per ``y`` value.
"""

from pathlib import Path

import numpy as np

from ..observables import WignerGrid

__all__ = ["write_wigner", "read_wigner"]


def _fmt(values):
    return " ".join(repr(float(v)) for v in values)


def write_wigner(path, grid, t):
    path = Path(path)
    with open(path, "w") as fh:
        fh.write(f"# hbar {grid.hbar!r}\n")
        fh.write(f"# t {float(t)!r}\n")
        fh.write(f"# x {_fmt(grid.x_axis)}\n")
        fh.write(f"# y {_fmt(grid.y_axis)}\n")
        np.savetxt(fh, grid.values, fmt="%.17g")
    return path


def read_wigner(path):
    """Return ``(grid, t)``."""
    header = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            key, _, rest = line[1:].strip().partition(" ")
            header[key] = rest
    values = np.loadtxt(path, comments="#", ndmin=2)
    grid = WignerGrid(
        x_axis=np.array(header["x"].split(), dtype=float),
        y_axis=np.array(header["y"].split(), dtype=float),
        values=values,
        hbar=float(header["hbar"]),
    )
    return grid, float(header["t"])
