"""Plain-text exchange formats for matrices and subspaces.

Matrix files carry a ``rows cols`` header line followed by one line per
row, each entry written as a comma-joined ``re,im`` pair and entries
separated by whitespace.  Subspace files prepend a ``subspace n r`` header
to the matrix format of the basis.  Parsers reject non-finite entries.
"""

import numpy as np

from .errors import DimMismatch
from .subspaces import Subspace
from .space import WeightedSpace

__all__ = [
    "dump_matrix",
    "load_matrix",
    "dumps_matrix",
    "loads_matrix",
    "dump_subspace",
    "load_subspace",
]


def dumps_matrix(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise DimMismatch(f"expected a matrix, got ndim {m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("refusing to write non-finite entries")
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    for row in m:
        lines.append(" ".join(f"{float(v.real)!r},{float(v.imag)!r}" for v in row))
    return "\n".join(lines) + "\n"


def loads_matrix(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad matrix header: {lines[0]!r}")
    rows, cols = int(head[0]), int(head[1])
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} rows, found {len(lines) - 1}")
    out = np.zeros((rows, cols), dtype=complex)
    for i, line in enumerate(lines[1:]):
        cells = line.split()
        if len(cells) != cols:
            raise ValueError(f"row {i} has {len(cells)} entries, wanted {cols}")
        for j, cell in enumerate(cells):
            parts = cell.split(",")
            if len(parts) != 2:
                raise ValueError(f"bad entry {cell!r} at ({i}, {j})")
            re, im = float(parts[0]), float(parts[1])
            if not (np.isfinite(re) and np.isfinite(im)):
                raise ValueError(f"non-finite entry at ({i}, {j})")
            out[i, j] = complex(re, im)
    return out


def dump_matrix(m, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_matrix(m))


def load_matrix(path):
    with open(path, "r", encoding="ascii") as fh:
        return loads_matrix(fh.read())


def dump_subspace(sub, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"subspace {sub.basis.shape[0]} {sub.basis.shape[1]}\n")
        fh.write(dumps_matrix(sub.basis))


def load_subspace(path, ws):
    """Read a subspace file onto an existing space.

    The basis is taken as stored; it must be orthonormal and match the
    space dimension.
    """
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    lines = text.splitlines()
    if not lines or not lines[0].startswith("subspace"):
        raise ValueError("missing subspace header")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError(f"bad subspace header: {lines[0]!r}")
    n, r = int(head[1]), int(head[2])
    basis = loads_matrix("\n".join(lines[1:]))
    if basis.shape != (n, r):
        raise ValueError(
            f"basis shape {basis.shape} disagrees with header ({n}, {r})"
        )
    if not isinstance(ws, WeightedSpace) or ws.dim != n:
        raise DimMismatch("subspace file does not fit the given space")
    if r and np.abs(basis.conj().T @ basis - np.eye(r)).max() > 1e-8:
        raise ValueError("stored basis is not orthonormal")
    return Subspace(basis, ws)
