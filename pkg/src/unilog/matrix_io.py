"""Plain-text matrix files.

Line 1 holds ``n``; then ``n*n`` lines ``re im`` in row-major order, written
with 17 significant digits so values round-trip exactly.
"""

from pathlib import Path

import numpy as np


def format_matrix(a):
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    lines = [str(a.shape[0])]
    lines += [f"{z.real:.17g} {z.imag:.17g}" for z in a.ravel()]
    return "\n".join(lines) + "\n"


def parse_matrix(text):
    tokens = text.split()
    if not tokens:
        raise ValueError("empty matrix file")
    n = int(tokens[0])
    values = tokens[1:]
    if len(values) != 2 * n * n:
        raise ValueError(f"expected {n * n} entries for n={n}, found {len(values) / 2:g}")
    parts = np.array(values, dtype=np.float64).reshape(n * n, 2)
    return (parts[:, 0] + 1j * parts[:, 1]).reshape(n, n)


def read_matrix(path):
    return parse_matrix(Path(path).read_text())


def write_matrix(path, a):
    Path(path).write_text(format_matrix(a))
