"""Matrix Market reading and writing for dense matrices, vectors and problems."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

from .core import IlsProblem
from .errors import DimensionError


def write_matrix(path, a, comment: str = "") -> None:
    """Write ``a`` in ``%%MatrixMarket matrix array real general`` format.

    1-D input is written as a single column.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    scipy.io.mmwrite(str(path), a, comment=comment, field="real", precision=17)


def read_matrix(path) -> np.ndarray:
    """Read a Matrix Market file (array or coordinate) as a dense float64 array."""
    a = scipy.io.mmread(str(path))
    if scipy.sparse.issparse(a):
        a = a.toarray()
    return np.asarray(a, dtype=np.float64)


def read_vector(path) -> np.ndarray:
    a = read_matrix(path)
    if a.ndim == 2 and 1 not in a.shape:
        raise DimensionError(f"{path} holds a {a.shape} matrix, expected a vector")
    return a.reshape(-1)


PROBLEM_FILES = ("A1.mtx", "A2.mtx", "b1.mtx", "b2.mtx")


def write_problem(prob: IlsProblem, directory) -> list[Path]:
    """Write the four blocks of ``prob`` into ``directory``.

    ``A2.mtx``/``b2.mtx`` are omitted when ``q == 0``.  Returns the paths written.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    blocks = [prob.a1, prob.a2, prob.b1, prob.b2]
    written = []
    for name, block in zip(PROBLEM_FILES, blocks):
        if block.size == 0:
            continue
        path = directory / name
        write_matrix(path, block)
        written.append(path)
    return written


def read_problem(a1, b1, a2=None, b2=None) -> IlsProblem:
    """Assemble an :class:`IlsProblem` from Matrix Market paths (``a2``/``b2`` optional)."""
    a1m = read_matrix(a1)
    if (a2 is None) != (b2 is None):
        raise DimensionError("a2 and b2 must be given together")
    if a2 is None:
        a2m, b2v = np.zeros((0, a1m.shape[1])), np.zeros(0)
    else:
        a2m, b2v = read_matrix(a2), read_vector(b2)
    return IlsProblem(a1m, a2m, read_vector(b1), b2v)


def read_problem_dir(directory) -> IlsProblem:
    """Inverse of :func:`write_problem`."""
    directory = Path(directory)
    a2 = directory / "A2.mtx"
    b2 = directory / "b2.mtx"
    return read_problem(
        directory / "A1.mtx",
        directory / "b1.mtx",
        a2 if a2.exists() else None,
        b2 if b2.exists() else None,
    )
