"""Chunked lexicographic enumeration of finite state spaces.

Vectors of ``{0..max_state}^n`` are indexed 0..size-1 in lexicographic
order with component 1 as the most significant digit, so flat index k and
the mixed-radix digits of k are interchangeable. All consumers iterate in
this one fixed order, which keeps counterexamples and accumulated sums
deterministic.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Iterator, Sequence

import numpy as np

from .core import MAX_SUPPORTED_STATE, StateVector
from .errors import ExplosionLimitError, LevelOutOfRangeError
from .structure import StructureExpr, eval_expr_batch

#: Default ceiling on the number of vectors any exhaustive pass may visit.
DEFAULT_ENUM_LIMIT = 10**8

#: Environment variable mirroring the CLI ``--limit`` flag.
LIMIT_ENV_VAR = "MSCS_LIMIT"

_CHUNK = 1 << 16


def resolve_limit(limit: int | None = None) -> int:
    """Effective enumeration limit: explicit value, else environment
    override, else the default."""
    if limit is not None:
        return limit
    env = os.environ.get(LIMIT_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_ENUM_LIMIT


def space_size(n_components: int, max_state: int) -> int:
    return (max_state + 1) ** n_components


def ensure_enumerable(
    n_components: int, max_state: int, limit: int | None = None
) -> int:
    """Return the space size, refusing outright when it exceeds the limit."""
    if n_components < 1:
        raise LevelOutOfRangeError("n_components must be at least 1")
    if not 1 <= max_state <= MAX_SUPPORTED_STATE:
        raise LevelOutOfRangeError(
            f"max_state must be in 1..{MAX_SUPPORTED_STATE}, got {max_state}"
        )
    size = space_size(n_components, max_state)
    bound = resolve_limit(limit)
    if size > bound:
        raise ExplosionLimitError(
            f"state space holds {size} vectors, over the limit {bound}; "
            "raise the limit explicitly to proceed"
        )
    return size


def digits_of(index: int, n_components: int, max_state: int) -> StateVector:
    """Mixed-radix digits of a flat index (component 1 most significant)."""
    radix = max_state + 1
    out = [0] * n_components
    for col in range(n_components - 1, -1, -1):
        index, out[col] = divmod(index, radix)
    return tuple(out)


def iter_vector_chunks(
    n_components: int,
    max_state: int,
    chunk: int = _CHUNK,
    start: int = 0,
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(first_flat_index, digits_matrix)`` blocks in lexicographic
    order. Each matrix row holds one state vector."""
    radix = max_state + 1
    total = space_size(n_components, max_state)
    for lo in range(start, total, chunk):
        hi = min(lo + chunk, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        digits = np.empty((hi - lo, n_components), dtype=np.int64)
        for col in range(n_components - 1, -1, -1):
            idx, digits[:, col] = np.divmod(idx, radix)
        yield lo, digits


def level_table(
    structure: StructureExpr | Callable[[Sequence[int]], int],
    n_components: int,
    max_state: int,
    limit: int | None = None,
) -> np.ndarray:
    """System level for every vector of the space, flat, lexicographic.

    Expression trees are evaluated in vectorized chunks and stored as
    uint8 (levels never exceed the 255 state ceiling); arbitrary callables
    go through a plain Python loop and an int64 table.
    """
    size = ensure_enumerable(n_components, max_state, limit)
    if isinstance(structure, StructureExpr):
        table = np.empty(size, dtype=np.uint8)
        for lo, digits in iter_vector_chunks(n_components, max_state):
            table[lo : lo + len(digits)] = eval_expr_batch(structure, digits)
        return table
    table = np.empty(size, dtype=np.int64)
    for lo, digits in iter_vector_chunks(n_components, max_state):
        rows = digits.tolist()
        table[lo : lo + len(rows)] = [structure(tuple(r)) for r in rows]
    return table
