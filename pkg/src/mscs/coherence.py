"""Exhaustive verification of the coherence axioms and related structure.

A structure function is coherent when it is monotone, every component is
relevant at every level, and the constant vector of any level maps to that
level. The checks here enumerate the full state space (guarded by the
enumeration limit), so passing them is a proof for the given size, not a
sample. Counterexamples are deterministic: the lexicographically least
violator is reported, with component 1 as the most significant digit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    StateSpace,
    StateVector,
    as_vector,
    constant_vector,
    extreme_levels,
    join,
    leq,
    meet,
)
from .enumeration import (
    digits_of,
    ensure_enumerable,
    iter_vector_chunks,
    level_table,
    resolve_limit,
)
from .errors import (
    ExplosionLimitError,
    LevelOutOfRangeError,
    PreconditionViolatedError,
    UCVConsistencyError,
)
from .structure import (
    Kind,
    StructureFunction,
    as_level_function,
    kind_evaluator,
)


@dataclass(frozen=True)
class MonotonicityResult:
    passed: bool
    counterexample: Optional[tuple[StateVector, StateVector]] = None
    values: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class RelevanceEntry:
    component: int  # 1-based, as in all user-facing output
    level: int
    passed: bool
    witness: Optional[StateVector] = None
    note: Optional[str] = None


@dataclass(frozen=True)
class BoundaryEntry:
    level: int
    passed: bool
    value: int


@dataclass(frozen=True)
class UCVSet:
    """All upper critical connection vectors to one level, lexicographically
    sorted and pairwise incomparable."""

    level: int
    vectors: tuple[StateVector, ...]


@dataclass(frozen=True)
class CoherenceReport:
    n_components: int
    max_state: int
    monotonicity: MonotonicityResult
    relevance: tuple[RelevanceEntry, ...]
    boundary: tuple[BoundaryEntry, ...]

    @property
    def overall(self) -> bool:
        return (
            self.monotonicity.passed
            and all(e.passed for e in self.relevance)
            and all(e.passed for e in self.boundary)
        )

    def to_dict(self) -> dict:
        """Machine-readable document; every failure carries the concrete
        witness reproducing it."""
        counterexamples: dict = {"monotone": None, "relevance": [], "boundary": []}
        if not self.monotonicity.passed:
            (x, y) = self.monotonicity.counterexample
            (vx, vy) = self.monotonicity.values
            counterexamples["monotone"] = {
                "x": list(x),
                "y": list(y),
                "value_x": vx,
                "value_y": vy,
            }
        for e in self.relevance:
            if not e.passed:
                counterexamples["relevance"].append(
                    {"component": e.component, "level": e.level, "note": e.note}
                )
        for e in self.boundary:
            if not e.passed:
                counterexamples["boundary"].append(
                    {
                        "level": e.level,
                        "vector": [e.level] * self.n_components,
                        "value": e.value,
                    }
                )
        return {
            "n_components": self.n_components,
            "max_state": self.max_state,
            "overall": self.overall,
            "monotone": self.monotonicity.passed,
            "relevance": [
                {
                    "component": e.component,
                    "level": e.level,
                    "passed": e.passed,
                    "witness": list(e.witness) if e.witness is not None else None,
                    "note": e.note,
                }
                for e in self.relevance
            ],
            "boundary": [
                {"level": e.level, "passed": e.passed, "value": e.value}
                for e in self.boundary
            ],
            "counterexamples": counterexamples,
        }

    def to_table(self) -> str:
        rel_pass = sum(1 for e in self.relevance if e.passed)
        bnd_pass = sum(1 for e in self.boundary if e.passed)
        lines = [
            f"monotone   {'pass' if self.monotonicity.passed else 'fail'}",
            f"relevance  {'pass' if rel_pass == len(self.relevance) else 'fail'}"
            f" ({rel_pass}/{len(self.relevance)})",
            f"boundary   {'pass' if bnd_pass == len(self.boundary) else 'fail'}"
            f" ({bnd_pass}/{len(self.boundary)})",
            f"overall    {'pass' if self.overall else 'fail'}",
        ]
        if not self.monotonicity.passed:
            x, y = self.monotonicity.counterexample
            vx, vy = self.monotonicity.values
            lines.append(
                "  monotone counterexample: "
                f"x={_fmt(x)} y={_fmt(y)} levels {vx} > {vy}"
            )
        for e in self.relevance:
            if not e.passed:
                lines.append(
                    f"  relevance fail: component {e.component} level "
                    f"{e.level}: {e.note}"
                )
        for e in self.boundary:
            if not e.passed:
                lines.append(
                    f"  boundary fail: level {e.level} maps to {e.value}"
                )
        return "\n".join(lines)


def _fmt(vec: StateVector) -> str:
    return ",".join(str(v) for v in vec)


def check_monotonicity(
    structure: StructureFunction,
    n_components: int,
    max_state: int,
    limit: int | None = None,
) -> MonotonicityResult:
    """Verify that raising any component never lowers the system level.

    On failure, returns the lexicographically least violating pair (x, y).
    """
    flat = level_table(structure, n_components, max_state, limit)
    return _monotonicity_from_table(flat, n_components, max_state)


def _monotonicity_from_table(
    flat: np.ndarray, n_components: int, max_state: int
) -> MonotonicityResult:
    shape = (max_state + 1,) * n_components
    # suffix minima along each axis compose to the minimum over the
    # componentwise up-set of every vector
    upmin = flat.reshape(shape).copy()
    for axis in range(n_components):
        upmin = np.flip(
            np.minimum.accumulate(np.flip(upmin, axis=axis), axis=axis),
            axis=axis,
        )
    bad = flat > upmin.reshape(-1)
    if not bad.any():
        return MonotonicityResult(True)
    x_flat = int(np.argmax(bad))
    x = digits_of(x_flat, n_components, max_state)
    value_x = int(flat[x_flat])
    x_arr = np.asarray(x, dtype=np.int64)
    for lo, digits in iter_vector_chunks(n_components, max_state, start=x_flat):
        mask = (digits >= x_arr).all(axis=1)
        mask &= flat[lo : lo + len(digits)] < value_x
        hits = np.flatnonzero(mask)
        if hits.size:
            y_flat = lo + int(hits[0])
            y = digits_of(y_flat, n_components, max_state)
            return MonotonicityResult(False, (x, y), (value_x, int(flat[y_flat])))
    raise AssertionError("violation vanished during counterexample scan")


def check_relevance(
    structure: StructureFunction,
    n_components: int,
    max_state: int,
    limit: int | None = None,
) -> tuple[RelevanceEntry, ...]:
    """For every component and level, search for a context in which only
    that component's level produces that system level."""
    flat = level_table(structure, n_components, max_state, limit)
    return _relevance_from_table(flat, n_components, max_state)


def _relevance_from_table(
    flat: np.ndarray, n_components: int, max_state: int
) -> tuple[RelevanceEntry, ...]:
    radix = max_state + 1
    nd = flat.reshape((radix,) * n_components)
    entries: list[RelevanceEntry] = []
    for axis in range(n_components):
        # rows are contexts over the remaining components, columns the
        # substituted level of this one
        view = np.moveaxis(nd, axis, -1).reshape(-1, radix)
        for level in range(radix):
            eq = view == level
            ok = eq[:, level] & (eq.sum(axis=1) == 1)
            rows = np.flatnonzero(ok)
            if rows.size:
                witness = _context_vector(
                    int(rows[0]), axis, n_components, max_state
                )
                entries.append(
                    RelevanceEntry(axis + 1, level, True, witness, None)
                )
            else:
                entries.append(
                    RelevanceEntry(
                        axis + 1,
                        level,
                        False,
                        None,
                        f"no context makes the system level {level} depend "
                        f"on component {axis + 1} alone",
                    )
                )
    return tuple(entries)


def _context_vector(
    row: int, axis: int, n_components: int, max_state: int
) -> StateVector:
    if n_components == 1:
        return (0,)
    rest = digits_of(row, n_components - 1, max_state)
    it = iter(rest)
    return tuple(0 if a == axis else next(it) for a in range(n_components))


def check_boundary(
    structure: StructureFunction, n_components: int, max_state: int
) -> tuple[BoundaryEntry, ...]:
    """Constant vectors must map to their own level."""
    StateSpace(max_state)
    fn = as_level_function(structure, n_components)
    entries = []
    for level in range(max_state + 1):
        value = int(fn(constant_vector(n_components, level)))
        entries.append(BoundaryEntry(level, value == level, value))
    return tuple(entries)


def coherence_report(
    structure: StructureFunction,
    n_components: int,
    max_state: int,
    limit: int | None = None,
) -> CoherenceReport:
    """Run all three coherence checks over one shared level table."""
    flat = level_table(structure, n_components, max_state, limit)
    return CoherenceReport(
        n_components,
        max_state,
        _monotonicity_from_table(flat, n_components, max_state),
        _relevance_from_table(flat, n_components, max_state),
        check_boundary(structure, n_components, max_state),
    )


def structure_bounds(
    structure: StructureFunction, x: StateVector
) -> tuple[int, int, int]:
    """(minimum entry, system level, maximum entry): for series, parallel
    and koon structures the middle value is sandwiched by the extremes."""
    vec = as_vector(x)
    fn = as_level_function(structure, len(vec))
    low, high = extreme_levels(vec)
    return low, int(fn(vec)), high


def redundancy_comparison(
    kind: Kind, x: StateVector, y: StateVector
) -> tuple[int, int]:
    """Componentwise redundancy versus system-level redundancy.

    Returns (level of the componentwise join, max of the two system
    levels). Series structures favor the component level; for parallel the
    two coincide.
    """
    fn = kind_evaluator(kind)
    merged = join(x, y)
    return fn(merged), max(fn(as_vector(x)), fn(as_vector(y)))


def composition_comparison(
    kind: Kind, x: StateVector, y: StateVector
) -> tuple[int, int]:
    """Componentwise composition versus system-level composition.

    Returns (level of the componentwise meet, min of the two system
    levels). They coincide for series; parallel favors the system level.
    """
    fn = kind_evaluator(kind)
    merged = meet(x, y)
    return fn(merged), min(fn(as_vector(x)), fn(as_vector(y)))


def is_connection_vector(
    structure: StructureFunction, x: StateVector, level: int
) -> bool:
    """True iff the vector produces exactly this system level."""
    vec = as_vector(x)
    fn = as_level_function(structure, len(vec))
    return int(fn(vec)) == level


def is_upper_critical(
    structure: StructureFunction,
    x: StateVector,
    level: int,
    max_state: int,
    limit: int | None = None,
) -> bool:
    """True iff x connects to ``level`` and every strictly lower vector
    falls below it. Checked by brute force over the down-set of x."""
    vec = as_vector(x)
    space = StateSpace(max_state)
    if not space.contains(vec):
        raise LevelOutOfRangeError(f"vector {vec} outside the state space")
    if not 0 <= level <= max_state:
        raise LevelOutOfRangeError(f"level {level} outside 0..{max_state}")
    down_size = math.prod(v + 1 for v in vec)
    if down_size > resolve_limit(limit):
        raise ExplosionLimitError(
            f"down-set of {vec} holds {down_size} vectors, over the limit"
        )
    fn = as_level_function(structure, len(vec))
    if int(fn(vec)) != level:
        return False
    for below in itertools.product(*(range(v + 1) for v in vec)):
        if below == vec:
            continue
        if int(fn(below)) >= level:
            return False
    return True


def enumerate_ucv(
    structure: StructureFunction,
    n_components: int,
    max_state: int,
    level: int,
    limit: int | None = None,
) -> UCVSet:
    """All upper critical connection vectors to ``level``, lexicographically
    sorted.

    Uses prefix maxima along each axis to obtain the maximum system level
    over every strict down-set in one pass; pairwise incomparability of the
    result is asserted afterwards as a self-check on the enumeration.
    """
    if not 0 <= level <= max_state:
        raise LevelOutOfRangeError(f"level {level} outside 0..{max_state}")
    ensure_enumerable(n_components, max_state, limit)
    flat = level_table(structure, n_components, max_state, limit)
    shape = (max_state + 1,) * n_components
    downmax = flat.reshape(shape).astype(np.int64)
    for axis in range(n_components):
        np.maximum.accumulate(downmax, axis=axis, out=downmax)
    # a strict down-set is the union of the closed down-sets of the
    # covering predecessors, one per axis with a positive digit
    strict = np.full(shape, -1, dtype=np.int64)
    for axis in range(n_components):
        dst = [slice(None)] * n_components
        src = [slice(None)] * n_components
        dst[axis] = slice(1, None)
        src[axis] = slice(0, -1)
        np.maximum(strict[tuple(dst)], downmax[tuple(src)], out=strict[tuple(dst)])
    mask = (flat.reshape(shape) == level) & (strict < level)
    members = tuple(
        digits_of(int(i), n_components, max_state)
        for i in np.flatnonzero(mask.reshape(-1))
    )
    _assert_incomparable(members, level)
    return UCVSet(level, members)


def _assert_incomparable(members: tuple[StateVector, ...], level: int) -> None:
    if len(members) < 2:
        return
    arr = np.asarray(members, dtype=np.int64)
    for i in range(len(members)):
        above = (arr >= arr[i]).all(axis=1)
        above[i] = False
        if above.any():
            other = int(np.flatnonzero(above)[0])
            raise UCVConsistencyError(
                f"upper critical set for level {level} contains comparable "
                f"members {members[i]} <= {members[other]}; the structure "
                "function is not coherent"
            )


def level_lower_bound_check(
    structure: StructureFunction,
    ucv: StateVector,
    level: int,
    x: StateVector,
    max_state: int,
    limit: int | None = None,
) -> bool:
    """Theorem check: a vector above an upper critical vector to ``level``
    keeps the system at or above that level.

    Returns the truth of the implication (vacuously true when the vector is
    not above the critical one); for coherent structures it always holds.
    """
    critical = as_vector(ucv)
    vec = as_vector(x)
    if not is_upper_critical(structure, critical, level, max_state, limit):
        raise PreconditionViolatedError(
            f"{critical} is not an upper critical connection vector to "
            f"level {level}"
        )
    if not leq(critical, vec):
        return True
    fn = as_level_function(structure, len(vec))
    return int(fn(vec)) >= level
