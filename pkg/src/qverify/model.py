"""Quantum query algorithm model: query specs, the pipeline executor,
measurement, and exhaustive exactness checking.

An algorithm is a start state, T stages of (input-independent unitary,
input-dependent diagonal query), a final unitary, and a 0/1 output label
per basis state. Running on a word applies

    start -> U_1 -> Q_1 -> ... -> U_T -> Q_T -> final unitary -> measure

where query Q_i multiplies each basis amplitude by +1 or by (-1)**x_k as
its spec dictates. Measuring sums squared amplitudes per label; an
algorithm computes a function exactly when the correct output has
probability 1 (within EXACT_TOL) on every word.

All objects are immutable after construction and safe to share across
threads; `run` is a pure function, so identical inputs give bitwise
identical traces.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .boolfunc import BooleanFunction
from .linalg import as_matrix, as_state, is_unitary
from .words import index_to_word, parse_word

EXACT_TOL = 1e-9

# 2**24 pipeline executions is the loud upper limit for exhaustive sweeps.
MAX_SWEEP_VARS = 24


@dataclass(frozen=True)
class QueryEntry:
    """One diagonal slot of a query: fixed +1, or the sign (-1)**x_k.

    var_index is the 1-based Boolean variable index, or None for a fixed
    slot.
    """

    var_index: int | None = None

    def __post_init__(self) -> None:
        if self.var_index is not None and self.var_index < 1:
            raise ValueError(f"variable indices are 1-based, got {self.var_index}")

    @property
    def is_fixed(self) -> bool:
        return self.var_index is None


FIXED = QueryEntry()


class QuerySpec:
    """Input-dependent diagonal of one query transformation.

    Stored as `var_map`: 0 keeps the amplitude unchanged, k >= 1 multiplies
    it by (-1)**x_k. For every word the realized matrix is diagonal with
    entries in {+1, -1}, hence unitary.
    """

    __slots__ = ("var_map",)

    def __init__(self, var_map) -> None:
        vm = np.array(var_map, dtype=np.int64)
        if vm.ndim != 1 or vm.size == 0:
            raise ValueError("query diagonal must be a non-empty 1-D sequence")
        if vm.min() < 0:
            raise ValueError("variable indices must be >= 1 (0 marks a fixed slot)")
        vm.setflags(write=False)
        self.var_map = vm

    @classmethod
    def from_entries(cls, entries) -> "QuerySpec":
        return cls([0 if e.is_fixed else e.var_index for e in entries])

    @property
    def entries(self) -> tuple[QueryEntry, ...]:
        return tuple(QueryEntry(None if v == 0 else int(v)) for v in self.var_map)

    @property
    def max_var(self) -> int:
        return int(self.var_map.max())

    def __len__(self) -> int:
        return int(self.var_map.size)

    def __eq__(self, other) -> bool:
        return isinstance(other, QuerySpec) and np.array_equal(self.var_map, other.var_map)

    def __hash__(self) -> int:
        return hash(self.var_map.tobytes())

    def __repr__(self) -> str:
        return f"QuerySpec({self.var_map.tolist()})"


class Stage(NamedTuple):
    unitary: np.ndarray
    query: QuerySpec


def _locked_matrix(m, dim: int, what: str) -> np.ndarray:
    a = np.array(as_matrix(m), dtype=np.float64)
    if a.shape[0] != dim:
        raise ValueError(f"{what} has dimension {a.shape[0]}, expected {dim}")
    a.setflags(write=False)
    return a


class QueryAlgorithm:
    """A complete query algorithm over n_vars Boolean variables.

    Construction validates structure: a unit-norm power-of-two start state,
    matching dimensions everywhere, variable indices within [1, n_vars],
    and binary labels. Unitarity of the matrices is a behavioral property
    checked separately (`unitary_within`); keeping it out of the
    constructor lets damaged algorithms be loaded and then convicted by
    `check_exact` with a concrete counterexample.
    """

    __slots__ = ("n_vars", "start", "stages", "final_unitary", "labels",
                 "_pair_structured")

    def __init__(self, n_vars: int, start, stages, final_unitary, labels) -> None:
        if n_vars < 1:
            raise ValueError(f"n_vars must be positive, got {n_vars}")
        start_arr = np.array(as_state(start), dtype=np.float64)
        start_arr.setflags(write=False)
        dim = start_arr.shape[0]

        built: list[Stage] = []
        for idx, (unitary, query) in enumerate(stages, start=1):
            if not isinstance(query, QuerySpec):
                query = QuerySpec(query)
            if len(query) != dim:
                raise ValueError(f"stage {idx} query has {len(query)} slots, expected {dim}")
            if query.max_var > n_vars:
                raise ValueError(
                    f"stage {idx} queries variable {query.max_var} but n_vars = {n_vars}")
            built.append(Stage(_locked_matrix(unitary, dim, f"stage {idx} unitary"), query))
        if not built:
            raise ValueError("an algorithm needs at least one stage")

        labels_arr = np.array(labels, dtype=np.uint8)
        if labels_arr.shape != (dim,):
            raise ValueError(f"labels must have shape ({dim},), got {labels_arr.shape}")
        if labels_arr.max(initial=0) > 1:
            raise ValueError("labels must be 0 or 1")
        labels_arr.setflags(write=False)

        self.n_vars = int(n_vars)
        self.start = start_arr
        self.stages = tuple(built)
        self.final_unitary = _locked_matrix(final_unitary, dim, "final unitary")
        self.labels = labels_arr
        # Set by the builder only: marks the paired-rotation layout so
        # check_exact may use the equivalent structure-aware sweep engine.
        self._pair_structured = False

    @property
    def dim(self) -> int:
        return self.start.shape[0]

    @property
    def t_queries(self) -> int:
        return len(self.stages)

    def unitary_within(self, tol: float = 1e-12) -> bool:
        """True iff every stage unitary and the final unitary pass is_unitary."""
        return all(is_unitary(st.unitary, tol) for st in self.stages) and \
            is_unitary(self.final_unitary, tol)


@dataclass(frozen=True)
class RunTrace:
    """States after each transformation: start, then alternating unitary /
    query states per stage, then the state after the final unitary.

    Length is always 2 * t_queries + 2.
    """

    states: tuple[np.ndarray, ...]

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def after_stage(self, i: int) -> np.ndarray:
        """State after stage i's query (1-based stage number)."""
        return self.states[2 * i]


@dataclass(frozen=True)
class ComputeResult:
    output: int
    probability: float
    exact: bool


@dataclass(frozen=True)
class ExactnessReport:
    """Result of an exhaustive exactness sweep.

    `counterexample` is the lexicographically first word on which the
    algorithm output differs from the reference function or is not exact;
    None when the sweep passes. `min_probability` is the smallest
    correct-output probability observed over all words.
    """

    exact: bool
    counterexample: str | None
    min_probability: float
    inputs_checked: int


def query_signs(spec: QuerySpec, bits: np.ndarray) -> np.ndarray:
    """The +-1 diagonal realized by a query spec on concrete input bits."""
    extended = np.concatenate(([0], bits)).astype(np.float64)
    return 1.0 - 2.0 * extended[spec.var_map]


def realize_query(spec: QuerySpec, word: str) -> np.ndarray:
    """Concrete diagonal query matrix for one input word.

    The word only needs to cover the variables the spec mentions, so specs
    can be realized standalone without a full algorithm around them.
    """
    bits = parse_word(word)
    if spec.max_var > bits.shape[0]:
        raise ValueError(
            f"query references variable {spec.max_var} but the word has {bits.shape[0]} bits")
    return np.diag(query_signs(spec, bits))


def run(alg: QueryAlgorithm, word: str) -> RunTrace:
    """Execute the pipeline on one word, recording the state after every
    transformation (exactly t_queries query applications)."""
    bits = parse_word(word, alg.n_vars)
    states = [alg.start]
    state = alg.start
    for stage in alg.stages:
        state = stage.unitary @ state
        states.append(state)
        state = state * query_signs(stage.query, bits)
        states.append(state)
    state = alg.final_unitary @ state
    states.append(state)
    for s in states:
        s.setflags(write=False)
    return RunTrace(states=tuple(states))


def measure(final: np.ndarray, labels) -> tuple[float, float]:
    """Probabilities (p0, p1) of the two outputs under the label map.

    p_j sums the squared amplitudes of all basis states labeled j; the
    result only depends on |amplitude|, never on its sign.
    """
    v = np.asarray(final, dtype=np.float64)
    lab = np.asarray(labels, dtype=np.uint8)
    if v.shape != lab.shape:
        raise ValueError(f"state shape {v.shape} does not match labels shape {lab.shape}")
    if lab.max(initial=0) > 1:
        raise ValueError("labels must be 0 or 1")
    p = v * v
    p1 = float(p[lab == 1].sum())
    p0 = float(p[lab == 0].sum())
    return p0, p1


def compute(alg: QueryAlgorithm, word: str) -> ComputeResult:
    """Run, measure, and report (output bit, its probability, exact flag).

    Output is the more probable label; the exact flag requires probability
    >= 1 - EXACT_TOL. A dead tie reports output 0 with probability 0.5 and
    exact False rather than raising.
    """
    p0, p1 = measure(run(alg, word).final, alg.labels)
    output = 1 if p1 > p0 else 0
    probability = max(p0, p1)
    return ComputeResult(output=output, probability=probability,
                         exact=probability >= 1.0 - EXACT_TOL)


def run_batch(alg: QueryAlgorithm, words: np.ndarray) -> list[np.ndarray]:
    """Vectorized run over many words at once (a row per word).

    Returns the same 2T + 2 snapshots as `run`, each as a (len(words), dim)
    array. Meant for property sweeps; per-word rows agree with `run` up to
    BLAS accumulation order (a few ulps), not bitwise.
    """
    words = np.asarray(words, dtype=np.int64)
    n = alg.n_vars
    shifts = (n - np.arange(1, n + 1)).astype(np.int64)
    signs = np.empty((words.shape[0], n + 1), dtype=np.float64)
    signs[:, 0] = 1.0
    signs[:, 1:] = 1.0 - 2.0 * ((words[:, None] >> shifts[None, :]) & 1)

    states = np.tile(alg.start, (words.shape[0], 1))
    snapshots = [states]
    for stage in alg.stages:
        states = states @ stage.unitary.T
        snapshots.append(states)
        states = states * signs[:, stage.query.var_map]
        snapshots.append(states)
    snapshots.append(states @ alg.final_unitary.T)
    return snapshots


# ---------------------------------------------------------------------------
# exhaustive exactness checking
# ---------------------------------------------------------------------------


def _sweep_arrays(alg: QueryAlgorithm):
    """Kernel-ready views: transposed contiguous unitaries and var maps."""
    stage_uts = np.stack([np.ascontiguousarray(st.unitary.T) for st in alg.stages])
    var_maps = np.stack([st.query.var_map for st in alg.stages])
    final_t = np.ascontiguousarray(alg.final_unitary.T)
    return alg.start, stage_uts, var_maps, final_t, alg.labels


def _chunk_grid(n_vars: int, dim: int) -> list[tuple[int, int]]:
    total = 1 << n_vars
    rows = max(1, min(total, (1 << 21) // dim))
    return [(lo, min(lo + rows, total)) for lo in range(0, total, rows)]


_POOL_STATE: dict | None = None

# Above this many variables the dense sweep stops being an interactive job
# (cost grows as 2**n * dim**2), so tagged builder output switches to the
# structure-aware engine under engine="auto".
_PAIR_ENGINE_THRESHOLD = 18


def _pool_init(payload: dict) -> None:
    global _POOL_STATE
    _POOL_STATE = payload


def _pool_task(span: tuple[int, int]) -> tuple[int, float]:
    lo, hi = span
    state = _POOL_STATE
    table = state["table"]
    if table is None:
        expected = _kernels.verify_values_range(state["n_vars"], lo, hi)
    else:
        expected = table[lo:hi]
    if state["engine"] == "pair":
        return _kernels.pair_sweep_range(state["n_vars"], lo, hi, expected, state["tol"])
    start, stage_uts, var_maps, final_t, labels = state["arrays"]
    return _kernels.sweep_range(start, stage_uts, var_maps, final_t, labels,
                                state["n_vars"], lo, hi, expected, state["tol"])


def check_exact(alg: QueryAlgorithm, f: BooleanFunction, *,
                workers: int | None = None, engine: str = "auto") -> ExactnessReport:
    """Exhaustively check that the algorithm computes f exactly.

    Every word is swept (no early exit), so the report is identical whether
    the work runs serially or across `workers` processes: chunks are laid
    on a fixed absolute grid, the first counterexample is the minimum over
    chunk results, and min_probability is an order-independent minimum.

    `engine` picks how the pipeline is executed: "dense" multiplies the
    algorithm's matrices; "pair" runs the builder's paired-rotation layout
    directly and is only accepted for builder output (anything loaded or
    hand-assembled is always convicted or cleared through its actual
    matrices); "auto" uses "pair" for builder output from 18 variables up,
    where the dense sweep stops being a minutes-scale job.
    """
    if alg.n_vars != f.arity:
        raise ValueError(f"algorithm has {alg.n_vars} variables, function has {f.arity}")
    if f.arity > MAX_SWEEP_VARS:
        raise ValueError(
            f"exhaustive check capped at {MAX_SWEEP_VARS} variables, got {f.arity}")
    if engine not in ("auto", "dense", "pair"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "pair" and not alg._pair_structured:
        raise ValueError("the pair engine only applies to builder-produced algorithms")
    if engine == "auto":
        engine = "pair" if alg._pair_structured and alg.n_vars >= _PAIR_ENGINE_THRESHOLD \
            else "dense"

    payload = {
        "engine": engine,
        "n_vars": alg.n_vars,
        "table": f.table,
        "tol": EXACT_TOL,
        "arrays": _sweep_arrays(alg) if engine == "dense" else None,
    }
    grid = _chunk_grid(alg.n_vars, alg.dim)

    if workers is not None and workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=_pool_init,
                                 initargs=(payload,)) as pool:
            results = list(pool.map(_pool_task, grid))
    else:
        _pool_init(payload)
        try:
            results = [_pool_task(span) for span in grid]
        finally:
            globals()["_POOL_STATE"] = None

    fails = [first for first, _ in results if first >= 0]
    min_prob = min(prob for _, prob in results)
    counterexample = index_to_word(min(fails), alg.n_vars) if fails else None
    return ExactnessReport(exact=not fails, counterexample=counterexample,
                           min_probability=min_prob, inputs_checked=1 << alg.n_vars)
