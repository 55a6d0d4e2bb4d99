"""Data models for kmapfactor."""

from __future__ import annotations

from enum import Enum
from typing import ClassVar, Literal

from pydantic import BaseModel, ConfigDict, Field

STATS_SCHEMA_VERSION = 1


class MessageType(Enum):
    """Message types with associated display styles."""

    ERROR = ("red", "Error")
    SUCCESS = ("green", "Success")
    INFO = ("blue", "Info")
    WARNING = ("yellow", "Warning")


class Mode(str, Enum):
    """Which group shapes the solver may use."""

    CONVENTIONAL = "conventional"
    EXTENDED = "extended"


class Method(str, Enum):
    """How the solver selects groups."""

    EXACT = "exact"
    GREEDY = "greedy"
    ORACLE = "oracle"


class SweepMethod(str, Enum):
    """Methods a corpus sweep can run per function."""

    EXACT = "exact"
    GREEDY = "greedy"
    BOTH = "both"

    @property
    def methods(self) -> tuple[Method, ...]:
        """Solver methods this sweep setting expands to."""
        if self is SweepMethod.BOTH:
            return (Method.EXACT, Method.GREEDY)
        return (Method(self.value),)


class SolverConfig(BaseModel):
    """Tuning knobs for minimize().

    The objective is fixed to 2-input gate count.
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, populate_by_name=True)

    max_exclusions: int = Field(default=2, ge=0, alias="max-exclusions")
    method: Method = Method.EXACT
    node_budget: int = Field(default=2_000_000, gt=0, alias="node-budget")
    objective: Literal["gates"] = "gates"


class Settings(BaseModel):
    """Effective configuration after merging all sources."""

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, populate_by_name=True)

    solver: SolverConfig = Field(default_factory=SolverConfig)
    workers: int = Field(default=1, ge=1)


class RunStats(BaseModel):
    """Statistics for one minimisation run, emitted by ``minimize --json``."""

    schema_version: int = Field(default=STATS_SCHEMA_VERSION, alias="schema")
    var_count: int
    on_count: int
    dc_count: int
    mode: Mode
    method: Method
    cost: int = Field(ge=0)
    group_count: int = Field(ge=0)
    depth: int = Field(ge=0)
    search_nodes: int = Field(ge=0)
    candidate_count: int = Field(ge=0)
    optimal: bool
    elapsed_ms: float = Field(ge=0)
    expression: str

    model_config: ClassVar[ConfigDict] = ConfigDict(populate_by_name=True)

    def to_json(self) -> str:
        """Serialise with the public field names (``schema`` first).

        Returns:
            Single-line JSON text.
        """
        return self.model_dump_json(by_alias=True)


class ModeResult(BaseModel):
    """Outcome of one (mode, method) solve inside a sweep."""

    mode: Mode
    method: Method
    cost: int
    group_count: int
    verified: bool
    aborted: bool
    expression: str


class SweepRecord(BaseModel):
    """Per-function line of the sweep JSON-lines output.

    Holds no timing so that reruns are byte-identical.
    """

    schema_version: int = Field(default=STATS_SCHEMA_VERSION, alias="schema")
    index: int
    var_count: int
    on_count: int
    results: list[ModeResult]
    savings: int | None = None

    model_config: ClassVar[ConfigDict] = ConfigDict(populate_by_name=True)

    def result_for(self, mode: Mode, method: Method) -> ModeResult | None:
        """Look up the result recorded for a (mode, method) pair.

        Args:
            mode: Solver mode.
            method: Solver method.

        Returns:
            The result, or None when that pair was not run.
        """
        for result in self.results:
            if result.mode is mode and result.method is method:
                return result
        return None


class SweepSummary(BaseModel):
    """Aggregated sweep statistics."""

    var_count: int
    function_count: int
    modes: list[Mode]
    methods: list[Method]
    verification_failures: int = 0
    budget_aborts: int = 0
    dominance_violations: int = 0
    greedy_bound_violations: int = 0
    extended_wins: int = 0
    mean_cost: dict[str, float] = Field(default_factory=dict)
    savings_histogram: dict[int, int] = Field(default_factory=dict)
    greedy_excess_total: dict[str, int] = Field(default_factory=dict)
