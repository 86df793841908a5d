from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from apsbench.core.settings import settings
from apsbench.enums.report import OutputFormat, TableId
from apsbench.schemas.fed import RatioReport


class RunConfig(BaseModel):
    """
    Run-level options of a command, built from the parsed command line.

    Attributes:
        command (str): Subcommand name.
        table (Optional[TableId]): Table to reproduce.
        k_range (Optional[Tuple[int, int]]): Inclusive degree range; the table default when omitted.
        p (Optional[int]): Fixed replication parameter; overrides min_order.
        min_order (Optional[int]): Minimal instance order; the configured regime when omitted.
        d_w (float): Internal to external weight ratio.
        samples (int): Number of base graphs per even degree.
        seed (int): Seed of every randomised choice.
        output_format (OutputFormat): Report format.
        out (Optional[str]): Output path; stdout when omitted.
    """

    command: str
    table: Optional[TableId] = None
    k_range: Optional[Tuple[int, int]] = None
    p: Optional[int] = Field(default=None, ge=1)
    min_order: Optional[int] = Field(default=None, ge=1)
    d_w: float = Field(default=settings.DEFAULT_WEIGHT_RATIO, gt=0)
    samples: int = Field(default=1, ge=1)
    seed: int = 0
    output_format: OutputFormat = OutputFormat.CSV
    out: Optional[str] = None

    @model_validator(mode="after")
    def check_k_range(self) -> "RunConfig":
        if self.k_range is not None and self.k_range[0] > self.k_range[1]:
            raise ValueError(f"Empty degree range {self.k_range}.")
        return self


class TableReport(BaseModel):
    """
    Attributes:
        table (str): Table identifier (I, II, III, IV or gap).
        columns (List[str]): Column layout of the CSV rendering.
        regime (str): Description of how instances were chosen.
        rows (List[RatioReport]): One row per degree.
    """

    table: str
    columns: List[str]
    regime: str
    rows: List[RatioReport]


class CheckResult(BaseModel):
    """
    Outcome of one verification suite.

    Attributes:
        name (str): Suite name.
        checked (int): Number of individual assertions evaluated.
        failures (List[str]): Description of every failed assertion.
    """

    name: str
    checked: int = 0
    failures: List[str] = []

    @property
    def passed(self) -> bool:
        return not self.failures


class VerificationSummary(BaseModel):
    """
    Attributes:
        results (List[CheckResult]): Outcome of every suite, in execution order.
    """

    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def checked(self) -> int:
        return sum(result.checked for result in self.results)

    @property
    def failures(self) -> List[str]:
        return [f"{result.name}: {failure}" for result in self.results for failure in result.failures]
