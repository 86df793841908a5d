import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional

import numpy as np

from apsbench.constants import ROUNDED_COLUMNS, TABLE_COLUMNS, TABLE_K_RANGES
from apsbench.core.settings import logger, settings
from apsbench.enums.report import OutputFormat
from apsbench.schemas.fed import FedConfig, RatioReport
from apsbench.schemas.henning_yeo import HenningYeoInstance, HYSpec
from apsbench.schemas.reports import RunConfig, TableReport
from apsbench.services.fed_service import FedService, r_k
from apsbench.services.henning_yeo_service import HenningYeoService, henning_yeo_order, smallest_p_for_order
from apsbench.services.matching_service import MatchingService, matching_ratios

GAP_TABLE = "gap"


def table_k_range(table: str, config: RunConfig) -> List[int]:
    """Degrees of a table: the configured range, else 2..10 for Table I and 3..10 otherwise."""
    low, high = config.k_range or TABLE_K_RANGES.get(table, TABLE_K_RANGES["III"])
    return list(range(low, high + 1))


def min_order_for(table: str, config: RunConfig) -> int:
    """Smallest instance order of a table: the configured one, else the weighted or unweighted regime."""
    if config.min_order is not None:
        return config.min_order
    if table in ("IV", GAP_TABLE):
        return settings.WEIGHTED_TABLE_MIN_ORDER
    return settings.TABLE_MIN_ORDER


def replication_for(k: int, table: str, config: RunConfig) -> int:
    """Replication parameter of a row: the configured p, else the smallest p reaching the table's order."""
    if config.p is not None:
        return config.p
    return smallest_p_for_order(k, min_order_for(table, config))


def base_seeds(k: int, config: RunConfig) -> List[Optional[int]]:
    """Canonical base first, then `samples - 1` seeded random bases (even k only)."""
    if k % 2 == 1:
        return [None]
    rng = np.random.default_rng([config.seed, k])
    return [None] + [int(seed) for seed in rng.integers(0, 2**31, size=config.samples - 1)]


def build_row(table: str, k: int, config: RunConfig) -> RatioReport:
    """
    Computes one table row; module-level so that worker processes can run it.
    """
    if table == "I":
        leading = r_k(k)
        return RatioReport(k=k, r_k=leading.ratio, kappa_k=leading.kappa)
    p = replication_for(k, table, config)
    n = henning_yeo_order(k, p)
    m_k, m_hat_k = matching_ratios(k, n)
    if table == "II":
        return RatioReport(k=k, p=p, n=n, m_k=float(m_k), m_hat_k=float(m_hat_k))
    hy_service = HenningYeoService()
    fed_service = FedService(FedConfig())
    instances: List[HenningYeoInstance] = [
        hy_service.build(HYSpec(k=k, p=p, base_seed=seed)) for seed in base_seeds(k, config)
    ]
    if table == GAP_TABLE:
        return fed_service.aps_gap_report(instances[0], d_w=config.d_w)
    improved = [fed_service.improved_ratio(instance).r_hat for instance in instances]
    row = RatioReport(
        k=k,
        p=p,
        n=n,
        r_hat_k=improved[0],
        r_hat_min=min(improved),
        r_hat_max=max(improved),
        m_k=float(m_k),
        m_hat_k=float(m_hat_k),
        gap=float(m_hat_k) - improved[0],
    )
    if table == "III":
        leading = r_k(k)
        return row.model_copy(update={"r_k": leading.ratio, "kappa_k": leading.kappa})
    weighted = fed_service.reweight(instances[0], config.d_w)
    fed = fed_service.weighted_fed(weighted)
    _, m_hat_w = MatchingService().weighted_matching_ratios(weighted.graph)
    return row.model_copy(
        update={"d_w": config.d_w, "r_hat_w": fed.r_hat_w, "m_hat_w": m_hat_w, "gap_w": m_hat_w - fed.r_hat_w}
    )


class ReportService:
    """
    Builds ratio tables row by row and renders them as CSV or JSON.

    Attributes:
        config (RunConfig): Run options.
    """

    def __init__(self, config: RunConfig):
        self.config = config

    def regime(self, table: str) -> str:
        """Human-readable description of how the instances of a table were chosen."""
        if table == "I":
            return "degree only"
        if self.config.p is not None:
            regime = f"p={self.config.p}"
        else:
            regime = f"smallest p with order >= {min_order_for(table, self.config)}"
        if self.config.samples > 1:
            regime += f"; {self.config.samples} base graphs per even k, seed {self.config.seed}"
        return regime

    def build_table(self, table: str) -> TableReport:
        """
        Computes every row of a table, in parallel when `THREADS` > 1.

        Args:
            table (str): I, II, III, IV or gap.

        Returns:
            TableReport: Rows ordered by k.
        """
        degrees = table_k_range(table, self.config)
        logger.info(f"Building table {table} for k={degrees[0]}..{degrees[-1]} ({self.regime(table)})")
        if settings.THREADS > 1 and len(degrees) > 1:
            with ProcessPoolExecutor(max_workers=settings.THREADS) as executor:
                rows = list(executor.map(build_row, [table] * len(degrees), degrees, [self.config] * len(degrees)))
        else:
            rows = [build_row(table, k, self.config) for k in degrees]
        flagged = [row.k for row in rows if row.violation_candidate]
        if flagged:
            logger.warning(f"Negative gaps at k={flagged}")
        return TableReport(table=table, columns=TABLE_COLUMNS[table], regime=self.regime(table), rows=rows)

    def render(self, report: TableReport, output_format: OutputFormat) -> str:
        """
        Renders a table; CSV carries a "<column>_rounded" companion at printed precision for ratio columns.
        """
        if output_format == OutputFormat.JSON:
            return report.model_dump_json(indent=2) + "\n"
        header = []
        for column in report.columns:
            header.append(column)
            if column in ROUNDED_COLUMNS:
                header.append(f"{column}_rounded")
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in report.rows:
            values = row.model_dump()
            record = {}
            for column in report.columns:
                value = values.get(column)
                record[column] = "" if value is None else repr(value) if isinstance(value, float) else str(value)
                if column in ROUNDED_COLUMNS:
                    record[f"{column}_rounded"] = "" if value is None else ROUNDED_COLUMNS[column].format(value)
            writer.writerow(record)
        return buffer.getvalue()

    def write(self, text: str) -> None:
        """Writes a rendered report to the configured path, or stdout when none is set."""
        if self.config.out:
            Path(self.config.out).write_text(text)
            logger.info(f"Report written to {self.config.out}")
        else:
            sys.stdout.write(text)
