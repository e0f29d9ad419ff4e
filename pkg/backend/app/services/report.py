"""
Report Models - JSON report schema for pipeline results
Operators and rational functions are embedded as grammar text
"""
import logging
from dataclasses import asdict
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.core.config import settings
from app.services import polyalg
from app.services.equiv import GaugeMap, ProjectiveMap
from app.services.hyper import CandidateStats
from app.services.ore import OrePoly, Recurrence, format_operator
from app.services.pipeline import RunResult
from app.services.polyalg import Poly, Rat, RatFunc

logger = logging.getLogger(__name__)


class ArtifactModel(BaseModel):
    name: str
    kind: str
    value: Any = None


class CandidateStatsModel(BaseModel):
    total: int = 0
    after_filter: int = 0
    tested: int = 0
    factors_found: int = 0
    degenerate: int = 0
    requires_extension: int = 0
    incomplete: int = 0


class ReportModel(BaseModel):
    schema_version: str = Field(default_factory=lambda: settings.report_schema_version)
    command: str
    input: str
    case: str
    status: str
    reason: str = ""
    artifacts: List[ArtifactModel] = []
    candidate_stats: Dict[str, CandidateStatsModel] = {}
    timings: Optional[Dict[str, float]] = None

    def artifact(self, name: str) -> Any:
        for a in self.artifacts:
            if a.name == name:
                return a.value
        return None


def encode(value: Any) -> tuple:
    """(kind, JSON-ready value)"""
    if value is None or isinstance(value, (bool, int, str, float)):
        return "value", value
    if isinstance(value, OrePoly):
        return "operator", format_operator(value)
    if isinstance(value, RatFunc):
        return "ratfunc", polyalg.format_ratfunc(value)
    if isinstance(value, Poly):
        return "poly", polyalg.format_poly(value)
    if isinstance(value, Rat):
        return "rational", polyalg.format_rat(value)
    if isinstance(value, Recurrence):
        return "recurrence", value.format()
    if isinstance(value, GaugeMap):
        return "gauge", {"G": format_operator(value.G)}
    if isinstance(value, ProjectiveMap):
        return "projective_map", {"r": polyalg.format_ratfunc(value.r), "G": format_operator(value.gauge.G)}
    if isinstance(value, (list, tuple)):
        kinds = set()
        items = []
        for v in value:
            k, e = encode(v)
            kinds.add(k)
            items.append(e)
        kind = f"list[{kinds.pop()}]" if len(kinds) == 1 else "list"
        return kind, items
    logger.debug(f"encoding {type(value).__name__} as text")
    return "text", str(value)


def build_report(result: RunResult) -> ReportModel:
    report = result.report
    artifacts = []
    for name, value in report.artifacts.items():
        kind, encoded = encode(value)
        artifacts.append(ArtifactModel(name=name, kind=kind, value=encoded))
    stats = {key: CandidateStatsModel(**asdict(s)) for key, s in report.stats.items()
             if isinstance(s, CandidateStats)}
    return ReportModel(
        command=result.command,
        input=format_operator(report.input),
        case=report.case,
        status=report.status,
        reason=report.reason,
        artifacts=artifacts,
        candidate_stats=stats,
        timings=result.timings or None,
    )


def to_json(model: ReportModel) -> str:
    return model.model_dump_json(indent=2, exclude_none=True)
