"""
Command Pipeline - One entry point per command for the CLI and the HTTP API
Each command parses its operands, runs the engine and returns a SolveReport
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from app.core.config import settings
from app.core.errors import AlgebraError
from app.services import dmod, solve
from app.services.corpus import corpus, verify_entry
from app.services.equiv import gauge_hom, is_gauge_equivalent, projective_hom, verify_projective_map
from app.services.hyper import right_factors
from app.services.ore import OrePoly, parse_operator
from app.services.solve import FAIL, INCOMPLETE, REQUIRES_EXTENSION, SOLVED, SolveReport

logger = logging.getLogger(__name__)

EXIT_CODES = {SOLVED: 0, FAIL: 1, INCOMPLETE: 2, REQUIRES_EXTENSION: 3}
USAGE_EXIT = 4


@dataclass
class RunOptions:
    order: Optional[int] = None
    p: Optional[int] = None
    d: Optional[int] = None
    terms: Optional[int] = None
    use_filter: Optional[bool] = None
    timings: bool = False


@dataclass
class RunResult:
    command: str
    operands: List[str]
    report: SolveReport
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES.get(self.report.status, 1)


def resolve_operand(text: str) -> OrePoly:
    """Operator text, or @name for a corpus entry"""
    if text.startswith("@"):
        return corpus.get(text[1:]).operator
    return parse_operator(text)


def _require(value, flag: str):
    if value is None:
        raise AlgebraError(f"missing {flag}")
    return value


def _factor(ops: List[OrePoly], opts: RunOptions) -> SolveReport:
    L = ops[0]
    d = _require(opts.order, "--order")
    search = right_factors(L, d)
    report = SolveReport(L, "factor", SOLVED, {"factors": search.factors, "order": d},
                         {f"factors d={d}": search.stats}, search.reason)
    if not search.complete:
        report.status = INCOMPLETE
    elif not search.factors and search.stats.requires_extension:
        report.status = REQUIRES_EXTENSION
        report.reason = f"{search.stats.requires_extension} candidate constant(s) need an algebraic extension"
    return report


def _absfactor(ops: List[OrePoly], opts: RunOptions) -> SolveReport:
    L = ops[0]
    absf = solve.abs_factorization(L, opts.use_filter)
    stats = {f"section p={p} factors": s for p, s in absf.stats.items()}
    artifacts = {"p": absf.p, "factors": absf.factors}
    if absf.p is not None:
        artifacts["section"] = absf.sections[absf.p].lp
    status = INCOMPLETE if absf.status == INCOMPLETE else SOLVED
    return SolveReport(L, absf.status, status, artifacts, stats)


def _section(ops: List[OrePoly], opts: RunOptions) -> SolveReport:
    L = ops[0]
    sec = dmod.section_operator(L, _require(opts.p, "--p"))
    artifacts = {"section": sec.lp, "restricted": sec.ldown, "order": sec.lp.order,
                 "order_drop": sec.lower_than_expected}
    return SolveReport(L, "section", SOLVED, artifacts)


def _solve3(ops: List[OrePoly], opts: RunOptions) -> SolveReport:
    return solve.solve_order3(ops[0], opts.use_filter)


def _solve4(ops: List[OrePoly], opts: RunOptions) -> SolveReport:
    return solve.solve_order4(ops[0], opts.use_filter)


def _power(kind: str) -> Callable[[List[OrePoly], RunOptions], SolveReport]:
    build = dmod.sym_power_op if kind == "sympow" else dmod.ext_power_op

    def run(ops: List[OrePoly], opts: RunOptions) -> SolveReport:
        L = ops[0]
        result = build(L, _require(opts.d, "--d"))
        artifacts = {"operator": result.operator, "order": result.order, "expected": result.expected,
                     "lower_than_expected": result.lower_than_expected}
        return SolveReport(L, kind, SOLVED, artifacts)
    return run


def _symprod(ops: List[OrePoly], opts: RunOptions) -> SolveReport:
    L1, L2 = ops
    return SolveReport(L1, "symprod", SOLVED, {"operator": dmod.sym_product_op(L1, L2)})


def _gaugehom(ops: List[OrePoly], opts: RunOptions) -> SolveReport:
    L1, L2 = ops
    hom = gauge_hom(L1, L2)
    gm = is_gauge_equivalent(L1, L2) if L1.order == L2.order else None
    artifacts = {"basis": hom.basis, "dimension": len(hom.basis), "equivalent": gm is not None}
    if gm is not None:
        artifacts["gauge"] = gm.G
    return SolveReport(L1, "gaugehom", SOLVED if hom.complete else INCOMPLETE, artifacts)


def _projhom(ops: List[OrePoly], opts: RunOptions) -> SolveReport:
    L, Ltarget = ops
    report = SolveReport(Ltarget, "projhom", FAIL)
    pm = projective_hom(L, Ltarget)
    if pm is None:
        report.reason = "no projective map"
        return report
    report.artifacts["projective_map"] = pm
    report.artifacts["verified"] = verify_projective_map(Ltarget, L, pm, opts.terms)
    report.status = SOLVED if report.artifacts["verified"] else FAIL
    return report


def _verify(names: List[str], opts: RunOptions) -> SolveReport:
    entry = corpus.get(names[0].lstrip("@"))
    result = verify_entry(entry, opts.terms or settings.verify_terms)
    artifacts = {
        "entry": entry.name,
        "det_checked": result.det_checked,
        "det_matches": result.det_matches,
        "oracle_checked": result.oracle_checked,
        "valid_points": result.valid_points,
        "nonzero_residuals": sum(1 for r in result.residuals if r),
    }
    return SolveReport(entry.operator, "verify", SOLVED if result.ok else FAIL, artifacts)


COMMANDS: Dict[str, Callable] = {
    "factor": _factor,
    "absfactor": _absfactor,
    "section": _section,
    "solve3": _solve3,
    "solve4": _solve4,
    "sympow": _power("sympow"),
    "extpow": _power("extpow"),
    "symprod": _symprod,
    "gaugehom": _gaugehom,
    "projhom": _projhom,
    "verify": _verify,
}

ARITY = {"symprod": 2, "gaugehom": 2, "projhom": 2}


def run(command: str, operands: List[str], opts: Optional[RunOptions] = None) -> RunResult:
    opts = opts or RunOptions()
    if command not in COMMANDS:
        raise AlgebraError(f"unknown command {command!r}")
    arity = ARITY.get(command, 1)
    if len(operands) != arity:
        raise AlgebraError(f"{command} takes {arity} operator(s), got {len(operands)}")
    started = time.perf_counter()
    args = operands if command == "verify" else [resolve_operand(t) for t in operands]
    parsed = time.perf_counter()
    logger.info(f"running {command} on {len(operands)} operand(s)")
    report = COMMANDS[command](args, opts)
    finished = time.perf_counter()
    timings = {"parse": parsed - started, "run": finished - parsed} if opts.timings else {}
    logger.info(f"{command}: {report.status} ({report.case})")
    return RunResult(command, list(operands), report, timings)


OPTION_KEYS = ("order", "d", "terms")


@dataclass
class CheckResult:
    name: str
    result: RunResult
    mismatches: List[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_entry(name: str, use_filter: Optional[bool] = None) -> CheckResult:
    """Run the entry's expected command and compare case, status, p and factor count"""
    entry = corpus.get(name)
    if entry.expected is None:
        raise AlgebraError(f"corpus entry {name!r} states no expected outcome")
    exp = entry.expected
    opts = RunOptions(use_filter=use_filter)
    for key in OPTION_KEYS:
        if key in exp.params:
            setattr(opts, key, int(exp.params[key]))
    result = run(exp.command, [f"@{name}"], opts)
    report = result.report
    observed = {
        "case": report.case,
        "status": report.status,
        "p": report.artifacts.get("p"),
        "count": len(report.artifacts.get("factors") or []),
    }
    mismatches = []
    if "status" not in exp.params and report.status != SOLVED:
        mismatches.append(f"status: expected {SOLVED}, got {report.status}")
    for key, want in exp.params.items():
        if key in OPTION_KEYS:
            continue
        got = observed.get(key)
        if str(got) != want:
            mismatches.append(f"{key}: expected {want}, got {got}")
    if mismatches:
        logger.warning(f"{name}: {'; '.join(mismatches)}")
    return CheckResult(name, result, mismatches)
