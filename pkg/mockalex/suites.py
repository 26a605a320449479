"""Seeded verification suites behind ``mockalex verify``."""

from __future__ import annotations

import random
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from structlog.stdlib import BoundLogger

from mockalex.diagram import is_planar
from mockalex.invariants import (
    conjecture_harness,
    mirror,
    mirrored_form,
    mock_alexander,
    reverse,
    reversed_form,
    skein_triple,
    verify_skein,
)
from mockalex.log_config import get_logger
from mockalex.matrix import permanent, potential_matrix
from mockalex.models import CheckRecord, Counterexample, RunConfig, Suite, SuiteReport, TraceStep
from mockalex.moves import random_equivalent, random_starred
from mockalex.planar import normalized_planar, planar_walk, resolve_outer
from mockalex.poly import LaurentPoly
from mockalex.stars import StarredDiagram
from mockalex.statesum import potential


@dataclass
class ItemResult:
    passed: int = 0
    records: list[CheckRecord] = field(default_factory=list)
    counterexamples: list[Counterexample] = field(default_factory=list)

    def check(
        self,
        identity: str,
        site: str,
        lhs: LaurentPoly,
        rhs: LaurentPoly,
        sd: StarredDiagram,
        trace: list[TraceStep] | None = None,
    ) -> bool:
        if lhs == rhs:
            self.passed += 1
            return True
        record = CheckRecord(identity=identity, site=site, lhs=lhs.to_text(), rhs=rhs.to_text(), verdict=False)
        self.records.append(record)
        self.counterexamples.append(
            Counterexample(
                identity=identity,
                detail=f"{record.lhs} != {record.rhs} at {site}",
                diagram=sd.to_document(),
                trace=trace or [],
            )
        )
        return False


@dataclass(frozen=True)
class SuiteParams:
    seed: int
    steps: int
    size_bound: int


def _rng(params: SuiteParams, index: int) -> random.Random:
    return random.Random(params.seed * 1_000_003 + index)


def check_perm(params: SuiteParams, index: int) -> ItemResult:
    result = ItemResult()
    sd = random_starred(_rng(params, index), params.size_bound)
    m = potential_matrix(sd)
    sparse = permanent(m, "sparse")
    result.check("potential=permanent", f"item {index}", potential(sd), sparse, sd)
    result.check("ryser=sparse", f"item {index}", permanent(m, "ryser"), sparse, sd)
    return result


def check_invariance(params: SuiteParams, index: int) -> ItemResult:
    result = ItemResult()
    sd = random_starred(_rng(params, index), params.size_bound)
    before = mock_alexander(sd, "permanent")
    walked, trace = random_equivalent(sd, params.steps, params.seed + index, params.size_bound + 4)
    result.check("invariance", f"item {index}", mock_alexander(walked, "permanent"), before, sd, trace)
    if is_planar(sd.base) and sd.base.k == 1:
        outer = resolve_outer(sd.base, None).key
        walked, outer_after, trace = planar_walk(sd, outer, params.steps, params.seed + index, params.size_bound + 4)
        result.check(
            "planar invariance",
            f"item {index}",
            normalized_planar(walked, outer_after),
            normalized_planar(sd, outer),
            sd,
            trace,
        )
    return result


def check_symmetry(params: SuiteParams, index: int) -> ItemResult:
    result = ItemResult()
    sd = random_starred(_rng(params, index), params.size_bound)
    p = mock_alexander(sd, "permanent")
    result.check("reversal", f"item {index}", mock_alexander(reverse(sd), "permanent"), reversed_form(p), sd)
    result.check("mirror", f"item {index}", mock_alexander(mirror(sd), "permanent"), mirrored_form(p), sd)
    return result


def check_skein(params: SuiteParams, index: int) -> ItemResult:
    result = ItemResult()
    sd = random_starred(_rng(params, index), params.size_bound, merges=False)
    for crossing in sorted(sd.base.crossings):
        report = verify_skein(skein_triple(sd, crossing), "permanent")
        if report.verdict is None:
            continue
        if report.verdict:
            result.passed += 1
            continue
        result.records.append(
            CheckRecord(
                identity=report.identity,
                site=f"item {index} crossing {crossing} ({report.case})",
                lhs=report.lhs or "",
                rhs=report.rhs or "",
                verdict=False,
            )
        )
        result.counterexamples.append(
            Counterexample(identity=f"skein {report.case}", detail=report.model_dump_json(), diagram=sd.to_document())
        )
    return result


CHECKS: dict[str, Callable[[SuiteParams, int], ItemResult]] = {
    "perm": check_perm,
    "invariance": check_invariance,
    "symmetry": check_symmetry,
    "skein": check_skein,
}


def run_suite(config: RunConfig, suite: Suite, log: BoundLogger | None = None) -> SuiteReport:
    """Run ``config.iterations`` seeded items, in parallel when threads > 1.

    The report lists items in index order whatever the thread count.
    """
    log = (log or get_logger()).bind(suite=suite, seed=config.seed)
    report = SuiteReport(suite=suite, seed=config.seed, iterations=config.iterations)

    if suite == "conjectures":
        harness = conjecture_harness(config.iterations, config.seed, config.size_bound, log)
        # only the mock-specialized statement gates the run
        report.passed = harness.conjecture2_passed
        report.failed = harness.conjecture2_failed
        report.counterexamples = harness.counterexamples
        return report

    params = SuiteParams(seed=config.seed, steps=config.steps, size_bound=config.size_bound)
    check = CHECKS[suite]
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        items = list(pool.map(lambda i: check(params, i), range(config.iterations)))
    for i, item in enumerate(items):
        report.passed += item.passed
        report.failed += len(item.records)
        report.records += item.records
        report.counterexamples += item.counterexamples
        if item.records:
            log.warning("Check failed", item=i, identities=[r.identity for r in item.records])
    log.info("Suite done", passed=report.passed, failed=report.failed)
    return report


def write_artifacts(report: SuiteReport, directory: Path) -> list[Path]:
    """One JSON file per counterexample; each re-parses as a diagram document."""
    if not report.counterexamples:
        return []
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, example in enumerate(report.counterexamples):
        path = directory / f"{report.suite}-{report.seed}-{i}.json"
        path.write_text(example.model_dump_json(by_alias=True, exclude_none=True, indent=2))
        paths.append(path)
    return paths
