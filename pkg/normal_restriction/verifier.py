import json
import time
import logging

from dataclasses import asdict, dataclass, field
from queue import Empty, Queue
from threading import Lock, Thread
from typing import Any, Dict, List, Optional

from .corpusdata import VerifierConfig
from .errors import GroupError, UnknownSuite
from .group import FiniteGroup
from .suites import SUITE_IDS, SUITES, GroupOutcome, Suite, SuiteContext, prepare

VERIFIED = "verified"
REFUTED = "refuted"
SKIPPED = "skipped"

TEXT = "text"
MACHINE = "machine"


def set_logger(debug_level: int) -> None:
    """Configure logger for verification troubleshooting"""

    if debug_level == 1:
        level = logging.INFO
    elif debug_level == 2:
        level = logging.DEBUG
    else:
        level = logging.WARNING

    logging.basicConfig(
        format='%(asctime)s %(levelname)s (thread: %(threadName)s) %(filename)s/%(funcName)s: %(message)s',
        level=level
    )


@dataclass
class VerificationReport:
    suite_id: str
    groups_checked: int = 0
    hypothesis_holders: List[str] = field(default_factory=list)
    hypothesis_non_holders: List[str] = field(default_factory=list)
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    skipped: List[Dict[str, str]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    elapsed_ms: int = 0
    verdict: str = SKIPPED
    suites: List["VerificationReport"] = field(default_factory=list)


@dataclass
class VerifierOptions:
    max_order: Optional[int] = None
    opt_in_large: bool = False
    timing: bool = False
    workers: Optional[int] = None


def _verdict(report: VerificationReport) -> str:
    if report.counterexamples:
        return REFUTED
    if report.groups_checked == 0:
        return SKIPPED
    return VERIFIED


class Verifier:
    """Runs suites over a corpus with a pool of worker threads, one group at a time per worker"""

    def __init__(self, groups: List[FiniteGroup], config: VerifierConfig,
                 options: Optional[VerifierOptions] = None) -> None:
        self.logger = logging.getLogger(__name__)
        self.groups = groups
        self.config = config
        self.options = options or VerifierOptions()

        lattice_cap = config.opt_in_lattice_cap if self.options.opt_in_large else config.lattice_cap
        self.context = SuiteContext(config, lattice_cap, self.options.max_order)

        # lock protects the outcomes collected by workers
        self.lock = Lock()

    def workers(self) -> int:
        return self.options.workers or self.config.workers

    def check_group(self, s: Suite, group: FiniteGroup) -> Optional[GroupOutcome]:
        """One suite on one group; errors become a skipped outcome"""

        if s.eligible is not None and not s.eligible(group, self.context):
            return None

        try:
            reason = prepare(s, group, self.context)
            if reason is not None:
                outcome = GroupOutcome(group.name, skipped=reason)
            else:
                outcome = s.run(group, self.context)

        except GroupError as e:
            outcome = GroupOutcome(group.name, skipped=f"{e.__class__.__name__}: {e}")

        except Exception as e:
            self.logger.error(f"{s.suite_id} {group.name} STATUS=error {e.__class__.__name__}: {e}")
            outcome = GroupOutcome(group.name, skipped=f"{e.__class__.__name__}: {e}")

        self.log_outcome(s.suite_id, outcome)
        return outcome

    def log_outcome(self, suite_id: str, outcome: GroupOutcome) -> None:
        if outcome.skipped is not None:
            self.logger.info(f"{suite_id} {outcome.group} STATUS=skipped: {outcome.skipped}")
        elif outcome.counterexamples:
            for c in outcome.counterexamples:
                self.logger.error(
                    f"{suite_id} {outcome.group} STATUS=counterexample expected {c.expected}, got {c.actual}")
                self.logger.debug(f"{suite_id} {outcome.group} witness: {c.witness}")
        elif outcome.hypothesis_held is False:
            self.logger.info(f"{suite_id} {outcome.group} STATUS=vacuous ({outcome.checked} checks)")
        else:
            self.logger.info(f"{suite_id} {outcome.group} STATUS=verified ({outcome.checked} checks)")

    def worker(self, s: Suite, queue: Queue, outcomes: List[GroupOutcome]) -> None:
        while True:
            try:
                group = queue.get_nowait()
            except Empty:
                return

            outcome = self.check_group(s, group)
            if outcome is not None:
                with self.lock:
                    outcomes.append(outcome)

    def collect(self, s: Suite) -> List[GroupOutcome]:
        if not s.per_group:
            try:
                outcomes = s.run(self.context)
            except GroupError as e:
                outcomes = [GroupOutcome(s.suite_id, skipped=f"{e.__class__.__name__}: {e}")]
            except Exception as e:
                self.logger.error(f"{s.suite_id} STATUS=error {e.__class__.__name__}: {e}")
                outcomes = [GroupOutcome(s.suite_id, skipped=f"{e.__class__.__name__}: {e}")]
            for outcome in outcomes:
                self.log_outcome(s.suite_id, outcome)
            return outcomes

        queue = Queue()
        for group in self.groups:
            queue.put(group)

        outcomes: List[GroupOutcome] = []
        threads = [
            Thread(target=self.worker, args=(s, queue, outcomes,),
                   name=f"verify_worker_{i}", daemon=True)
            for i in range(min(self.workers(), max(len(self.groups), 1)))
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        return outcomes

    def run_one(self, suite_id: str) -> VerificationReport:
        s = SUITES[suite_id]
        self.logger.warning(f"Start suite {suite_id}: corpus size={len(self.groups)}")
        started = time.monotonic()

        report = VerificationReport(suite_id)
        # order-stable: by group name, not by completion time
        for outcome in sorted(self.collect(s), key=lambda o: o.group):
            if outcome.skipped is not None:
                report.skipped.append({"group": outcome.group, "reason": outcome.skipped})
                continue

            report.groups_checked += 1
            if outcome.hypothesis_held is True:
                report.hypothesis_holders.append(outcome.group)
            elif outcome.hypothesis_held is False:
                report.hypothesis_non_holders.append(outcome.group)
            report.counterexamples.extend(asdict(c) for c in outcome.counterexamples)
            report.notes.extend(f"{outcome.group}: {note}" for note in outcome.notes)

        if self.options.timing:
            report.elapsed_ms = int((time.monotonic() - started) * 1000)
        report.verdict = _verdict(report)

        self.logger.warning(
            f"Stop suite {suite_id}: verdict={report.verdict}, checked={report.groups_checked}, "
            f"counterexamples={len(report.counterexamples)}, skipped={len(report.skipped)}")
        return report

    def run_suite(self, suite_id: str) -> VerificationReport:
        if suite_id not in SUITE_IDS:
            raise UnknownSuite(f"unknown suite {suite_id!r}; expected one of {SUITE_IDS}")
        if suite_id != "all":
            return self.run_one(suite_id)

        started = time.monotonic()
        report = VerificationReport("all", suites=[self.run_one(i) for i in sorted(SUITES)])
        for child in report.suites:
            report.groups_checked += child.groups_checked
            report.counterexamples.extend(child.counterexamples)
            report.skipped.extend({"group": f"{child.suite_id}: {s['group']}", "reason": s["reason"]}
                                  for s in child.skipped)
            report.notes.extend(f"{child.suite_id}: {note}" for note in child.notes)

        if self.options.timing:
            report.elapsed_ms = int((time.monotonic() - started) * 1000)
        report.verdict = _verdict(report)
        return report


def format_report(report: VerificationReport, fmt: str = TEXT) -> str:
    if fmt == MACHINE:
        return json.dumps(asdict(report), indent=2) + "\n"

    lines = []
    _format_text(report, lines, "")
    return "\n".join(lines) + "\n"


def _format_text(report: VerificationReport, lines: List[str], indent: str) -> None:
    lines.append(f"{indent}suite {report.suite_id}: {report.verdict} "
                 f"(checked {report.groups_checked}, skipped {len(report.skipped)})")
    if report.hypothesis_holders:
        lines.append(f"{indent}  hypothesis holds: {', '.join(report.hypothesis_holders)}")
    if report.hypothesis_non_holders:
        lines.append(f"{indent}  hypothesis fails: {', '.join(report.hypothesis_non_holders)}")
    for c in report.counterexamples:
        lines.append(f"{indent}  COUNTEREXAMPLE {c['group']}: expected {c['expected']}, "
                     f"got {c['actual']}; witness {json.dumps(c['witness'])}")
    # children list their own skips
    for s in ([] if report.suites else report.skipped):
        lines.append(f"{indent}  skipped {s['group']}: {s['reason']}")
    for note in report.notes:
        lines.append(f"{indent}  note: {note}")
    if report.elapsed_ms:
        lines.append(f"{indent}  elapsed {report.elapsed_ms} ms")
    for child in report.suites:
        _format_text(child, lines, indent + "  ")


def write_report(report: VerificationReport, filename: str, fmt: str = TEXT) -> None:
    with open(filename, "w", encoding="utf-8") as f:
        f.write(format_report(report, fmt))
