"""Experiment runner for multiset deletion codes.

Runs single experiments (bounds, construct, search, simulate, verify) and
batches of them read from a configuration file.
"""

import logging
from typing import Any, Callable, Optional

from src.bounds import best_upper_bound, evaluate_bounds
from src.channel import ChannelConfig, ChannelMode, run_channel
from src.codes import DeletionCode, ExplicitCode, build_code
from src.config_parser import Settings
from src.errors import MultisetCodeError, ParameterError
from src.multiset_core import MultisetWord
from src.search import max_code_exact, verify_code

logger = logging.getLogger(__name__)


class PipelineError(Exception):
    """Raised when a batch job fails."""

    pass


def _require(job: dict[str, Any], key: str) -> Any:
    value = job.get(key)
    if value is None:
        raise ParameterError(f"{job.get('task')} needs '{key}'")
    return value


class ExperimentPipeline:
    """Run experiment jobs with shared limits."""

    def __init__(
        self,
        settings: Optional[Settings] = None,
        progress_callback: Optional[Callable[[str], None]] = None,
    ):
        """Initialize pipeline.

        Args:
            settings: Resolved limits (default: built-ins plus environment)
            progress_callback: Optional callback for progress updates
        """
        self.settings = settings or Settings.from_environment()
        self.progress_callback = progress_callback
        logger.debug(f"Pipeline initialized: settings={self.settings}")
        self._tasks: dict[str, Callable[[dict[str, Any]], dict[str, Any]]] = {
            "bounds": self._bounds,
            "construct": self._construct,
            "search": self._search,
            "simulate": self._simulate,
            "verify": self._verify,
        }

    def run_job(self, job: dict[str, Any]) -> dict[str, Any]:
        """Run one job and return its report.

        Args:
            job: Dict with 'task' and the task's parameters

        Returns:
            Report dict for the task

        Raises:
            ParameterError: If the task is unknown or its parameters are invalid
            ResourceLimitError: If an enumeration exceeds its cap
        """
        task = job.get("task")
        if task not in self._tasks:
            raise ParameterError(f"unknown task '{task}'")
        logger.debug(f"run_job: {job}")
        return self._tasks[task](job)

    def process_batch(self, jobs: list[dict[str, Any]]) -> list[dict[str, Any]]:
        """Run several jobs in order.

        Args:
            jobs: Validated job dicts, as returned by ConfigParser.get_jobs()

        Returns:
            One {'job', 'task', 'report'} entry per job

        Raises:
            PipelineError: If any job fails
        """
        results = []
        total = len(jobs)

        for idx, job in enumerate(jobs, 1):
            task = job.get("task")
            self._progress(f"[{idx}/{total}] Running: {task}")

            try:
                report = self.run_job(job)
            except MultisetCodeError as e:
                self._progress(f"Failed: job {idx} ({task}) - {str(e)}")
                raise PipelineError(f"Job {idx} ({task}) failed: {str(e)}") from e
            results.append({"job": idx, "task": task, "report": report})

        return results

    def _bounds(self, job: dict[str, Any]) -> dict[str, Any]:
        n, q, t = _require(job, "n"), _require(job, "q"), _require(job, "t")
        best = best_upper_bound(n, q, t)
        reports = [r.to_dict() for r in evaluate_bounds(n, q, t)]
        result: dict[str, Any] = {
            "n": n,
            "q": q,
            "t": t,
            "bounds": {r["name"]: r["value"] for r in reports},
            "best": {"name": best.name, "value": best.value},
        }
        if job.get("all"):
            result["reports"] = reports
        return result

    def _construct(self, job: dict[str, Any]) -> dict[str, Any]:
        return self._build(job).describe()

    def _search(self, job: dict[str, Any]) -> dict[str, Any]:
        result = max_code_exact(
            _require(job, "n"),
            _require(job, "q"),
            _require(job, "t"),
            cap=self.settings.search_cap if job.get("cap") is None else job["cap"],
            node_limit=job.get("node_limit"),
        )
        return result.to_dict(emit_witness=job.get("emit_witness", True))

    def _simulate(self, job: dict[str, Any]) -> dict[str, Any]:
        code = self._build(job)
        cfg = ChannelConfig(
            t_max=job.get("t_max", code.t),
            mode=ChannelMode(job.get("mode", "exhaustive")),
            seed=job.get("seed", 0),
            trials=job.get("trials", 1000),
            workers=job.get("workers") or self.settings.workers,
        )
        report = run_channel(
            code, cfg, cap=self.settings.enumeration_cap, pattern_cap=self.settings.pattern_cap
        )
        return report.to_dict()

    def _verify(self, job: dict[str, Any]) -> dict[str, Any]:
        words = [MultisetWord(tuple(w)) for w in _require(job, "words")]
        t = _require(job, "t")
        if len(set(words)) == len(words):
            report = verify_code(ExplicitCode(tuple(words), t), cap=self.settings.pattern_cap)
        else:
            report = verify_code(words, t, cap=self.settings.pattern_cap)
        return report.to_dict()

    def _build(self, job: dict[str, Any]) -> DeletionCode:
        return build_code(
            _require(job, "kind"),
            _require(job, "n"),
            job.get("q"),
            job.get("t"),
            job.get("a"),
            cap=self.settings.enumeration_cap,
        )

    def _progress(self, message: str) -> None:
        """Call progress callback if provided.

        Args:
            message: Progress message
        """
        if self.progress_callback:
            self.progress_callback(message)
