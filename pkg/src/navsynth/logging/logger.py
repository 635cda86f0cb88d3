"""
Structured logging for dataset runs.

Every line emitted inside a generation run carries the run id, the generation
mode and the record index through context variables.
"""

import json
import logging
import sys
import threading
import uuid
from contextvars import ContextVar
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import structlog
from structlog.typing import EventDict, WrappedLogger

from navsynth import __version__

run_id_var: ContextVar[str] = ContextVar("run_id", default="")
mode_var: ContextVar[str] = ContextVar("mode", default="")
record_index_var: ContextVar[int | None] = ContextVar("record_index", default=None)


class LogContext:
    """
    Context manager for adding run context to logs.

    Usage:
        with LogContext(mode="cfg"):
            logger.info("Generating")
            with LogContext(record_index=7, run_id=ctx.run_id):
                logger.debug("Sample drawn")
    """

    def __init__(
        self,
        run_id: str | None = None,
        mode: str | None = None,
        record_index: int | None = None,
    ):
        self._tokens: list[Any] = []
        self._run_id = run_id or str(uuid.uuid4())[:8]
        self._mode = mode
        self._record_index = record_index

    def __enter__(self) -> "LogContext":
        self._tokens.append(run_id_var.set(self._run_id))
        if self._mode:
            self._tokens.append(mode_var.set(self._mode))
        if self._record_index is not None:
            self._tokens.append(record_index_var.set(self._record_index))
        return self

    def __exit__(self, *args: Any) -> None:
        for token in reversed(self._tokens):
            try:
                token.var.reset(token)
            except ValueError:
                # token created in another context (worker thread)
                pass
        self._tokens.clear()

    @property
    def run_id(self) -> str:
        return self._run_id


def add_context_processor(
    logger: WrappedLogger, method_name: str, event_dict: EventDict
) -> EventDict:
    """Add run context variables to log events."""
    run_id = run_id_var.get()
    if run_id:
        event_dict["run_id"] = run_id

    mode = mode_var.get()
    if mode:
        event_dict["mode"] = mode

    record_index = record_index_var.get()
    if record_index is not None:
        event_dict["record_index"] = record_index

    return event_dict


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")


def add_timestamp_processor(
    logger: WrappedLogger, method_name: str, event_dict: EventDict
) -> EventDict:
    """Stamp events with UTC time in ISO-8601 with a `Z` suffix."""
    event_dict["timestamp"] = _utc_now()
    return event_dict


def add_service_info(
    logger: WrappedLogger, method_name: str, event_dict: EventDict
) -> EventDict:
    event_dict["service"] = "navsynth"
    event_dict["version"] = __version__
    return event_dict


def setup_logging(
    level: str = "INFO",
    format: str = "text",
    log_file: str | None = None,
    include_caller: bool = False,
) -> None:
    """
    Configure structlog and the stdlib root logger.

    Logs go to stderr so that commands printing data to stdout stay pipeable.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        format: Output format ('json' or 'text')
        log_file: Optional file path for log output
        include_caller: Include caller file/line info
    """
    shared_processors: list[Any] = [
        structlog.stdlib.add_log_level,
        add_timestamp_processor,
        add_context_processor,
        add_service_info,
    ]

    if include_caller:
        shared_processors.append(
            structlog.processors.CallsiteParameterAdder(
                [
                    structlog.processors.CallsiteParameter.FILENAME,
                    structlog.processors.CallsiteParameter.LINENO,
                ]
            )
        )

    if format == "json":
        renderer: Any = structlog.processors.JSONRenderer()
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            *shared_processors,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )

    numeric_level = getattr(logging, level.upper())
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=numeric_level,
        force=True,
    )

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(numeric_level)
        logging.getLogger().addHandler(file_handler)


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    """
    Structured logger for a module.

    Args:
        name: Logger name, usually the module's __name__
    """
    return structlog.get_logger(name)


class RunLedger:
    """
    Append-only JSONL record of run events.

    Each event is logged and, when a ledger file is configured, appended to it
    as one JSON object per line.
    """

    def __init__(self, ledger_file: str | Path | None = None):
        self.logger = get_logger("ledger")
        self.ledger_file = Path(ledger_file) if ledger_file else None
        self._lock = threading.Lock()

        if self.ledger_file:
            self.ledger_file.parent.mkdir(parents=True, exist_ok=True)

    def _write_entry(self, entry: dict[str, Any]) -> None:
        if self.ledger_file:
            with self._lock, open(self.ledger_file, "a", encoding="utf-8") as f:
                f.write(json.dumps(entry, default=str) + "\n")

    def _emit(self, event_type: str, message: str, level: str = "info", **fields: Any) -> None:
        entry = {"event_type": event_type, "timestamp": _utc_now(), **fields}
        getattr(self.logger, level)(message, **entry)
        self._write_entry(entry)

    def log_run_started(self, run_id: str, mode: str, n: int, seed: int, jobs: int) -> None:
        self._emit(
            "run_started", "Run started", run_id=run_id, mode=mode, n=n, seed=seed, jobs=jobs
        )

    def log_sample_missed(self, run_id: str, index: int, attempts: int, reason: str) -> None:
        self._emit(
            "sample_missed",
            "Sample missed",
            level="warning",
            run_id=run_id,
            index=index,
            attempts=attempts,
            reason=reason,
        )

    def log_rewrite_call(
        self,
        rewriter: str,
        batch_size: int,
        latency_ms: int,
        success: bool = True,
        error: str | None = None,
    ) -> None:
        self._emit(
            "rewrite_call",
            "Rewrite batch completed",
            level="info" if success else "error",
            rewriter=rewriter,
            batch_size=batch_size,
            latency_ms=latency_ms,
            success=success,
            error=error,
        )

    def log_grounding_checked(self, checked: int, failed: int) -> None:
        self._emit(
            "grounding_checked",
            "Grounding verified",
            level="info" if failed == 0 else "warning",
            checked=checked,
            failed=failed,
        )

    def log_run_completed(
        self, run_id: str, written: int, misses: int, duration_seconds: float
    ) -> None:
        self._emit(
            "run_completed",
            "Run completed",
            run_id=run_id,
            written=written,
            misses=misses,
            duration_seconds=round(duration_seconds, 3),
        )
