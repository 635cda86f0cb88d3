"""
Structured logging with run context and an optional run ledger.
"""

from navsynth.logging.logger import (
    LogContext,
    RunLedger,
    get_logger,
    setup_logging,
)

__all__ = [
    "get_logger",
    "setup_logging",
    "LogContext",
    "RunLedger",
]
