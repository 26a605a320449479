import logging
import os
import sys

import structlog
from structlog.dev import plain_traceback
from structlog.processors import dict_tracebacks


_configured = False


_default_log_level = logging.INFO

_LEVEL_NAMES = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def _find_log_level_env_var():
    if "LOG_LEVEL" not in os.environ:
        return None

    level_str = os.environ["LOG_LEVEL"].strip().upper()

    if level_str in _LEVEL_NAMES:
        return getattr(logging, level_str)

    try:
        level_int = int(level_str)
    except ValueError:
        return None

    if level_int in [getattr(logging, name) for name in _LEVEL_NAMES]:
        return level_int

    return None


class _StderrLoggerFactory:
    """PrintLogger on whatever ``sys.stderr`` is when the logger is made."""

    def __call__(self, *args) -> structlog.PrintLogger:
        return structlog.PrintLogger(file=sys.stderr)


def configure_logging(pretty=True, additional_processors=None, level=None):
    """Set up structlog. Logs always go to stderr; stdout is reserved for results."""
    if additional_processors is None:
        additional_processors = []

    if level is None:
        level = _find_log_level_env_var()
    if level is None:
        level = _default_log_level

    logging.basicConfig(
        level=level,
        stream=sys.stderr,
    )

    # hypothesis logs every example at DEBUG
    logging.getLogger("hypothesis").setLevel(max(level, logging.INFO))

    processors = additional_processors + [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
    ]

    if pretty:
        processors += [
            structlog.dev.set_exc_info,
            structlog.processors.TimeStamper(fmt="%Y-%m-%d %H:%M:%S"),
            structlog.dev.ConsoleRenderer(
                exception_formatter=plain_traceback,
                colors=not bool(os.environ.get("SUPPRESS_LOG_COLORS")) and sys.stderr.isatty(),
            ),
        ]
    else:
        processors += [
            dict_tracebacks,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.JSONRenderer(sort_keys=True),
        ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=_StderrLoggerFactory(),
        cache_logger_on_first_use=False,
    )

    global _configured
    _configured = True


def get_logger(*args, **kwargs) -> structlog.stdlib.BoundLogger:
    # Configure logging on first logger use, if not configured yet
    if not _configured:
        configure_logging()

    log = structlog.get_logger(*args, **kwargs)
    return log
