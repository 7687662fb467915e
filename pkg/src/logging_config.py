"""Logging configuration for multiset-codes.

Logs always go to stderr; stdout is reserved for JSON or CSV results.
"""

import logging
import sys


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure Python logging for multiset-codes.

    Args:
        verbose: Enable DEBUG level logging, tagged with the logger name.
        quiet: Only show warnings and errors. Ignored when verbose is set.
    """
    if verbose:
        log_level = logging.DEBUG
    elif quiet:
        log_level = logging.WARNING
    else:
        log_level = logging.INFO
    log_format = (
        "[%(levelname)s] %(name)s: %(message)s"
        if verbose
        else "[%(levelname)s] %(message)s"
    )

    logging.basicConfig(
        level=log_level,
        format=log_format,
        stream=sys.stderr,
        force=True,
    )

    # Suppress third-party loggers unless in verbose mode
    if not verbose:
        logging.getLogger("networkx").setLevel(logging.WARNING)
