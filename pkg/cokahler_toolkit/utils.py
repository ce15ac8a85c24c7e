"""Utility functions for cokahler"""

import logging
import sys

_ROOT = "cokahler_toolkit"


def get_logger(name):
    """Get a logger below the package's root logger"""
    if not name.startswith(_ROOT):
        name = f"{_ROOT}.{name}"
    return logging.getLogger(name)


def configure_logging(verbose=False):
    """Send package diagnostics to stderr, at DEBUG when verbose and WARNING otherwise"""
    root = logging.getLogger(_ROOT)
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
