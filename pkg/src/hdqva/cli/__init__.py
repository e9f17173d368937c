"""Command-line interface (``qva``)."""
import sys

from .app import build_parser, env_defaults, run
from .grammar import StateSyntaxError, format_state, parse_state


def main(argv=None) -> int:
    return run(argv)


def entry() -> None:
    sys.exit(main())


__all__ = ["build_parser", "env_defaults", "run", "main", "entry", "StateSyntaxError", "format_state", "parse_state"]
