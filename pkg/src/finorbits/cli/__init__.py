"""Command-line interface and exact data formats."""

from .app import EXIT_INPUT, EXIT_INTERNAL, EXIT_MISMATCH, EXIT_OK, main

__all__ = ["EXIT_INPUT", "EXIT_INTERNAL", "EXIT_MISMATCH", "EXIT_OK", "main"]
