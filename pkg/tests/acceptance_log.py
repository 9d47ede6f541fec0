"""Shared PASS/FAIL lines from the acceptance suite."""

LINES: list[str] = []
