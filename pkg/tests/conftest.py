"""Shared test plumbing: the acceptance-criterion recorder.

Each acceptance test registers one line through the `criteria` fixture; the
lines are replayed in the terminal summary so the per-criterion verdicts are
visible even under output capture.
"""

import time

import pytest


class CriterionRecorder:
    def __init__(self):
        self.lines = []

    def check(self, number: int, description: str, fn, budget: float | None = None):
        """Run fn, record one PASS/FAIL line, enforce the runtime budget."""
        t0 = time.perf_counter()
        try:
            fn()
            elapsed = time.perf_counter() - t0
            if budget is not None and elapsed > budget:
                raise AssertionError(
                    f"criterion {number} exceeded its {budget:.0f}s budget: {elapsed:.1f}s"
                )
        except BaseException:
            elapsed = time.perf_counter() - t0
            self.lines.append(
                f"FAIL  criterion {number:2d}: {description} ({elapsed:.2f}s)"
            )
            raise
        self.lines.append(
            f"PASS  criterion {number:2d}: {description} ({elapsed:.2f}s)"
        )


_recorder = CriterionRecorder()


@pytest.fixture(scope="session")
def criteria():
    return _recorder


def pytest_terminal_summary(terminalreporter):
    if _recorder.lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(_recorder.lines, key=lambda s: s.split(":")[0]):
            terminalreporter.write_line(line)
