import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_LINES = pytest.StashKey[list]()


class Criterion:
    """Times one acceptance criterion and collects its failed conditions."""

    def __init__(self, number, title, limit, lines):
        self.number, self.title, self.limit = number, title, limit
        self.problems = []
        self.notes = []
        self._lines = lines

    def check(self, cond, message):
        if not cond:
            self.problems.append(message)
        return cond

    def note(self, text):
        self.notes.append(text)

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self._start
        if exc is not None:
            self.problems.append(f"{exc_type.__name__}: {exc}")
        if elapsed > self.limit:
            self.problems.append(f"took {elapsed:.1f}s, limit {self.limit}s")
        verdict = "FAIL" if self.problems else "PASS"
        line = f"criterion {self.number:>2} {verdict}  {self.title}  [{elapsed:.1f}s / {self.limit}s]"
        if self.notes:
            line += "  " + "; ".join(self.notes)
        if self.problems:
            line += "  problems: " + "; ".join(self.problems[:3])
        self._lines.append(line)
        print(line)
        return False


@pytest.fixture
def criterion(request):
    lines = request.config.stash.setdefault(_LINES, [])

    def make(number, title, limit):
        return Criterion(number, title, limit, lines)

    return make


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
