"""Collects one status line per acceptance criterion for the terminal summary."""
import time
from contextlib import contextmanager

LINES = {}


class Timer:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def seconds(self) -> float:
        return time.perf_counter() - self.start


@contextmanager
def timed():
    yield Timer()


def record(n: int, ok: bool, detail: str, seconds: float, budget: float) -> str:
    in_time = seconds < budget
    status = "PASS" if ok and in_time else "FAIL"
    note = "" if in_time else ", over the %gs budget" % budget
    line = "criterion %d: %s %s (%.2fs%s)" % (n, status, detail, seconds, note)
    LINES[n] = line
    print(line)
    return line
