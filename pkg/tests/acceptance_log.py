"""Collects one PASS/FAIL line per acceptance criterion."""
from contextlib import contextmanager

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(n: int, title: str):
    try:
        yield
    except AssertionError as exc:
        first = str(exc).strip().splitlines()[0] if str(exc).strip() else "assertion failed"
        RESULTS[n] = f"FAIL criterion {n}: {title} -- {first}"
        print(RESULTS[n])
        raise
    RESULTS[n] = f"PASS criterion {n}: {title}"
    print(RESULTS[n])
