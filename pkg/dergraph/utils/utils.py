#! /usr/bin/env python3

import sys
import time

from contextlib import contextmanager
from dataclasses import dataclass

from typing import Generator, Sequence, TypeVar


T = TypeVar("T")


@dataclass
class Timing:
    description: str
    seconds: float = 0.0

    def format(self, precision: int = 2) -> str:
        return f"{self.seconds:.{precision}f}"


@contextmanager
def Timer(
    description: str, precision: int = 5, post_print: bool = False, report: bool = True
) -> Generator[Timing, None, None]:
    """Context manager for timing code execution. Timings go to stderr, so
    they never mix with results on stdout.

    Args:
        description (str): description of code to be timed
        precision (float): number of digits to print after decimal point
        post_print (bool): whether to print information only after leaving the context
        report (bool): whether to print at all; the yielded `Timing` holds the
            elapsed seconds once the context exits either way
    """
    timing = Timing(description)
    start_time = time.perf_counter()
    if report and not post_print:
        print(f"{description}...", end=" ", flush=True, file=sys.stderr)
    try:
        yield timing
    finally:
        timing.seconds = time.perf_counter() - start_time
        if report:
            print(
                f"{str(description) + ' ' if post_print else ''}{timing.seconds:.{precision}f} s",
                file=sys.stderr,
            )


def iter_in_chunks(s: Sequence[T], n: int = 1) -> Generator[Sequence[T], None, None]:
    for i in range(0, len(s), n):
        yield s[i : i + n]
