"""Series bookkeeping: truncation results and compensated accumulation."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SeriesResult:
    """Outcome of a truncated series evaluation.

    tail_estimate is an upper bound on the magnitude of the first omitted
    term, not of the whole tail.
    """

    value: float
    terms_used: int
    tail_estimate: float


class NeumaierSum:
    """Kahan-Babuska (Neumaier) compensated accumulator.

    Keeps the running error of the float sum in a carry word, so the total
    is accurate to ~eps * max partial sum instead of eps * n * sum|x|.
    """

    __slots__ = ("_s", "_c")

    def __init__(self) -> None:
        self._s = 0.0
        self._c = 0.0

    def add(self, x: float) -> None:
        s = self._s
        t = s + x
        if abs(s) >= abs(x):
            self._c += (s - t) + x
        else:
            self._c += (x - t) + s
        self._s = t

    @property
    def total(self) -> float:
        return self._s + self._c
