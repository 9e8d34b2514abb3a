"""Seven chaotic maps on the open unit interval.

Each map is a deterministic iteration ``x -> step(x)``; outputs are guarded
into ``[EPS, 1 - EPS]`` so a boundary hit can never freeze the sequence at a
fixed point of 0 or 1.
"""

from __future__ import annotations

import math

EPS = 1e-10


def _circle(x: float) -> float:
    # a = 0.5, b = 0.2
    return (x + 0.2 - (0.5 / (2 * math.pi)) * math.sin(2 * math.pi * x)) % 1.0


def _gauss(x: float) -> float:
    # Gauss/mouse map: fractional part of 1/x keeps the orbit inside (0, 1).
    # A zero state is excluded by the open-interval invariant, so the map's
    # own 0 -> 1 rule is composed into the step whenever 1/x lands on an
    # integer; otherwise clipping that 0 to the guard value would freeze the
    # orbit (1/eps is float-integral).
    inv = 1.0 / x
    out = inv - math.floor(inv)
    return 1.0 if out == 0.0 else out


def _logistic(x: float) -> float:
    return 4.0 * x * (1.0 - x)


def _sine(x: float) -> float:
    return math.sin(math.pi * x)


def _singer(x: float) -> float:
    return 1.07 * (7.86 * x - 23.31 * x**2 + 28.75 * x**3 - 13.302875 * x**4)


def _tent(x: float) -> float:
    # x = 0.7 belongs to neither printed branch; take the left one and let
    # the epsilon guard absorb the resulting 1.0.
    if x < 0.7:
        return x / 0.7
    return (10.0 / 3.0) * (1.0 - x)


def _piecewise(x: float) -> float:
    p = 0.4
    if x < p:
        return x / p
    if x < 0.5:
        return (x - p) / (0.5 - p)
    if x < 1.0 - p:
        return (1.0 - p - x) / (0.5 - p)
    return (1.0 - x) / p


CHAOTIC_MAPS = {
    "circle": _circle,
    "gauss": _gauss,
    "logistic": _logistic,
    "sine": _sine,
    "singer": _singer,
    "tent": _tent,
    "piecewise": _piecewise,
}

DEFAULT_X0 = 0.7


def chaotic_next(kind: str, x: float) -> float:
    """One guarded step of the named map."""
    try:
        step = CHAOTIC_MAPS[kind]
    except KeyError:
        raise ValueError(
            f"unknown chaotic map {kind!r}; choose from {sorted(CHAOTIC_MAPS)}"
        ) from None
    return min(max(step(x), EPS), 1.0 - EPS)


def chaotic_sequence(kind: str, x0: float, n: int):
    """First ``n`` iterates of the named map, starting after ``x0``."""
    if not 0.0 < x0 < 1.0:
        raise ValueError(f"x0 must lie in (0, 1), got {x0}")
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    x = x0
    for _ in range(n):
        x = chaotic_next(kind, x)
        out.append(x)
    return out


class ChaoticMap:
    """Stateful chaotic stream: one instance per optimizer run."""

    def __init__(self, kind: str, x0: float = DEFAULT_X0):
        if kind not in CHAOTIC_MAPS:
            raise ValueError(
                f"unknown chaotic map {kind!r}; choose from {sorted(CHAOTIC_MAPS)}"
            )
        if not 0.0 < x0 < 1.0:
            raise ValueError(f"x0 must lie in (0, 1), got {x0}")
        self.kind = kind
        self.x = x0

    def next(self) -> float:
        self.x = chaotic_next(self.kind, self.x)
        return self.x
