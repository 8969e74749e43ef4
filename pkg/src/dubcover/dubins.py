"""Shortest forward-only paths with bounded curvature (Dubins paths).

The six candidate words are evaluated in closed form in the frame where the
start lies at the origin and the goal on the +x axis, with distances
normalised by the turning radius.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-9

WORDS = ("LSL", "RSR", "LSR", "RSL", "RLR", "LRL")
# +1 turns left (counter-clockwise), -1 right, 0 straight
_TURN = {"L": 1, "R": -1, "S": 0}


def mod2pi(theta: float) -> float:
    v = math.fmod(theta, TWO_PI)
    if v < 0.0:
        v += TWO_PI
    # snap values that are 2*pi up to rounding back to zero
    if TWO_PI - v < 1e-12:
        v = 0.0
    return v


class Configuration(NamedTuple):
    x: float
    y: float
    theta: float

    @classmethod
    def make(cls, x: float, y: float, theta: float) -> "Configuration":
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(theta)):
            raise ValueError(f"non-finite configuration ({x}, {y}, {theta})")
        return cls(float(x), float(y), mod2pi(theta))


class Segment(NamedTuple):
    kind: str  # "L", "S" or "R"
    start: Configuration
    end: Configuration
    length: float
    center: tuple[float, float] | None  # arc center for turns


def _lsl(a, b, d, sa, sb, ca, cb, cab):
    tmp0 = d + sa - sb
    p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sa - sb)
    if p2 < 0.0:
        return None
    tmp1 = math.atan2(cb - ca, tmp0)
    return mod2pi(tmp1 - a), math.sqrt(p2), mod2pi(b - tmp1)


def _rsr(a, b, d, sa, sb, ca, cb, cab):
    tmp0 = d - sa + sb
    p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sb - sa)
    if p2 < 0.0:
        return None
    tmp1 = math.atan2(ca - cb, tmp0)
    return mod2pi(a - tmp1), math.sqrt(p2), mod2pi(tmp1 - b)


def _lsr(a, b, d, sa, sb, ca, cb, cab):
    p2 = -2.0 + d * d + 2.0 * cab + 2.0 * d * (sa + sb)
    if p2 < 0.0:
        return None
    p = math.sqrt(p2)
    tmp2 = math.atan2(-ca - cb, d + sa + sb) - math.atan2(-2.0, p)
    return mod2pi(tmp2 - a), p, mod2pi(tmp2 - b)


def _rsl(a, b, d, sa, sb, ca, cb, cab):
    p2 = -2.0 + d * d + 2.0 * cab - 2.0 * d * (sa + sb)
    if p2 < 0.0:
        return None
    p = math.sqrt(p2)
    tmp2 = math.atan2(ca + cb, d - sa - sb) - math.atan2(2.0, p)
    return mod2pi(a - tmp2), p, mod2pi(b - tmp2)


def _rlr(a, b, d, sa, sb, ca, cb, cab):
    tmp = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sa - sb)) / 8.0
    if abs(tmp) > 1.0:
        return None
    p = mod2pi(TWO_PI - math.acos(tmp))
    t = mod2pi(a - math.atan2(ca - cb, d - sa + sb) + p / 2.0)
    return t, p, mod2pi(a - b - t + p)


def _lrl(a, b, d, sa, sb, ca, cb, cab):
    tmp = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sb - sa)) / 8.0
    if abs(tmp) > 1.0:
        return None
    p = mod2pi(TWO_PI - math.acos(tmp))
    t = mod2pi(-a - math.atan2(ca - cb, d + sa - sb) + p / 2.0)
    return t, p, mod2pi(b - a - t + p)


_SOLVERS = (_lsl, _rsr, _lsr, _rsl, _rlr, _lrl)


def candidate_words(q0, q1, r: float) -> list[tuple[str, tuple[float, float, float]] | None]:
    """Normalised ``(t, p, q)`` for every word in :data:`WORDS` (``None`` if infeasible)."""
    dx, dy = q1[0] - q0[0], q1[1] - q0[1]
    d = math.hypot(dx, dy) / r
    phi = math.atan2(dy, dx) if d > 0 else 0.0
    a = mod2pi(q0[2] - phi)
    b = mod2pi(q1[2] - phi)
    sa, sb, ca, cb = math.sin(a), math.sin(b), math.cos(a), math.cos(b)
    cab = math.cos(a - b)
    out = []
    for word, fn in zip(WORDS, _SOLVERS):
        res = fn(a, b, d, sa, sb, ca, cb, cab)
        out.append(None if res is None else (word, res))
    return out


def _best(q0, q1, r: float) -> tuple[str, tuple[float, float, float]]:
    cands = [c for c in candidate_words(q0, q1, r) if c is not None]
    best_len = min(sum(p) for _, p in cands)
    # first word in WORDS order within tolerance of the minimum
    for word, params in cands:
        if sum(params) <= best_len + ANGLE_TOL:
            return word, params
    raise AssertionError("unreachable")


def dubins_length(q0, q1, r: float) -> float:
    """Length of the shortest path; accepts plain ``(x, y, theta)`` tuples."""
    _, params = _best(q0, q1, r)
    return sum(params) * r


def step_segment(q: tuple[float, float, float], kind: str, length: float, r: float) -> Configuration:
    """Exact end configuration after driving ``length`` meters of a segment."""
    x, y, th = q
    turn = _TURN[kind]
    if turn == 0:
        return Configuration(x + length * math.cos(th), y + length * math.sin(th), mod2pi(th))
    dth = turn * length / r
    return Configuration(
        x + turn * r * (math.sin(th + dth) - math.sin(th)),
        y - turn * r * (math.cos(th + dth) - math.cos(th)),
        mod2pi(th + dth),
    )


@dataclass(frozen=True)
class DubinsPath:
    start: Configuration
    end: Configuration
    radius: float
    word: str
    params: tuple[float, float, float]  # segment lengths in meters

    @property
    def total_length(self) -> float:
        return sum(self.params)

    def segments(self) -> Iterator[Segment]:
        q = self.start
        for kind, length in zip(self.word, self.params):
            nxt = step_segment(q, kind, length, self.radius)
            center = None
            if kind != "S":
                turn = _TURN[kind]
                center = (q.x - turn * self.radius * math.sin(q.theta),
                          q.y + turn * self.radius * math.cos(q.theta))
            yield Segment(kind, q, nxt, length, center)
            q = nxt

    def integrated_end(self) -> Configuration:
        q = self.start
        for kind, length in zip(self.word, self.params):
            q = step_segment(q, kind, length, self.radius)
        return q

    def point_at(self, s: float) -> Configuration:
        """Configuration after ``s`` meters of travel (clamped to the path)."""
        s = min(max(s, 0.0), self.total_length)
        q = self.start
        for kind, length in zip(self.word, self.params):
            if s <= length:
                return step_segment(q, kind, s, self.radius)
            q = step_segment(q, kind, length, self.radius)
            s -= length
        return q


def dubins_shortest(q0, q1, r: float) -> DubinsPath:
    """Shortest Dubins path from ``q0`` to ``q1`` with turning radius ``r``.

    Ties between words are broken in the order LSL, RSR, LSR, RSL, RLR, LRL.
    """
    if not r > 0:
        raise ValueError(f"turning radius must be positive, got {r!r}")
    q0 = Configuration.make(*q0)
    q1 = Configuration.make(*q1)
    word, (t, p, q) = _best(q0, q1, r)
    return DubinsPath(q0, q1, float(r), word, (t * r, p * r, q * r))


def sample_path(path: DubinsPath, step: float) -> list[Configuration]:
    """Evenly spaced configurations along the path, no more than ``step`` apart."""
    if not step > 0:
        raise ValueError(f"step must be positive, got {step!r}")
    total = path.total_length
    if total == 0.0:
        return [path.start]
    n = max(1, math.ceil(total / step - 1e-9))
    inner = [path.point_at(total * i / n) for i in range(1, n)]
    return [path.start, *inner, path.end]
