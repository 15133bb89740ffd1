"""Symbolic fractal subsets of [1, 2] and their exact 1-D covering machinery.

Five generators are supported: full intervals, finite point sets, Cantor-type
self-similar sets, polynomially decaying sequences {1} u {1 + n^(-a)}, and
finite unions of these.  All quantitative operations (rendering, greedy
delta-covers, maximal separated subsets) are driven by two exact primitives,
``first_point_geq`` and ``last_point_leq``, so covering counts are never
perturbed by an intermediate rasterization.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import InvalidResolutionError, InvalidSetError, OutOfRangeError

_INF = math.inf

# Descent stops once a Cantor branch is narrower than this; the residual
# ambiguity is far below any resolution the package operates at.
_CANTOR_EPS = 1e-14

# Tail points of a polynomial sequence closer to the accumulation point than
# this are treated as a continuum.
_POLY_TAIL_EPS = 1e-12


@dataclass(frozen=True)
class FullInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (1.0 <= self.lo < self.hi <= 2.0):
            raise InvalidSetError(f"interval [{self.lo}, {self.hi}] not inside [1, 2]")


@dataclass(frozen=True)
class FinitePoints:
    points: tuple

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        if not pts:
            raise InvalidSetError("FinitePoints needs at least one point")
        if any(not (1.0 <= p <= 2.0) for p in pts):
            raise InvalidSetError("points must lie in [1, 2]")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise InvalidSetError("points must be sorted and distinct")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class CantorLike:
    lo: float
    hi: float
    branches: int
    contraction: float

    def __post_init__(self):
        if not (1.0 <= self.lo < self.hi <= 2.0):
            raise InvalidSetError(f"base [{self.lo}, {self.hi}] not inside [1, 2]")
        if self.branches < 2:
            raise InvalidSetError("need at least two branches")
        if not (0.0 < self.contraction and self.branches * self.contraction <= 1.0):
            raise InvalidSetError("need 0 < c and m*c <= 1 so children stay disjoint")

    @property
    def similarity_dimension(self) -> float:
        return math.log(self.branches) / math.log(1.0 / self.contraction)


@dataclass(frozen=True)
class PolySequence:
    exponent: float

    def __post_init__(self):
        if not self.exponent > 0.0:
            raise InvalidSetError("exponent must be positive")

    @property
    def minkowski_dimension(self) -> float:
        return 1.0 / (self.exponent + 1.0)


@dataclass(frozen=True)
class UnionSet:
    members: tuple

    def __post_init__(self):
        if not self.members:
            raise InvalidSetError("union of no sets")
        for m in self.members:
            if not isinstance(m, (FullInterval, FinitePoints, CantorLike, PolySequence, UnionSet)):
                raise InvalidSetError(f"not a set descriptor: {m!r}")
        object.__setattr__(self, "members", tuple(self.members))


SetDescriptor = (FullInterval, FinitePoints, CantorLike, PolySequence, UnionSet)


# ---------------------------------------------------------------------------
# JSON schema: {"type": "cantor" | "polyseq" | "interval" | "points" | "union"}
# ---------------------------------------------------------------------------

def to_json_dict(s) -> dict:
    if isinstance(s, FullInterval):
        return {"type": "interval", "interval": [s.lo, s.hi]}
    if isinstance(s, FinitePoints):
        return {"type": "points", "points": list(s.points)}
    if isinstance(s, CantorLike):
        return {
            "type": "cantor",
            "base_interval": [s.lo, s.hi],
            "branches": s.branches,
            "contraction": s.contraction,
        }
    if isinstance(s, PolySequence):
        return {"type": "polyseq", "exponent": s.exponent}
    if isinstance(s, UnionSet):
        return {"type": "union", "sets": [to_json_dict(m) for m in s.members]}
    raise InvalidSetError(f"not a set descriptor: {s!r}")


def from_json_dict(d: dict):
    try:
        kind = d["type"]
    except (TypeError, KeyError):
        raise InvalidSetError("set JSON must be an object with a 'type' field")
    if kind == "interval":
        lo, hi = d["interval"]
        return FullInterval(float(lo), float(hi))
    if kind == "points":
        return FinitePoints(tuple(float(p) for p in d["points"]))
    if kind == "cantor":
        lo, hi = d["base_interval"]
        return CantorLike(float(lo), float(hi), int(d["branches"]), float(d["contraction"]))
    if kind == "polyseq":
        return PolySequence(float(d["exponent"]))
    if kind == "union":
        return UnionSet(tuple(from_json_dict(m) for m in d["sets"]))
    raise InvalidSetError(f"unknown set type {kind!r}")


def dumps(s) -> str:
    return json.dumps(to_json_dict(s), sort_keys=True)


def loads(text: str):
    return from_json_dict(json.loads(text))


def load_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))


# ---------------------------------------------------------------------------
# Flattened primitive form shared with the compiled kernels.
#
# type codes: 0 interval (lo, hi), 1 cantor (lo, hi, m, c),
#             2 polyseq (a), 3 points (pool offset, count)
# ---------------------------------------------------------------------------

def flatten(s):
    types, params, pool = [], [], []

    def add(node):
        if isinstance(node, FullInterval):
            types.append(0)
            params.append((node.lo, node.hi, 0.0, 0.0))
        elif isinstance(node, CantorLike):
            types.append(1)
            params.append((node.lo, node.hi, float(node.branches), node.contraction))
        elif isinstance(node, PolySequence):
            types.append(2)
            params.append((node.exponent, 0.0, 0.0, 0.0))
        elif isinstance(node, FinitePoints):
            types.append(3)
            params.append((float(len(pool)), float(len(node.points)), 0.0, 0.0))
            pool.extend(node.points)
        elif isinstance(node, UnionSet):
            for m in node.members:
                add(m)
        else:
            raise InvalidSetError(f"not a set descriptor: {node!r}")

    add(s)
    return (
        np.asarray(types, dtype=np.int64),
        np.asarray(params, dtype=np.float64).reshape(len(types), 4),
        np.asarray(pool, dtype=np.float64),
    )


# ---------------------------------------------------------------------------
# Exact point queries on the flattened form.
# ---------------------------------------------------------------------------

def _cantor_first_geq(lo, hi, m, c, x):
    if x <= lo:
        return lo
    if x > hi:
        return _INF
    while True:
        width = hi - lo
        if width <= _CANTOR_EPS:
            return x if x >= lo else lo
        gap_step = width * (1.0 - c) / (m - 1)
        child_len = width * c
        descended = False
        for k in range(m):
            u = lo + k * gap_step
            v = u + child_len
            if x <= u:
                return u
            if x <= v:
                lo, hi = u, v
                descended = True
                break
        if not descended:
            return _INF


def _cantor_last_leq(lo, hi, m, c, x):
    if x >= hi:
        return hi
    if x < lo:
        return -_INF
    while True:
        width = hi - lo
        if width <= _CANTOR_EPS:
            return x if x <= hi else hi
        gap_step = width * (1.0 - c) / (m - 1)
        child_len = width * c
        descended = False
        for k in range(m - 1, -1, -1):
            u = lo + k * gap_step
            v = u + child_len
            if x >= v:
                return v
            if x >= u:
                lo, hi = u, v
                descended = True
                break
        if not descended:
            return -_INF


def _poly_first_geq(a, x):
    if x <= 1.0:
        return 1.0
    if x > 2.0:
        return _INF
    t = x - 1.0
    if t <= _POLY_TAIL_EPS:
        # tail below resolvable scale: treat as continuum
        return x
    n_est = t ** (-1.0 / a)
    if n_est > 2**40:
        return x
    n0 = int(n_est)
    best = _INF
    for n in range(max(1, n0 - 3), n0 + 4):
        p = 1.0 + float(n) ** (-a)
        if p >= x and p < best:
            best = p
    return best


def _poly_last_leq(a, x):
    if x < 1.0:
        return -_INF
    if x >= 2.0:
        return 2.0
    t = x - 1.0
    if t <= _POLY_TAIL_EPS:
        return 1.0
    n_est = t ** (-1.0 / a)
    if n_est > 2**40:
        return x
    n0 = int(n_est)
    best = 1.0
    for n in range(max(1, n0 - 3), n0 + 4):
        p = 1.0 + float(n) ** (-a)
        if p <= x and p > best:
            best = p
    return best


def first_point_geq(flat, x) -> float:
    """Smallest set point >= x, or +inf when none exists."""
    types, params, pool = flat
    best = _INF
    for i in range(len(types)):
        code = types[i]
        p = params[i]
        if code == 0:
            cand = p[0] if x <= p[0] else (x if x <= p[1] else _INF)
        elif code == 1:
            cand = _cantor_first_geq(p[0], p[1], int(p[2]), p[3], x)
        elif code == 2:
            cand = _poly_first_geq(p[0], x)
        else:
            off, cnt = int(p[0]), int(p[1])
            idx = bisect_left(pool, x, off, off + cnt)
            cand = pool[idx] if idx < off + cnt else _INF
        if cand < best:
            best = cand
    return best


def last_point_leq(flat, x) -> float:
    """Largest set point <= x, or -inf when none exists."""
    types, params, pool = flat
    best = -_INF
    for i in range(len(types)):
        code = types[i]
        p = params[i]
        if code == 0:
            cand = p[1] if x >= p[1] else (x if x >= p[0] else -_INF)
        elif code == 1:
            cand = _cantor_last_leq(p[0], p[1], int(p[2]), p[3], x)
        elif code == 2:
            cand = _poly_last_leq(p[0], x)
        else:
            off, cnt = int(p[0]), int(p[1])
            idx = bisect_right(pool, x, off, off + cnt)
            cand = pool[idx - 1] if idx > off else -_INF
        if cand > best:
            best = cand
    return best


def bounds(s) -> tuple:
    flat = flatten(s)
    return first_point_geq(flat, -_INF), last_point_leq(flat, _INF)


# ---------------------------------------------------------------------------
# Rendering, covering numbers, separated subsets.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalList:
    """Sorted disjoint closed intervals covering a set at resolution delta.

    Every interval has length <= delta, starts and ends at set points, and
    consecutive intervals are strictly separated.
    """

    intervals: np.ndarray  # shape (n, 2)
    resolution: float

    def __len__(self):
        return len(self.intervals)

    def validate(self):
        iv = self.intervals
        if len(iv):
            if np.any(iv[:, 1] - iv[:, 0] > self.resolution):
                raise InvalidSetError("interval longer than resolution")
            if np.any(iv[1:, 0] <= iv[:-1, 1]):
                raise InvalidSetError("intervals not strictly separated")


@dataclass(frozen=True)
class Discretization:
    """Maximal separated subset at scale 2^-j (points differ by > 2^-j)."""

    points: np.ndarray
    scale: int

    def __len__(self):
        return len(self.points)


_MAX_TILES = 40_000_000


def render(s, delta: float) -> IntervalList:
    """Greedy minimal cover of the set by closed delta-intervals.

    Each emitted interval is trimmed to the span of set points it covers, so
    the result doubles as an exact carrier for covering counts.
    """
    if not (0.0 < delta <= 1.0):
        raise InvalidResolutionError(f"delta must be in (0, 1], got {delta}")
    flat = flatten(s)
    tiles = []
    x = -_INF
    while True:
        p = first_point_geq(flat, x)
        if p == _INF:
            break
        q = last_point_leq(flat, p + delta)
        tiles.append((p, q))
        if len(tiles) > _MAX_TILES:
            raise InvalidResolutionError("resolution too fine for this set")
        x = math.nextafter(p + delta, _INF)
    arr = np.asarray(tiles, dtype=np.float64).reshape(len(tiles), 2)
    return IntervalList(arr, delta)


def covering_number(s, window, delta: float) -> int:
    """Minimal number of closed delta-intervals covering set /\\ window.

    The greedy sweep anchoring each interval at the leftmost uncovered set
    point is optimal in one dimension.
    """
    if not (0.0 < delta <= 1.0):
        raise InvalidResolutionError(f"delta must be in (0, 1], got {delta}")
    w_lo, w_hi = float(window[0]), float(window[1])
    if w_lo > w_hi:
        raise OutOfRangeError(f"empty window [{w_lo}, {w_hi}]")
    if w_lo < 0.0 or w_hi > 3.0:
        raise OutOfRangeError("window must lie inside [0, 3]")
    flat = flatten(s)
    return _greedy_count(flat, w_lo, w_hi, delta)


def _greedy_count(flat, w_lo, w_hi, delta) -> int:
    count = 0
    x = w_lo
    while True:
        p = first_point_geq(flat, x)
        if p > w_hi:
            return count
        count += 1
        x = math.nextafter(p + delta, _INF)


def discretize(s, j: int) -> Discretization:
    """Greedy maximal 2^-j separated subset, chosen left to right."""
    if j < 0:
        raise OutOfRangeError(f"j must be >= 0, got {j}")
    sep = 2.0 ** (-j)
    flat = flatten(s)
    pts = []
    x = -_INF
    while True:
        p = first_point_geq(flat, x)
        if p == _INF:
            break
        pts.append(p)
        x = math.nextafter(p + sep, _INF)
    return Discretization(np.asarray(pts, dtype=np.float64), j)


# Sanity check used by tests and the CLI: does the set meet [lo, hi]?
def meets(s, lo: float, hi: float) -> bool:
    flat = flatten(s)
    return first_point_geq(flat, lo) <= hi
