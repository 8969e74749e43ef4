"""Binary occupancy grids with metric scaling and a depot location.

Maps are read from portable graymaps (P2/P5) or from a plain ASCII grid of
``.`` (free) and ``#`` (occupied) characters. Metric information lives in a
JSON sidecar::

    {"resolution_m": 2.0, "depot": [-5.0, 0.0], "free_threshold": 128}

World frame: origin at the lower-left corner of the raster, x to the right,
y up. Pixel ``(col, row)`` (row 0 at the top of the image) has its center at
``((col + 0.5) * res, (height - row - 0.5) * res)``.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, NamedTuple

import numpy as np

DEFAULT_FREE_THRESHOLD = 128


class GridError(ValueError):
    """Base class for map loading errors."""


class MalformedHeaderError(GridError):
    pass


class TruncatedPayloadError(GridError):
    pass


class InvalidResolutionError(GridError):
    pass


class InvalidMetaError(GridError):
    pass


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class GridMeta:
    resolution: float
    depot: Point
    free_threshold: int = DEFAULT_FREE_THRESHOLD

    def __post_init__(self):
        if not (self.resolution > 0 and math.isfinite(self.resolution)):
            raise InvalidResolutionError(f"resolution must be positive, got {self.resolution!r}")
        if not all(math.isfinite(v) for v in self.depot):
            raise InvalidMetaError(f"depot must be finite, got {self.depot!r}")
        if not 0 <= self.free_threshold <= 255:
            raise InvalidMetaError(f"free_threshold must be in [0, 255], got {self.free_threshold}")
        object.__setattr__(self, "depot", Point(float(self.depot[0]), float(self.depot[1])))

    @classmethod
    def from_dict(cls, d: dict) -> "GridMeta":
        try:
            res = float(d["resolution_m"])
            depot = d["depot"]
            if len(depot) != 2:
                raise InvalidMetaError("depot must be a pair [x, y]")
            thr = int(d.get("free_threshold", DEFAULT_FREE_THRESHOLD))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GridError):
                raise
            raise InvalidMetaError(f"bad map metadata: {exc}") from exc
        return cls(res, Point(float(depot[0]), float(depot[1])), thr)

    def to_dict(self) -> dict:
        return {
            "resolution_m": self.resolution,
            "depot": [self.depot.x, self.depot.y],
            "free_threshold": self.free_threshold,
        }


@dataclass(frozen=True, eq=False)
class OccupancyGrid:
    """Immutable boolean raster; ``free[row, col]`` is True for area of interest."""

    free: np.ndarray
    resolution: float
    depot: Point = field(default=Point(0.0, 0.0))

    def __post_init__(self):
        arr = np.array(self.free, dtype=bool, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise GridError(f"grid must be a non-empty 2-D raster, got shape {arr.shape}")
        if not (self.resolution > 0 and math.isfinite(self.resolution)):
            raise InvalidResolutionError(f"resolution must be positive, got {self.resolution!r}")
        if not all(math.isfinite(v) for v in self.depot):
            raise InvalidMetaError(f"depot must be finite, got {self.depot!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "free", arr)
        object.__setattr__(self, "resolution", float(self.resolution))
        object.__setattr__(self, "depot", Point(float(self.depot[0]), float(self.depot[1])))

    @property
    def height(self) -> int:
        return self.free.shape[0]

    @property
    def width(self) -> int:
        return self.free.shape[1]

    @property
    def cells(self) -> np.ndarray:
        """Row-major flat view of the raster."""
        return self.free.ravel()

    @property
    def columns(self) -> np.ndarray:
        """Raster indexed ``[col, j]`` with ``j`` counting pixel rows upward from y = 0."""
        return self.free[::-1, :].T

    @property
    def extent(self) -> tuple[float, float]:
        return self.width * self.resolution, self.height * self.resolution

    def pixel_center(self, col: int, row: int) -> Point:
        return Point((col + 0.5) * self.resolution, (self.height - row - 0.5) * self.resolution)

    def pixel_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """World coordinates of every pixel center, each shaped like ``free``."""
        xs = (np.arange(self.width) + 0.5) * self.resolution
        ys = (self.height - np.arange(self.height) - 0.5) * self.resolution
        return np.meshgrid(xs, ys)

    def is_free_at(self, x: float, y: float) -> bool:
        col = math.floor(x / self.resolution)
        row = self.height - 1 - math.floor(y / self.resolution)
        if 0 <= col < self.width and 0 <= row < self.height:
            return bool(self.free[row, col])
        return False

    def free_count(self) -> int:
        return int(self.free.sum())

    def to_ascii(self) -> str:
        return "\n".join("".join("." if v else "#" for v in row) for row in self.free) + "\n"

    def to_pgm(self) -> bytes:
        header = f"P5\n{self.width} {self.height}\n255\n".encode()
        return header + (self.free.astype(np.uint8) * 255).tobytes()


def free_area(grid: OccupancyGrid) -> float:
    return grid.free_count() * grid.resolution**2


_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    tokens, pos = [], 0
    for _ in range(count):
        m = _TOKEN.match(data, pos)
        if m is None:
            raise MalformedHeaderError("unexpected end of header")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens, pos


def _parse_pgm(data: bytes) -> tuple[np.ndarray, int]:
    tokens, pos = _header_tokens(data, 4)
    magic = tokens[0]
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise MalformedHeaderError(f"non-integer header field in {tokens[1:]!r}") from None
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"invalid dimensions {width}x{height}")
    if not 0 < maxval < 65536:
        raise MalformedHeaderError(f"invalid maxval {maxval}")
    n = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the payload
        payload = data[pos + 1:]
        nbytes = 1 if maxval < 256 else 2
        if len(payload) < n * nbytes:
            raise TruncatedPayloadError(
                f"expected {n * nbytes} payload bytes for {width}x{height}, got {len(payload)}")
        dtype = np.uint8 if nbytes == 1 else np.dtype(">u2")
        values = np.frombuffer(payload[:n * nbytes], dtype=dtype).astype(np.int64)
    else:
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) < n:
            raise TruncatedPayloadError(f"expected {n} samples for {width}x{height}, got {len(body)}")
        try:
            values = np.array([int(t) for t in body[:n]], dtype=np.int64)
        except ValueError:
            raise MalformedHeaderError("non-integer sample in P2 payload") from None
    if values.max(initial=0) > maxval:
        raise MalformedHeaderError(f"sample exceeds maxval {maxval}")
    return values.reshape(height, width), maxval


def _parse_ascii(data: bytes) -> np.ndarray:
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError:
        raise MalformedHeaderError("not a PGM file and not an ASCII grid") from None
    rows = [line.rstrip("\r") for line in text.split("\n") if line.strip()]
    if not rows:
        raise MalformedHeaderError("empty ASCII grid")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise TruncatedPayloadError(f"ASCII grid row {i} has {len(row)} columns, expected {width}")
        bad = set(row) - {".", "#"}
        if bad:
            raise MalformedHeaderError(f"unexpected characters {sorted(bad)!r} in ASCII grid row {i}")
    return np.array([[c == "." for c in row] for row in rows], dtype=bool)


def load_grid(source: bytes | BinaryIO, meta: GridMeta) -> OccupancyGrid:
    """Parse a P2/P5 graymap or ASCII grid into an :class:`OccupancyGrid`.

    Graymap samples are rescaled to 0..255; a sample at or above
    ``meta.free_threshold`` is free.
    """
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    data = bytes(data)
    if data[:2] in (b"P2", b"P5") and (len(data) == 2 or data[2:3].isspace() or data[2:3] == b"#"):
        values, maxval = _parse_pgm(data)
        scaled = values * 255 // maxval if maxval != 255 else values
        free = scaled >= meta.free_threshold
    elif data[:1] == b"P":
        raise MalformedHeaderError(f"unsupported magic {data[:2]!r}")
    else:
        free = _parse_ascii(data)
    return OccupancyGrid(free, meta.resolution, meta.depot)


def load_meta(path: str | Path) -> GridMeta:
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidMetaError(f"{path}: {exc}") from exc
    return GridMeta.from_dict(d)


def read_grid(map_path: str | Path, meta_path: str | Path) -> OccupancyGrid:
    return load_grid(Path(map_path).read_bytes(), load_meta(meta_path))
