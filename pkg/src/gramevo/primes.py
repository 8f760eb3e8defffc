"""Prime generation, the prime-counting function, and the regression dataset.

The default dataset pairs the i-th prime with its index i for i = 1..n;
with n = 1000 that spans x = 2 through x = 7919.  The alternative pairs
every integer x in 2..n+1 with the count of primes at or below it.
"""

from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyDataset,
    FormatError,
    LimitTooSmall,
    OutOfTableRange,
    TableTooSmall,
)


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit``, ascending."""

    primes: np.ndarray
    limit: int

    def __post_init__(self):
        arr = np.asarray(self.primes, dtype=np.int64)
        object.__setattr__(self, "primes", arr)
        if arr.ndim != 1 or len(arr) == 0:
            raise ValueError("prime table must be a non-empty 1-d array")
        if np.any(np.diff(arr) <= 0):
            raise ValueError("prime table must be strictly increasing")

    def __len__(self) -> int:
        return len(self.primes)


def sieve(limit: int) -> PrimeTable:
    """Sieve of Eratosthenes up to and including ``limit``."""
    if limit < 2:
        raise LimitTooSmall(f"sieve limit must be at least 2, got {limit}")
    composite = np.zeros(limit + 1, dtype=bool)
    composite[:2] = True
    for p in range(2, int(limit**0.5) + 1):
        if not composite[p]:
            composite[p * p :: p] = True
    primes = np.flatnonzero(~composite)
    return PrimeTable(primes=primes, limit=limit)


def prime_pi(x: int, table: PrimeTable) -> int:
    """Count of primes less than or equal to x."""
    if x < 0 or x > table.limit:
        raise OutOfTableRange(
            f"x = {x} outside the table range [0, {table.limit}]"
        )
    return int(np.searchsorted(table.primes, x, side="right"))


_NUMERIC = re.compile(r"-?\d+(?:\.\d+)?")


class DatasetMode(enum.Enum):
    PRIME_INDEXED = "prime-indexed"
    INTEGER_RANGE = "integer-range"


@dataclass(frozen=True)
class Dataset:
    """Regression points (x, y), strictly increasing in x, all finite."""

    xs: np.ndarray
    ys: np.ndarray
    name: str = "dataset"

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.float64)
        ys = np.asarray(self.ys, dtype=np.float64)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        if xs.ndim != 1 or ys.ndim != 1 or len(xs) != len(ys):
            raise ValueError("xs and ys must be 1-d arrays of equal length")
        if len(xs) == 0:
            raise EmptyDataset("dataset has no points")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("dataset values must be finite")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("x values must be strictly increasing")

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.xs.tolist(), self.ys.tolist()))

    def __len__(self) -> int:
        return len(self.xs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.name == other.name
            and np.array_equal(self.xs, other.xs)
            and np.array_equal(self.ys, other.ys)
        )


def build_dataset(mode: DatasetMode, n: int, table: PrimeTable) -> Dataset:
    """Build the regression dataset in the requested mode."""
    if n < 1:
        raise ValueError("n must be positive")
    if mode is DatasetMode.PRIME_INDEXED:
        if len(table) < n:
            raise TableTooSmall(
                f"need {n} primes, table holds only {len(table)}"
            )
        xs = table.primes[:n].astype(np.float64)
        ys = np.arange(1, n + 1, dtype=np.float64)
        return Dataset(xs, ys, name="prime-indexed")
    # IntegerRange: x = 2 .. n+1 paired with the running prime count
    if table.limit < n + 1:
        raise TableTooSmall(
            f"need prime counts up to {n + 1}, table covers {table.limit}"
        )
    xs = np.arange(2, n + 2, dtype=np.float64)
    ys = np.searchsorted(table.primes, xs, side="right").astype(np.float64)
    return Dataset(xs, ys, name="integer-range")


def _render_number(v: float) -> str:
    """Integer-valued floats render without a fraction so files stay tidy."""
    if float(v).is_integer():
        return str(int(v))
    return np.format_float_positional(float(v), unique=True, trim="-")


def write_dataset(dataset: Dataset, path) -> None:
    """Write `x<TAB>y` lines under an `x y` header; all-or-nothing on disk."""
    path = os.fspath(path)
    lines = ["x y"]
    for x, y in zip(dataset.xs.tolist(), dataset.ys.tolist()):
        lines.append(f"{_render_number(x)}\t{_render_number(y)}")
    payload = "\n".join(lines) + "\n"
    tmp = f"{path}.tmp"
    try:
        with open(tmp, "w", encoding="ascii", newline="") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_dataset(path) -> Dataset:
    """Exact inverse of :func:`write_dataset` for files it wrote."""
    path = os.fspath(path)
    with open(path, "r", encoding="ascii") as fh:
        raw = fh.read()
    lines = raw.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != "x y":
        raise FormatError(1, "expected header 'x y'")
    xs: list[float] = []
    ys: list[float] = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split("\t")
        if len(parts) != 2:
            raise FormatError(lineno, "expected exactly one tab separator")
        if not (_NUMERIC.fullmatch(parts[0]) and _NUMERIC.fullmatch(parts[1])):
            raise FormatError(lineno, f"non-numeric value in {line!r}")
        xs.append(float(parts[0]))
        ys.append(float(parts[1]))
    if not xs:
        raise FormatError(1, "file holds a header but no points")
    name = os.path.splitext(os.path.basename(path))[0]
    try:
        return Dataset(np.array(xs), np.array(ys), name=name)
    except ValueError as exc:
        raise FormatError(1, str(exc)) from None
