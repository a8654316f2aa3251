"""Validated unit-interval samples and the bundled benchmark datasets.

Four classic datasets ship with the package, pre-scaled onto (0, 1):

``data1``
    Survival times (days) of 43 blood cancer patients, divided by 1970.
``data2``
    23 unit capacity factors produced by the SC16 estimation algorithm.
``data3``
    22 unit capacity factors produced by the P3 estimation algorithm.
``data4``
    30 failure times (hours) observed on a life test terminated at 12
    hours, divided by 12.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

__all__ = [
    "BUNDLED_DATASETS",
    "IngestionError",
    "UnitSample",
    "bundled_names",
    "load_dataset",
]

_TOKEN_SPLIT = re.compile(r"[,\s]+")


class IngestionError(ValueError):
    """Raised when input data cannot be parsed or violates (0, 1) bounds."""


@dataclass(frozen=True, eq=False)
class UnitSample:
    """An immutable sample of observations on the unit interval.

    Values are validated at construction: every observation must be finite
    and lie strictly inside (0, 1).  Samples produced by the random-variate
    generators (``source="sampler"``) may additionally contain the value
    1.0, which the inverse-exponential transform can reach.  Input order is
    preserved; consumers sort their own copies.
    """

    values: np.ndarray
    label: str = ""
    source: str = "file"
    scale_divisor: float | None = None
    _offsets: tuple[int, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.source not in ("bundled", "file", "sampler"):
            raise ValueError(f"unknown sample source {self.source!r}")
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1:
            vals = vals.reshape(-1)
        if vals.size == 0:
            raise IngestionError(f"{self.label or 'sample'}: no observations")
        if self.scale_divisor is not None:
            if not self.scale_divisor > 0:
                raise IngestionError("scale divisor must be positive")
            vals = vals / self.scale_divisor
        top_closed = self.source == "sampler"
        bad = ~np.isfinite(vals) | (vals <= 0.0)
        bad |= (vals > 1.0) if top_closed else (vals >= 1.0)
        if bad.any():
            rows = self._rows(np.flatnonzero(bad))
            raise IngestionError(
                f"{self.label or 'sample'}: {bad.sum()} value(s) outside the "
                f"unit interval after scaling (rows {rows}); first offender "
                f"is {vals[np.flatnonzero(bad)[0]]!r}"
            )
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def _rows(self, idx: np.ndarray) -> str:
        if self._offsets is not None:
            shown = [self._offsets[i] for i in idx[:8]]
        else:
            shown = [int(i) + 1 for i in idx[:8]]
        tail = ", ..." if idx.size > 8 else ""
        return ", ".join(str(r) for r in shown) + tail

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def sorted_values(self) -> np.ndarray:
        return np.sort(self.values)


@dataclass(frozen=True)
class _BundledSpec:
    filename: str
    divisor: float | None
    n: int
    title: str


BUNDLED_DATASETS: dict[str, _BundledSpec] = {
    "data1": _BundledSpec("data1.txt", 1970.0, 43,
                          "blood cancer survival times (days / 1970)"),
    "data2": _BundledSpec("data2.txt", None, 23,
                          "unit capacity factors, SC16 algorithm"),
    "data3": _BundledSpec("data3.txt", None, 22,
                          "unit capacity factors, P3 algorithm"),
    "data4": _BundledSpec("data4.txt", 12.0, 30,
                          "life-test failure times (hours / 12)"),
}


def bundled_names() -> list[str]:
    return sorted(BUNDLED_DATASETS)


def _parse_numeric_text(text: str, origin: str) -> tuple[np.ndarray, tuple[int, ...]]:
    """Parse newline/comma/whitespace-separated numbers, tracking line numbers."""
    values: list[float] = []
    lines: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in _TOKEN_SPLIT.split(line.strip()):
            if not tok:
                continue
            try:
                values.append(float(tok))
            except ValueError:
                raise IngestionError(
                    f"{origin}: line {lineno}: cannot parse {tok!r} as a number"
                ) from None
            lines.append(lineno)
    if not values:
        raise IngestionError(f"{origin}: no numeric values found")
    return np.array(values, dtype=float), tuple(lines)


def load_dataset(name_or_path: str, divisor: float | None = None) -> UnitSample:
    """Load a bundled dataset by name, or a plain numeric text file by path.

    Bundled names carry their own scale divisor; an explicit ``divisor``
    overrides it.  File input accepts one value per line or comma/whitespace
    separated tokens.  Parse failures and out-of-range values are reported
    with their line numbers.
    """
    key = str(name_or_path)
    if key in BUNDLED_DATASETS:
        spec = BUNDLED_DATASETS[key]
        text = resources.files("unitshiha.data").joinpath(spec.filename).read_text()
        vals, lines = _parse_numeric_text(text, key)
        if vals.size != spec.n:
            raise IngestionError(
                f"{key}: expected {spec.n} observations, found {vals.size}"
            )
        div = spec.divisor if divisor is None else divisor
        return UnitSample(vals, label=key, source="bundled",
                          scale_divisor=div, _offsets=lines)
    try:
        with open(key, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IngestionError(f"cannot read {key!r}: {exc}") from exc
    vals, lines = _parse_numeric_text(text, key)
    return UnitSample(vals, label=key, source="file",
                      scale_divisor=divisor, _offsets=lines)
