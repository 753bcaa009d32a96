"""Benchmark harness: inject -> filter -> measure over a grid of noise
densities, filters, and trials, reporting CSV.

The design is paired: within one (trial, density) cell a single corrupted
image is shared by every filter, so per-cell metric differences between
filters are never noise-realization artifacts. Given the same config the
whole report is reproducible except for the runtime_ms column.
"""

import math
import os
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .filters import FilterKind, FilterSpec, apply_filter
from .image import GrayImage
from .metrics import evaluate
from .noise import NoiseKind, NoiseSpec, SplitMix64, inject
from .pgm import save_pgm

DEFAULT_DENSITIES = (0.05, 0.10, 0.15, 0.20, 0.25, 0.30)

_MASK64 = (1 << 64) - 1


def default_filters() -> tuple[FilterSpec, ...]:
    return (
        FilterSpec(FilterKind.CENTER_WEIGHTED_MEDIAN, center_weight=3),
        FilterSpec(FilterKind.ADAPTIVE_MEDIAN, w_max=7),
    )


class SweepError(Exception):
    """A cell failed; the message carries the cell coordinates."""


@dataclass(frozen=True)
class SweepConfig:
    source: GrayImage
    densities: tuple = DEFAULT_DENSITIES
    noise_kind: NoiseKind = NoiseKind.SALT_PEPPER
    filters: tuple = field(default_factory=default_filters)
    seed: int = 0
    trials: int = 5
    # Only consulted for Gaussian noise, where the density axis has no
    # natural meaning and only varies the per-cell seed.
    sigma: float = 10.0

    def __post_init__(self):
        if not isinstance(self.source, GrayImage):
            raise ValueError(
                f"source must be a GrayImage, got {type(self.source).__name__}"
            )
        dens = tuple(float(d) for d in self.densities)
        for d in dens:
            if not 0.0 < d <= 1.0:
                raise ValueError(f"density {d} outside (0, 1]")
        for a, b in zip(dens, dens[1:]):
            if a >= b:
                raise ValueError(
                    f"densities must be strictly increasing, got {a} then {b}"
                )
        object.__setattr__(self, "densities", dens)
        if not isinstance(self.noise_kind, NoiseKind):
            raise ValueError(
                f"noise_kind must be a NoiseKind, got {self.noise_kind!r}"
            )
        filts = tuple(self.filters)
        for f in filts:
            if not isinstance(f, FilterSpec):
                raise ValueError(f"filters must be FilterSpec, got {f!r}")
        object.__setattr__(self, "filters", filts)
        if not isinstance(self.seed, (int, np.integer)) or isinstance(
            self.seed, bool
        ):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError(f"seed must fit in 64 unsigned bits: {self.seed}")
        if not isinstance(self.trials, (int, np.integer)) or self.trials < 1:
            raise ValueError(f"trials must be a positive count: {self.trials!r}")
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")


@dataclass(frozen=True)
class SweepRow:
    density: float
    filter_label: str
    trial: int
    mse: float
    psnr_db: float
    pona_pct: Optional[float]
    runtime_ms: float


@dataclass(frozen=True)
class SweepAggregate:
    """Per (density, filter) means over trials."""

    density: float
    filter_label: str
    mse: float
    psnr_db: float
    pona_pct: Optional[float]
    runtime_ms: float


@dataclass(frozen=True)
class SweepReport:
    rows: tuple
    aggregates: tuple


def cell_seed(base_seed: int, trial_idx: int, density_idx: int,
              n_densities: int) -> int:
    """Injection seed for one (trial, density) cell.

    Cells are indexed row-major over (trial, density); the cell index is
    XORed into the base seed, so the injector's generator is seeded with a
    distinct value per cell and the whole grid is reproducible from one
    number.
    """
    return (base_seed ^ (trial_idx * n_densities + density_idx)) & _MASK64


def _noise_spec(config: SweepConfig, density: float, seed: int) -> NoiseSpec:
    if config.noise_kind == NoiseKind.GAUSSIAN:
        return NoiseSpec(
            kind=NoiseKind.GAUSSIAN, sigma=config.sigma, seed=seed
        )
    return NoiseSpec(kind=config.noise_kind, density=density, seed=seed)


def run_sweep(config: SweepConfig, dump_dir=None) -> SweepReport:
    """Execute the whole grid. dump_dir, when given, receives every restored
    image as <density>_<filterlabel>_<trial>.pgm.
    """
    if dump_dir is not None:
        os.makedirs(dump_dir, exist_ok=True)
    n_d = len(config.densities)
    labels = [f.label for f in config.filters]
    rows = []
    for d_idx, density in enumerate(config.densities):
        for t in range(config.trials):
            seed = cell_seed(config.seed, t, d_idx, n_d)
            try:
                noisy, mask = inject(
                    config.source, _noise_spec(config, density, seed)
                )
            except Exception as exc:
                raise SweepError(
                    f"injection failed at density={density} trial={t + 1}: "
                    f"{exc}"
                ) from exc
            for f_idx, fspec in enumerate(config.filters):
                label = labels[f_idx]
                try:
                    t0 = time.perf_counter()
                    restored = apply_filter(noisy, fspec)
                    elapsed_ms = (time.perf_counter() - t0) * 1000.0
                    report = evaluate(
                        config.source, noisy, restored, mask, elapsed_ms
                    )
                except Exception as exc:
                    raise SweepError(
                        f"filter {label} failed at density={density} "
                        f"trial={t + 1}: {exc}"
                    ) from exc
                rows.append(
                    (
                        d_idx,
                        f_idx,
                        SweepRow(
                            density=density,
                            filter_label=label,
                            trial=t + 1,
                            mse=report.mse,
                            psnr_db=report.psnr_db,
                            pona_pct=report.pona_pct,
                            runtime_ms=report.runtime_ms,
                        ),
                    )
                )
                if dump_dir is not None:
                    name = (
                        f"{format(density, '.6g')}_{label}_{t + 1}.pgm"
                    )
                    save_pgm(os.path.join(dump_dir, name), restored)
    rows.sort(key=lambda r: (r[0], r[1], r[2].trial))
    ordered = tuple(r[2] for r in rows)
    aggregates = _aggregate(ordered, config)
    return SweepReport(rows=ordered, aggregates=aggregates)


def _mean(values) -> Optional[float]:
    defined = [v for v in values if v is not None]
    if not defined:
        return None
    if any(math.isinf(v) for v in defined):
        return math.inf
    return sum(defined) / len(defined)


def _aggregate(rows, config: SweepConfig) -> tuple:
    out = []
    for density in config.densities:
        for fspec in config.filters:
            label = fspec.label
            cell = [
                r
                for r in rows
                if r.density == density and r.filter_label == label
            ]
            if not cell:
                continue
            out.append(
                SweepAggregate(
                    density=density,
                    filter_label=label,
                    mse=_mean([r.mse for r in cell]),
                    psnr_db=_mean([r.psnr_db for r in cell]),
                    pona_pct=_mean([r.pona_pct for r in cell]),
                    runtime_ms=_mean([r.runtime_ms for r in cell]),
                )
            )
    return tuple(out)


def _field(v) -> str:
    if v is None:
        return ""
    if math.isinf(v):
        return "inf"
    return format(v, ".6g")


def report_to_csv(report: SweepReport) -> str:
    """Render rows then aggregates. Aggregate lines reuse the row schema with
    "mean" in the trial column. Undefined pona is an empty field; infinite
    psnr is the literal "inf". Reals carry 6 significant digits.
    """
    lines = ["density,filter,trial,mse,psnr_db,pona_pct,runtime_ms"]
    for r in report.rows:
        lines.append(
            f"{_field(r.density)},{r.filter_label},{r.trial},"
            f"{_field(r.mse)},{_field(r.psnr_db)},{_field(r.pona_pct)},"
            f"{_field(r.runtime_ms)}"
        )
    for a in report.aggregates:
        lines.append(
            f"{_field(a.density)},{a.filter_label},mean,"
            f"{_field(a.mse)},{_field(a.psnr_db)},{_field(a.pona_pct)},"
            f"{_field(a.runtime_ms)}"
        )
    return "\n".join(lines) + "\n"


def synthetic_textured(
    width: int, height: int, seed: int = 0, block_size: int = 16
) -> GrayImage:
    """Deterministic grayscale test scene: a diagonal ramp plus seeded blocky
    texture, stretched to the full [0, 255] range.

    Serves as a stand-in for photographic test material: smooth shading from
    the ramp, edges at every block boundary.
    """
    if width < 1 or height < 1:
        raise ValueError(f"bad dimensions {width}x{height}")
    if block_size < 1:
        raise ValueError(f"block size must be >= 1, got {block_size}")
    xs = np.arange(width, dtype=np.float64)
    ys = np.arange(height, dtype=np.float64)
    denom = max(width + height - 2, 1)
    ramp = (ys[:, None] + xs[None, :]) / denom
    rng = SplitMix64(seed)
    by = (height + block_size - 1) // block_size
    bx = (width + block_size - 1) // block_size
    levels = np.empty((by, bx), dtype=np.float64)
    for i in range(by):
        for j in range(bx):
            levels[i, j] = rng.next_float()
    tex = np.repeat(
        np.repeat(levels, block_size, axis=0), block_size, axis=1
    )[:height, :width]
    combined = 0.6 * ramp + 0.4 * tex
    lo = combined.min()
    hi = combined.max()
    if hi > lo:
        combined = (combined - lo) / (hi - lo)
    else:
        combined = np.full_like(combined, 0.5)
    return GrayImage(np.rint(combined * 255.0).astype(np.uint8))
