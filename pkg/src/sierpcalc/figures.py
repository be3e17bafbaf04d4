"""Figure data: the set itself, the image of the naturals, and the Fourier example.

Every builder returns text (CSV or SVG) so callers decide where it goes.
Output depends only on the configuration, so repeated runs are byte-identical.
"""
from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from . import svg
from .arithmetic import REAL, SIERPINSKI, embed_natural
from .errors import InvalidResolution
from .fourier import FourierSeries, analyze, reconstruct, series_to_csv
from .functions import from_definition
from .rational import format_rational
from .sierpinski import Side, cell_arrays, cells_to_csv, forward

MAX_RESOLUTION = 14


@dataclass(frozen=True)
class RenderConfig:
    resolution_k: int = 7
    side_filter: str = "positive_only"
    output_format: str = "csv"
    terms_N: int = 5
    sample_count: int = 401

    def __post_init__(self):
        if not 1 <= self.resolution_k <= MAX_RESOLUTION:
            raise InvalidResolution(
                f"resolution must be in [1, {MAX_RESOLUTION}], got {self.resolution_k}"
            )
        if self.side_filter not in ("positive_only", "both"):
            raise ValueError(f"unknown side filter {self.side_filter!r}")
        if self.output_format not in ("csv", "svg"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.terms_N < 0:
            raise ValueError("terms_N must be >= 0")
        if self.sample_count < 2:
            raise ValueError("sample_count must be >= 2")


def fig1(cfg: RenderConfig) -> str:
    """Cells covering f^-1([0, 1)) at resolution 2^-k."""
    k = cfg.resolution_k
    cx, cy = cell_arrays(0, 1, k)
    cells = set(zip(cx.tolist(), cy.tolist()))
    if cfg.output_format == "svg":
        return svg.squares(cells, k)
    return cells_to_csv(cells, k)


def naturals(count: int = 200):
    return [(n, embed_natural(SIERPINSKI, n)) for n in range(1, count + 1)]


def fig2(cfg: RenderConfig, count: int = 200) -> str:
    """The points f^-1(n) for n = 1..count."""
    pts = naturals(count)
    if cfg.output_format == "svg":
        return svg.scatter([(float(p.a), float(p.b)) for _, p in pts],
                           title=f"f^-1(1..{count})")
    rows = ["n,a,b,side"]
    rows += [f"{n},{format_rational(p.a)},{format_rational(p.b)},{p.side.value}" for n, p in pts]
    return "\n".join(rows) + "\n"


def sample_grid(cfg: RenderConfig):
    """Even grid of rationals on [-1, 1] mapped into S, filtered by side.

    Under ``positive_only`` points on the minus side (ternary tails of 1s)
    are dropped, as a floating-point plotter would never reach them anyway.
    """
    m = cfg.sample_count - 1
    out = []
    for i in range(cfg.sample_count):
        y = mpq(-1) + mpq(2 * i, m)
        x = forward(y)
        if cfg.side_filter == "positive_only" and x.side is Side.MINUS:
            continue
        out.append((y, x))
    return out


def _sample_rows(samples, values) -> str:
    rows = ["y,a,b,side,value"]
    for (y, x), v in zip(samples, values):
        rows.append(f"{float(y)!r},{float(x.a)!r},{float(x.b)!r},{x.side.value},{float(v)!r}")
    return "\n".join(rows) + "\n"


def fig3(cfg: RenderConfig, definition: str = "step") -> str:
    """Samples of the function itself over the grid."""
    A = from_definition(definition, SIERPINSKI, REAL)
    samples = sample_grid(cfg)
    values = [A(x) for _, x in samples]
    if cfg.output_format == "svg":
        return svg.polyline([float(y) for y, _ in samples], [float(v) for v in values],
                            title=f"A = {definition}")
    return _sample_rows(samples, values)


def fourier_series(definition: str, N: int, tol: float = 1e-8) -> FourierSeries:
    A = from_definition(definition, SIERPINSKI, REAL)
    return analyze(A, N, tol=tol)


def reconstruction(cfg: RenderConfig, series: FourierSeries, title: str = "") -> str:
    samples = sample_grid(cfg)
    values = [reconstruct(series, x) for _, x in samples]
    if cfg.output_format == "svg":
        return svg.polyline([float(y) for y, _ in samples], values, title=title)
    return _sample_rows(samples, values)


def fourier_outputs(definition: str, cfg: RenderConfig, tol: float = 1e-8) -> dict[str, str]:
    """Coefficient CSV plus the sampled reconstruction (CSV or SVG)."""
    series = fourier_series(definition, cfg.terms_N, tol)
    ext = cfg.output_format
    return {
        "coeffs.csv": series_to_csv(series),
        f"recon.{ext}": reconstruction(cfg, series, title=f"{definition}, N = {cfg.terms_N}"),
    }


def parse_sample_csv(text: str) -> list[tuple[float, float, float, str, float]]:
    lines = text.strip("\n").split("\n")
    if lines[0] != "y,a,b,side,value":
        raise ValueError("unexpected sample CSV header")
    out = []
    for line in lines[1:]:
        y, a, b, side, v = line.split(",")
        out.append((float(y), float(a), float(b), side, float(v)))
    return out


def parse_naturals_csv(text: str):
    lines = text.strip("\n").split("\n")
    if lines[0] != "n,a,b,side":
        raise ValueError("unexpected naturals CSV header")
    rows = []
    for line in lines[1:]:
        n, a, b, side = line.split(",")
        rows.append((int(n), a, b, side))
    return rows
