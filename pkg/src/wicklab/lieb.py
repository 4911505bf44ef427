"""Gaussian-restricted Lieb functional for the full Hoelder inequality.

For Gaussian trials f = c1 exp(-s x^2/2), g = c2 exp(-t x^2/2) of unit
normalised-Lebesgue norm, the squared kernel norm

    || int f(. - y) g(y) exp(-(alpha x - beta y)^2 / 2) d_N y ||_r^2

equals :func:`lieb_objective` F(s, t).  Its supremum over s, t > 0 is
v^{1/r-1/p} u^{1/r-1/q}, attained at s = 1/(pv), t = 1/(qu).
:func:`lieb_sup_search` locates that supremum numerically, independently of
the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import ConvergenceError, ExponentError
from .exponents import ExponentTuple, LiebParams, inv
from .numerics import GridSpec

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _log_objective(log_s: float, log_t: float | None, e: ExponentTuple, lp: LiebParams) -> float:
    s = math.exp(log_s)
    t = 0.0 if log_t is None else math.exp(log_t)
    val = math.log(e.p) / e.p - math.log(e.r) / e.r + log_s / e.p
    if not e.is_nelson:
        val += math.log(e.q) / e.q + log_t / e.q
    val -= math.log(s + t + lp.beta ** 2) / e.r_conj
    val -= math.log(lp.gamma ** 2 * s + lp.alpha ** 2 * t + s * t) / e.r
    return val


def lieb_objective(s: float, t: float, e: ExponentTuple) -> float:
    """F(s, t) = (p^{1/p} q^{1/q} / r^{1/r}) s^{1/p} t^{1/q} / ((s+t+beta^2)^{1/r'} (gamma^2 s + alpha^2 t + s t)^{1/r}).

    With q = inf the factors q^{1/q} t^{1/q} are 1 and t = 0 is allowed.
    """
    if s <= 0 or t < 0 or (t == 0 and not e.is_nelson):
        raise ValueError("lieb_objective needs s > 0 and t > 0")
    lp = LiebParams.from_tuple(e)
    num = e.p ** (1.0 / e.p) / e.r ** (1.0 / e.r) * s ** (1.0 / e.p)
    if not e.is_nelson:
        num *= e.q ** (1.0 / e.q) * t ** (1.0 / e.q)
    den = ((s + t + lp.beta ** 2) ** (1.0 / e.r_conj)
           * (lp.gamma ** 2 * s + lp.alpha ** 2 * t + s * t) ** (1.0 / e.r))
    return num / den


class LiebOptimum(NamedTuple):
    s: float
    t: float
    value: float


def lieb_closed_form(e: ExponentTuple) -> LiebOptimum:
    """(1/(pv), 1/(qu), v^{1/r-1/p} u^{1/r-1/q})."""
    value = e.v ** (inv(e.r) - inv(e.p)) * e.u ** (inv(e.r) - inv(e.q))
    return LiebOptimum(inv(e.p * e.v), inv(e.q * e.u), value)


# --------------------------------------------------------------------------
# derivative-free maximisation

def _bracket(f: Callable[[float], float], x0: float, step: float = 1.0,
             max_expand: int = 60) -> tuple[float, float]:
    """Interval around a maximum of a unimodal f, grown geometrically from x0."""
    f0 = f(x0)
    if f(x0 + step) < f0 and f(x0 - step) < f0:
        return x0 - step, x0 + step
    direction = 1.0 if f(x0 + step) >= f0 else -1.0
    prev, fprev = x0, f0
    for _ in range(max_expand):
        x = prev + direction * step
        fx = f(x)
        if fx < fprev:
            return (min(prev - direction * step, x), max(prev - direction * step, x))
        prev, fprev = x, fx
        step *= 2.0
    raise ConvergenceError("could not bracket a maximum; objective seems unbounded")


def golden_section_max(f: Callable[[float], float], a: float, b: float,
                       tol: float = 1e-11, max_iter: int = 200) -> tuple[float, float]:
    """Maximise a unimodal f on [a, b]; returns (argmax, max)."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    fx = f(x)
    best = max((fx, x), (fc, c), (fd, d))
    return best[1], best[0]


def _line_max(f: Callable[[float], float], x0: float) -> tuple[float, float]:
    a, b = _bracket(f, x0)
    return golden_section_max(f, a, b)


@dataclass(frozen=True)
class LiebSearchResult:
    s: float
    t: float
    value: float
    sweeps: int
    start_spread: float

    def as_optimum(self) -> LiebOptimum:
        return LiebOptimum(self.s, self.t, self.value)


START_POINTS = ((-3.0, -3.0), (-3.0, 1.0), (1.0, -3.0), (1.0, 1.0))


def _coordinate_descent(g: Callable[[float, float], float], x: float, y: float,
                        max_sweeps: int, xtol: float) -> tuple[float, float, float, int]:
    val = g(x, y)
    for sweep in range(1, max_sweeps + 1):
        x_new, _ = _line_max(lambda z: g(z, y), x)
        y_new, val_new = _line_max(lambda z: g(x_new, z), y)
        moved = max(abs(x_new - x), abs(y_new - y))
        gain = val_new - val
        x, y, val = x_new, y_new, max(val, val_new)
        if moved < xtol or (gain <= 1e-15 and moved < 1e3 * xtol):
            return x, y, val, sweep
    raise ConvergenceError(f"coordinate descent did not settle in {max_sweeps} sweeps")


def lieb_sup_search(e: ExponentTuple, max_sweeps: int = 20000, xtol: float = 1e-10) -> LiebSearchResult:
    """Maximise F over (log s, log t) by coordinate ascent with golden-section line searches.

    Runs from four spread starting points and keeps the best.  log F is
    concave in (log s, log t), so all starts should agree; ``start_spread``
    reports the largest disagreement in log F.  For q = inf the search is
    one-dimensional in s with t = 0.
    """
    if math.isinf(e.p) or math.isinf(e.r):
        raise ExponentError("lieb_sup_search needs finite p and r")
    if e.is_nelson and math.isinf(e.v):
        raise ExponentError("degenerate tuple (v = inf, q = inf) has no interior optimum")
    lp = LiebParams.from_tuple(e)
    results = []
    if e.is_nelson:
        for x0, _ in START_POINTS[::3]:
            x, val = _line_max(lambda z: _log_objective(z, None, e, lp), x0)
            results.append((val, x, None, 1))
    else:
        g = lambda a, b: _log_objective(a, b, e, lp)  # noqa: E731
        for x0, y0 in START_POINTS:
            x, y, val, sweeps = _coordinate_descent(g, x0, y0, max_sweeps, xtol)
            results.append((val, x, y, sweeps))
    best = max(results, key=lambda r: r[0])
    spread = max(r[0] for r in results) - min(r[0] for r in results)
    t = 0.0 if best[2] is None else math.exp(best[2])
    return LiebSearchResult(math.exp(best[1]), t, math.exp(best[0]),
                            max(r[3] for r in results), spread)


# --------------------------------------------------------------------------
# Gaussian trial functions and the kernel integral

@dataclass(frozen=True)
class GaussianTrial:
    """c exp(-s |x|^2 / 2) normalised to unit L^p(d_N x) norm per axis, c = (sqrt(p s))^{1/p}."""

    scale: float
    p: float

    def __post_init__(self):
        if self.scale <= 0 or not self.p >= 1:
            raise ValueError("GaussianTrial needs scale > 0 and p >= 1")

    @property
    def c(self) -> float:
        return math.sqrt(self.p * self.scale) ** (1.0 / self.p)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        d = pts.shape[1]
        return self.c ** d * np.exp(-0.5 * self.scale * np.sum(pts * pts, axis=1))


def lieb_kernel_norm(f: Callable[[np.ndarray], np.ndarray], g: Callable[[np.ndarray], np.ndarray],
                     e: ExponentTuple, spec: GridSpec, chunk: int = 256) -> float:
    """{ int [ int |f(x-y)| |g(y)| J(x, y) d_N y ]^r d_N x }^{1/r} on a grid.

    J(x, y) = exp(-|alpha x - beta y|^2 / 2); brute-force double trapezoid sum
    over the grid (no use of product structure), d in {1, 2}.
    """
    lp = LiebParams.from_tuple(e)
    pts = spec.points()
    w = spec.trapezoid_weights().ravel()
    gy = np.abs(g(pts))
    inner = np.empty(len(pts))
    for start in range(0, len(pts), chunk):
        xs = pts[start:start + chunk]
        diff = xs[:, None, :] - pts[None, :, :]
        fx = np.abs(f(diff.reshape(-1, spec.dim))).reshape(len(xs), len(pts))
        z = lp.alpha * xs[:, None, :] - lp.beta * pts[None, :, :]
        kern = np.exp(-0.5 * np.sum(z * z, axis=2))
        inner[start:start + chunk] = (fx * kern) @ (gy * w)
    return float(np.sum(w * inner ** e.r)) ** (1.0 / e.r)
