"""Gaussian quadrature, truncated grids, L^p norms and convolution under d_N x.

Two measures appear throughout:

* ``mu``, the standard Gaussian on R^d, integrated with tensor Gauss-Hermite
  rules (:func:`lp_norm_gaussian`);
* the normalised Lebesgue measure d_N x = (2 pi)^{-d/2} dx, integrated with
  the trapezoid rule on a box [-L, L]^d (:func:`lp_norm_lebesgue`,
  :func:`convolve_normalized`).

Only d in {1, 2} is supported for grids; quadrature rules tensorise to any d.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import signal

from .chaos import ChaosExpansion, MultiIndex, hermite_table, multi_indices
from .errors import BoundaryDecayError, DimensionMismatch

MAX_ORDER = 200
DEFAULT_ORDER = {1: 64, 2: 32}
DEFAULT_GRID = {1: (12.0, 0.01), 2: (8.0, 0.05)}

Integrand = Callable[[np.ndarray], np.ndarray]


# --------------------------------------------------------------------------
# Gauss-Hermite rules

@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and weights integrating against e^{-x^2/2}/sqrt(2 pi); weights sum to 1."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def tensor(self, dim: int) -> tuple[np.ndarray, np.ndarray]:
        """Tensor nodes of shape (order**dim, dim) in row-major order, and their weights."""
        if dim < 1:
            raise ValueError("dim must be positive")
        grids = np.meshgrid(*([self.nodes] * dim), indexing="ij")
        points = np.stack([g.ravel() for g in grids], axis=1)
        w = self.weights
        for _ in range(dim - 1):
            w = np.multiply.outer(w, self.weights)
        return points, np.asarray(w).ravel()

    def expectation(self, f: Integrand, dim: int = 1):
        points, w = self.tensor(dim)
        return np.sum(w * np.asarray(f(points)))

    def table(self) -> str:
        lines = [f"# Gauss-Hermite rule, order {self.order}, weight N(0,1)", "node,weight"]
        lines += [f"{x!r},{w!r}" for x, w in zip(self.nodes, self.weights)]
        return "\n".join(lines) + "\n"


@functools.lru_cache(maxsize=None)
def gauss_hermite_rule(order: int) -> QuadratureRule:
    """Gauss rule for the standard normal density.

    Built from the classical weight e^{-x^2} rule by x -> sqrt(2) x and
    normalising the weights to sum to one.
    """
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"quadrature order must be in [1, {MAX_ORDER}], got {order}")
    x, w = np.polynomial.hermite.hermgauss(order)
    nodes = x * math.sqrt(2.0)
    weights = w / w.sum()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(order, nodes, weights)


def default_rule(dim: int) -> QuadratureRule:
    return gauss_hermite_rule(DEFAULT_ORDER.get(dim, 32))


def lp_norm_gaussian(f: Integrand, p: float, rule: QuadratureRule | None = None,
                     dim: int = 1) -> float:
    """||f||_{L^p(mu)} by tensor quadrature; ``f`` maps an (n, dim) array to n values.

    For ``p = inf`` this is the largest |f| over the tensor nodes, which is
    only a lower estimate of the essential supremum.
    """
    if not (p >= 1):
        raise ValueError(f"p must be >= 1, got {p}")
    rule = rule or default_rule(dim)
    points, w = rule.tensor(dim)
    vals = np.abs(np.asarray(f(points)))
    if vals.shape != w.shape:
        raise DimensionMismatch(f"integrand returned shape {vals.shape}, expected {w.shape}")
    top = float(vals.max())
    if math.isinf(p) or top == 0.0:
        return top
    return top * float(np.sum(w * (vals / top) ** p)) ** (1.0 / p)


# --------------------------------------------------------------------------
# grids

@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on the box [-extent, extent]^dim with spacing ``step``."""

    dim: int
    extent: float
    step: float

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError("grids support dim 1 or 2")
        if self.extent <= 0 or self.step <= 0:
            raise ValueError("extent and step must be positive")
        ratio = self.extent / self.step
        if abs(ratio - round(ratio)) > 1e-9 * max(1.0, ratio) or round(ratio) < 1:
            raise ValueError(f"extent/step must be a positive integer, got {ratio}")

    @classmethod
    def default(cls, dim: int) -> "GridSpec":
        L, h = DEFAULT_GRID[dim]
        return cls(dim, L, h)

    @property
    def half(self) -> int:
        return int(round(self.extent / self.step))

    @property
    def n(self) -> int:
        """Nodes per axis."""
        return 2 * self.half + 1

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.dim

    def axis(self) -> np.ndarray:
        return (np.arange(self.n) - self.half) * self.step

    def points(self) -> np.ndarray:
        grids = np.meshgrid(*([self.axis()] * self.dim), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1)

    def trapezoid_weights(self) -> np.ndarray:
        w1 = np.full(self.n, self.step)
        w1[0] = w1[-1] = 0.5 * self.step
        w = w1
        for _ in range(self.dim - 1):
            w = np.multiply.outer(w, w1)
        return w * (2.0 * math.pi) ** (-self.dim / 2)

    def padded(self, factor: int) -> "GridSpec":
        return GridSpec(self.dim, self.extent * factor, self.step)

    def boundary_mask(self) -> np.ndarray:
        mask = np.zeros(self.shape, dtype=bool)
        for ax in range(self.dim):
            idx = [slice(None)] * self.dim
            idx[ax] = 0
            mask[tuple(idx)] = True
            idx[ax] = -1
            mask[tuple(idx)] = True
        return mask


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples of a function at every node of ``spec`` (array of shape ``spec.shape``)."""

    spec: GridSpec
    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=complex)
        if arr.size != self.spec.n ** self.spec.dim:
            raise DimensionMismatch(
                f"{arr.size} samples for a grid of {self.spec.n ** self.spec.dim} nodes")
        arr = arr.reshape(self.spec.shape)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @classmethod
    def from_callable(cls, spec: GridSpec, f: Integrand) -> "GridFunction":
        return cls(spec, np.asarray(f(spec.points()), dtype=complex))

    def boundary_max(self) -> float:
        return float(np.abs(self.samples[self.spec.boundary_mask()]).max())

    def restrict(self, spec: GridSpec) -> "GridFunction":
        """Samples on a smaller concentric grid with the same step."""
        if spec.dim != self.spec.dim or abs(spec.step - self.spec.step) > 1e-15 * spec.step:
            raise DimensionMismatch("restriction needs the same dim and step")
        off = self.spec.half - spec.half
        if off < 0:
            raise DimensionMismatch("target grid is larger than the source grid")
        sl = (slice(off, off + spec.n),) * spec.dim
        return GridFunction(spec, self.samples[sl])

    def to_record(self) -> dict:
        flat = self.samples.ravel()
        return {"dim": self.spec.dim, "extent": self.spec.extent, "step": self.spec.step,
                "samples": [[float(z.real), float(z.imag)] for z in flat]}

    @classmethod
    def from_record(cls, record: dict) -> "GridFunction":
        spec = GridSpec(int(record["dim"]), float(record["extent"]), float(record["step"]))
        data = np.asarray(record["samples"], dtype=float)
        return cls(spec, data[:, 0] + 1j * data[:, 1])


def lp_norm_lebesgue(f: GridFunction, p: float, decay_tol: float = 1e-14) -> float:
    """(integral |f|^p d_N x)^{1/p} over the box by the trapezoid rule.

    Raises BoundaryDecayError when |f|^p exceeds ``decay_tol`` anywhere on the
    boundary of the box.
    """
    if not (p >= 1):
        raise ValueError(f"p must be >= 1, got {p}")
    mod = np.abs(f.samples)
    if math.isinf(p):
        return float(mod.max())
    edge = f.boundary_max() ** p
    if edge > decay_tol:
        raise BoundaryDecayError(
            f"|f|^p = {edge:.3e} on the boundary of [-{f.spec.extent}, {f.spec.extent}]^{f.spec.dim}")
    top = float(mod.max())
    if top == 0.0:
        return 0.0
    return top * float(np.sum(f.spec.trapezoid_weights() * (mod / top) ** p)) ** (1.0 / p)


def convolve_normalized(f: GridFunction, g: GridFunction, method: str = "auto",
                        decay_tol: float = 1e-14) -> GridFunction:
    """(f * g)(x) = (2 pi)^{-d/2} integral f(x - y) g(y) dy sampled on the common grid.

    ``method`` is ``"direct"`` (O(n^2) summation, the reference in d = 1),
    ``"fft"``, or ``"auto"`` (direct in d = 1, fft in d = 2).  Samples falling
    outside the box are treated as zero; ``decay_tol`` bounds the product of
    one factor's boundary values with the other's maximum.
    """
    if f.spec != g.spec:
        raise DimensionMismatch(f"grid specs differ: {f.spec} vs {g.spec}")
    spec = f.spec
    edge = max(f.boundary_max() * float(np.abs(g.samples).max()),
               g.boundary_max() * float(np.abs(f.samples).max()))
    if edge > decay_tol:
        raise BoundaryDecayError(f"convolution integrand reaches {edge:.3e} on the boundary")
    if method == "auto":
        method = "direct" if spec.dim == 1 else "fft"
    if method == "direct":
        if spec.dim == 1:
            full = np.convolve(f.samples, g.samples, mode="full")
        else:
            full = signal.convolve(f.samples, g.samples, mode="full", method="direct")
    elif method == "fft":
        full = signal.fftconvolve(f.samples, g.samples, mode="full")
    else:
        raise ValueError(f"unknown convolution method {method!r}")
    m = spec.half
    central = full[(slice(m, m + spec.n),) * spec.dim]
    scale = spec.step ** spec.dim * (2.0 * math.pi) ** (-spec.dim / 2)
    return GridFunction(spec, central * scale)


# --------------------------------------------------------------------------
# projection oracle

def chaos_projection(f: Integrand, dim: int, k: int,
                     rule: QuadratureRule | None = None) -> dict[MultiIndex, complex]:
    """Coefficients of the orthogonal projection of ``f`` onto the k-th chaos.

    Each coefficient is E[f He_alpha] / alpha! computed by tensor quadrature.
    """
    rule = rule or default_rule(dim)
    points, w = rule.tensor(dim)
    vals = w * np.asarray(f(points), dtype=complex)
    tables = [hermite_table(k, points[:, i]) for i in range(dim)]
    out = {}
    for a in multi_indices(dim, k):
        if a.degree != k:
            continue
        basis = tables[0][a[0]]
        for i in range(1, dim):
            basis = basis * tables[i][a[i]]
        out[a] = complex(np.sum(vals * basis)) / a.factorial()
    return out


def wick_by_projection(phi: ChaosExpansion, psi: ChaosExpansion,
                       rule: QuadratureRule | None = None) -> dict[MultiIndex, complex]:
    """Wick product computed from its definition, sum over m, n of P_{m+n}(phi_m psi_n).

    Independent of the coefficient rule in :func:`wicklab.chaos.wick_product`;
    used as its oracle.
    """
    if phi.dim != psi.dim:
        raise DimensionMismatch("dimensions differ")
    out: dict[MultiIndex, complex] = {}
    for m in range(phi.degree + 1):
        fm = phi.homogeneous(m)
        if fm.is_zero():
            continue
        for n in range(psi.degree + 1):
            gn = psi.homogeneous(n)
            if gn.is_zero():
                continue
            proj = chaos_projection(lambda pts: fm.evaluate(pts) * gn.evaluate(pts),
                                    phi.dim, m + n, rule)
            for a, c in proj.items():
                out[a] = out.get(a, 0) + c
    return out


# --------------------------------------------------------------------------
# accurate one-dimensional norms of polynomials

SEGMENT_NODES = 20
GRADING_LEVELS = 24
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@functools.lru_cache(maxsize=None)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _kink_candidates(phi: ChaosExpansion) -> np.ndarray:
    """Real parts of the roots of Re phi and Im phi that lie within 1 of the real axis."""
    n = phi.degree
    re = np.zeros(n + 1)
    im = np.zeros(n + 1)
    for a, c in phi.items():
        re[a[0]] += complex(c).real
        im[a[0]] += complex(c).imag
    # top coefficients negligible in the orthonormal basis only add roots far out,
    # and a tiny leading coefficient would blow up the companion matrix
    scale = np.exp(0.5 * np.array([math.lgamma(k + 1) for k in range(n + 1)]))
    size = max(np.abs(re * scale).max(), np.abs(im * scale).max())
    roots = []
    for part in (re, im):
        keep = np.nonzero(np.abs(part * scale) > 1e-13 * size)[0]
        part = part[:keep[-1] + 1] if len(keep) else part[:0]
        if len(part) > 1:
            rts = np.polynomial.hermite_e.HermiteE(part).roots()
            roots.extend(r.real for r in np.atleast_1d(rts) if abs(r.imag) < 1.0)
    return np.unique(np.round(np.asarray(roots, dtype=float), 14))


def _graded(a: float, b: float, toward_a: bool, levels: int) -> list[tuple[float, float]]:
    """Split [a, b] geometrically towards one endpoint."""
    length = b - a
    cuts = [length * 2.0 ** -k for k in range(levels + 1)]
    segs = []
    for hi, lo in zip(cuts[:-1], cuts[1:]):
        segs.append((a + lo, a + hi) if toward_a else (b - hi, b - lo))
    segs.append((a, a + cuts[-1]) if toward_a else (b - cuts[-1], b))
    return segs


MAX_EXTENT = 60.0


def _normalized_coefficients(phi: ChaosExpansion) -> np.ndarray:
    """a_n = c_n sqrt(n!), the coefficients against the orthonormal He_n / sqrt(n!)."""
    a = np.zeros(phi.degree + 1, dtype=complex)
    for alpha, c in phi.items():
        a[alpha[0]] = complex(c) * math.exp(0.5 * math.lgamma(alpha[0] + 1))
    return a


def _weighted_density(a: np.ndarray, p: float, x: np.ndarray) -> np.ndarray:
    """|sum_n a_n He_n(x)/sqrt(n!)|^p e^{-x^2/2} / sqrt(2 pi), without overflow.

    The recurrence runs on h_n = He_n(x) e^{-x^2/4} / sqrt(n!), which stays
    bounded by about 1.09 for every n and x, and the leftover Gaussian
    factor e^{(p/4 - 1/2) x^2} is applied in log space.
    """
    x = np.asarray(x, dtype=float)
    h_prev = np.zeros_like(x)
    h = np.exp(-0.25 * x * x)
    total = a[0] * h
    for n in range(1, len(a)):
        h_prev, h = h, (x * h - math.sqrt(n - 1) * h_prev) / math.sqrt(n)
        total = total + a[n] * h
    mod = np.abs(total)
    with np.errstate(divide="ignore"):
        log_val = p * np.log(mod) + (0.25 * p - 0.5) * x * x
    return np.exp(log_val) / _SQRT_2PI


def polynomial_lp_norm(phi: ChaosExpansion, p: float, extent: float | None = None) -> float:
    """||phi||_{L^p(mu)} for a one-dimensional expansion, accurate near sign changes.

    |phi|^p is only piecewise smooth, so tensor Gauss-Hermite loses digits
    wherever phi vanishes.  Here the line is cut at the (near-)real roots of
    Re phi and Im phi, each cut is approached by geometric grading, and
    every piece is integrated with Gauss-Legendre against the Gaussian
    density.  ``extent`` fixes the truncation box; by default it grows until
    the neglected tail is below 1e-17 of the integral.
    """
    if phi.dim != 1:
        raise DimensionMismatch("polynomial_lp_norm is one-dimensional")
    if math.isinf(p):
        raise ValueError("use lp_norm_gaussian for p = inf")
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if phi.is_zero():
        return 0.0

    coeffs = _normalized_coefficients(phi)

    def density(x: np.ndarray) -> np.ndarray:
        return _weighted_density(coeffs, p, x)

    kinks = _kink_candidates(phi)
    if extent is None:
        coarse = np.linspace(-12.0, 12.0, 2401)
        rough = float(np.sum(density(coarse))) * 0.01
        extent = max(10.0, 2.0 + float(np.abs(kinks).max(initial=0.0)))
        extent = min(extent, MAX_EXTENT)
        while extent < MAX_EXTENT:
            tail = np.linspace(extent, 2.0 * extent, 400)
            edge = max(density(tail).max(), density(-tail).max()) * 2.0 * extent
            if edge <= 1e-17 * rough:
                break
            extent = min(1.5 * extent, MAX_EXTENT)
    kinks = kinks[np.abs(kinks) < extent]
    cuts = np.unique(np.concatenate([[-extent, extent], kinks]))
    kink_set = set(kinks.tolist())
    pieces: list[tuple[float, float]] = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        left, right = a in kink_set, b in kink_set
        if left and right:
            mid = 0.5 * (a + b)
            pieces += _graded(a, mid, True, GRADING_LEVELS) + _graded(mid, b, False, GRADING_LEVELS)
        elif left or right:
            pieces += _graded(a, b, left, GRADING_LEVELS)
        else:
            pieces.append((a, b))
    # every piece is at least its own length away from a kink; cap lengths at 1
    a = np.array([pc[0] for pc in pieces])
    b = np.array([pc[1] for pc in pieces])
    counts = np.maximum(1, np.ceil(b - a)).astype(int)
    owner = np.repeat(np.arange(len(a)), counts)
    offset = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    width = (b - a)[owner] / counts[owner]
    lo = a[owner] + offset * width
    hi = lo + width
    x, w = _legendre(SEGMENT_NODES)
    half = 0.5 * (hi - lo)
    pts = (0.5 * (hi + lo))[:, None] + half[:, None] * x[None, :]
    vals = density(pts.ravel()).reshape(pts.shape)
    total = float(np.sum((vals * w[None, :]).sum(axis=1) * half))
    return total ** (1.0 / p)


def chaos_lp_norm(phi: ChaosExpansion, p: float, rule: QuadratureRule | None = None) -> float:
    """L^p(mu) norm of an expansion: root-split integration in d = 1 for finite p,
    tensor quadrature otherwise (p = inf is the node-max lower estimate).

    Results are memoised; expansions are immutable and hash by value.
    """
    return _chaos_lp_norm(phi, float(p), rule or default_rule(phi.dim))


@functools.lru_cache(maxsize=16384)
def _chaos_lp_norm(phi: ChaosExpansion, p: float, rule: QuadratureRule) -> float:
    if phi.dim == 1 and not math.isinf(p):
        return polynomial_lp_norm(phi, p)
    return lp_norm_gaussian(phi, p, rule, phi.dim)
