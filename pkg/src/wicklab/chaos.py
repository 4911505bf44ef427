"""Truncated Hermite chaos expansions and the finite-dimensional Wick algebra.

A random variable on the standard Gaussian space (R^d, mu) is stored by its
coefficients in the probabilists' Hermite basis

    phi(x) = sum_alpha c_alpha He_alpha(x),   He_alpha(x) = prod_i He_{alpha_i}(x_i).

With this normalisation ||He_alpha||_{L^2(mu)}^2 = alpha! and the Wick product
acts on basis elements by He_alpha <> He_beta = He_{alpha+beta}, so every
operation here is a finite manipulation of coefficient maps.  Coefficients
may be any exact numeric type (``int``, ``fractions.Fraction``) as well as
``float``/``complex``; arithmetic is done in the input type so that rational
inputs give bit-exact algebra.
"""

from __future__ import annotations

import json
import math
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "MultiIndex",
    "ChaosExpansion",
    "multi_indices",
    "hermite_eval",
    "hermite_table",
    "chaos_eval",
    "wick_product",
    "wick_power",
    "second_quantization",
    "exponential_chaos",
    "exponential_tail_bound",
    "exponential_eval",
    "s_transform",
    "tensor_product",
]


class MultiIndex(tuple):
    """Exponent vector alpha of one Hermite basis element.

    Behaves as a plain tuple for hashing and comparison (so ``(2, 0)`` and
    ``MultiIndex((2, 0))`` address the same coefficient), but ``+`` is the
    entrywise sum used by the Wick product.
    """

    __slots__ = ()

    def __new__(cls, degrees: Iterable[int]) -> "MultiIndex":
        t = tuple(int(k) for k in degrees)
        if any(k < 0 for k in t):
            raise ValueError(f"multi-index entries must be >= 0, got {t}")
        return super().__new__(cls, t)

    @property
    def dim(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def factorial(self) -> int:
        out = 1
        for k in self:
            out *= math.factorial(k)
        return out

    def __add__(self, other):  # type: ignore[override]
        if len(self) != len(other):
            raise DimensionMismatch(f"cannot add multi-indices {self} and {other}")
        return MultiIndex(a + b for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"MultiIndex({tuple(self)})"


def multi_indices(dim: int, max_degree: int) -> list[MultiIndex]:
    """All alpha in N^dim with |alpha| <= max_degree, graded then lexicographically descending."""
    if dim < 1:
        raise ValueError("dim must be positive")

    def of_degree(d: int, n: int) -> Iterator[tuple[int, ...]]:
        if d == 1:
            yield (n,)
            return
        for first in range(n, -1, -1):
            for rest in of_degree(d - 1, n - first):
                yield (first,) + rest

    return [MultiIndex(a) for n in range(max_degree + 1) for a in of_degree(dim, n)]


def _is_zero(c) -> bool:
    return c == 0


class ChaosExpansion:
    """Immutable sparse map MultiIndex -> coefficient.

    ``max_degree`` is the truncation level the expansion is declared at (the
    Wick product of two expansions lives at the sum of their levels); it is
    metadata and does not take part in equality.  Zero coefficients are never
    stored, so the zero expansion is the empty map.
    """

    __slots__ = ("dim", "max_degree", "_coeffs")

    def __init__(self, dim: int, coeffs: Mapping[Sequence[int], object] | None = None,
                 max_degree: int | None = None):
        if dim < 1:
            raise ValueError("dim must be positive")
        store: dict[MultiIndex, object] = {}
        for key, c in (coeffs or {}).items():
            alpha = MultiIndex(key) if len(key) else MultiIndex((0,) * dim)
            if alpha.dim != dim:
                raise DimensionMismatch(f"index {tuple(alpha)} does not have length {dim}")
            if _is_zero(c):
                continue
            if alpha in store:
                raise ValueError(f"duplicate index {tuple(alpha)}")
            store[alpha] = c
        top = max((a.degree for a in store), default=0)
        if max_degree is None:
            max_degree = top
        elif top > max_degree:
            raise ValueError(f"coefficient of degree {top} exceeds max_degree={max_degree}")
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "max_degree", int(max_degree))
        object.__setattr__(self, "_coeffs", store)

    def __setattr__(self, name, value):
        raise AttributeError("ChaosExpansion is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "ChaosExpansion":
        return cls(dim, {})

    @classmethod
    def constant(cls, value, dim: int = 1) -> "ChaosExpansion":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def basis(cls, alpha: Sequence[int], coeff=1) -> "ChaosExpansion":
        """The single Hermite product ``coeff * He_alpha``."""
        alpha = MultiIndex(alpha)
        return cls(alpha.dim, {alpha: coeff})

    # mapping-like access --------------------------------------------------
    @property
    def coeffs(self) -> Mapping[MultiIndex, object]:
        return MappingProxyType(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, alpha: Sequence[int]):
        return self._coeffs.get(MultiIndex(alpha), 0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    @property
    def degree(self) -> int:
        """Actual top degree (0 for constants and the zero expansion)."""
        return max((a.degree for a in self._coeffs), default=0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def homogeneous(self, n: int) -> "ChaosExpansion":
        """Component in the n-th chaos G_n."""
        return ChaosExpansion(self.dim, {a: c for a, c in self.items() if a.degree == n},
                              max_degree=self.max_degree)

    def axis_degree(self) -> int:
        return max((max(a) for a in self._coeffs), default=0)

    # arithmetic -----------------------------------------------------------
    def _check_dim(self, other: "ChaosExpansion") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "ChaosExpansion") -> "ChaosExpansion":
        self._check_dim(other)
        out = dict(self._coeffs)
        for a, c in other.items():
            out[a] = out.get(a, 0) + c
        return ChaosExpansion(self.dim, out, max(self.max_degree, other.max_degree))

    def __neg__(self) -> "ChaosExpansion":
        return ChaosExpansion(self.dim, {a: -c for a, c in self.items()}, self.max_degree)

    def __sub__(self, other: "ChaosExpansion") -> "ChaosExpansion":
        return self + (-other)

    def scale(self, k) -> "ChaosExpansion":
        return ChaosExpansion(self.dim, {a: k * c for a, c in self.items()}, self.max_degree)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChaosExpansion):
            return NotImplemented
        return self.dim == other.dim and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        terms = ", ".join(f"{tuple(a)}: {c!r}" for a, c in self.items())
        return f"ChaosExpansion(dim={self.dim}, max_degree={self.max_degree}, {{{terms}}})"

    # numerics -------------------------------------------------------------
    def l2_norm(self) -> float:
        """sqrt(sum |c_alpha|^2 alpha!), the L^2(mu) norm."""
        return math.sqrt(sum(abs(complex(c)) ** 2 * a.factorial() for a, c in self.items()))

    def __call__(self, x):
        return chaos_eval(self, x)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at an (n, dim) array of points, as a complex array of length n."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise DimensionMismatch(f"expected points of shape (n, {self.dim}), got {pts.shape}")
        out = np.zeros(pts.shape[0], dtype=complex)
        if not self._coeffs:
            return out
        tables = [hermite_table(self.axis_degree(), pts[:, i]) for i in range(self.dim)]
        for a, c in self.items():
            term = tables[0][a[0]]
            for i in range(1, self.dim):
                term = term * tables[i][a[i]]
            out += complex(c) * term
        return out

    # serialization --------------------------------------------------------
    def to_record(self) -> dict:
        order = {a: i for i, a in enumerate(multi_indices(self.dim, self.degree))}
        entries = []
        for a in sorted(self._coeffs, key=order.__getitem__):
            c = complex(self._coeffs[a])
            entries.append([list(a), c.real, c.imag])
        return {"dim": self.dim, "max_degree": self.max_degree, "entries": entries}

    @classmethod
    def from_record(cls, record: Mapping) -> "ChaosExpansion":
        coeffs = {}
        for degrees, re, im in record["entries"]:
            coeffs[tuple(degrees)] = complex(re, im) if im else float(re)
        return cls(int(record["dim"]), coeffs, int(record["max_degree"]))

    def to_json(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_json(cls, text: str) -> "ChaosExpansion":
        return cls.from_record(json.loads(text))


# --------------------------------------------------------------------------
# Hermite polynomials

def hermite_eval(n: int, x):
    """Probabilists' Hermite polynomial He_n(x) by three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    h_prev, h = 1.0 + 0.0 * np.asarray(x, dtype=float), np.asarray(x, dtype=float)
    if n == 0:
        return h_prev if np.ndim(x) else float(h_prev)
    for k in range(1, n):
        h_prev, h = h, x * h - k * h_prev
    return h if np.ndim(x) else float(h)


def hermite_table(n: int, x) -> np.ndarray:
    """Rows He_0(x), ..., He_n(x) for a 1-D array x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((n + 1, x.size))
    out[0] = 1.0
    if n >= 1:
        out[1] = x
    for k in range(1, n):
        out[k + 1] = x * out[k] - k * out[k - 1]
    return out


def chaos_eval(phi: ChaosExpansion, x):
    """Value of ``phi`` at one point ``x`` (length ``phi.dim``), or at each row of an (n, dim) array."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        if phi.dim != 1:
            raise DimensionMismatch("scalar point given for a multi-dimensional expansion")
        return complex(phi.evaluate(arr.reshape(1, 1))[0])
    if arr.ndim == 1:
        if arr.size != phi.dim:
            raise DimensionMismatch(f"point of length {arr.size} for dim {phi.dim}")
        return complex(phi.evaluate(arr.reshape(1, -1))[0])
    return phi.evaluate(arr)


# --------------------------------------------------------------------------
# Wick algebra

def wick_product(phi: ChaosExpansion, psi: ChaosExpansion) -> ChaosExpansion:
    """Wick product via He_alpha <> He_beta = He_{alpha+beta} (exact for polynomials)."""
    phi._check_dim(psi)
    out: dict[MultiIndex, object] = {}
    for a, ca in phi.items():
        for b, cb in psi.items():
            g = a + b
            out[g] = out.get(g, 0) + ca * cb
    return ChaosExpansion(phi.dim, out, phi.max_degree + psi.max_degree)


def wick_power(phi: ChaosExpansion, n: int) -> ChaosExpansion:
    out = ChaosExpansion.constant(1, phi.dim)
    for _ in range(n):
        out = wick_product(out, phi)
    return out


def second_quantization(c, phi: ChaosExpansion) -> ChaosExpansion:
    """Gamma(c): multiply the n-th chaos component by c**n (with 0**0 = 1)."""
    powers: dict[int, object] = {}
    out = {}
    for a, ca in phi.items():
        n = a.degree
        if n not in powers:
            powers[n] = c ** n
        out[a] = powers[n] * ca
    return ChaosExpansion(phi.dim, out, phi.max_degree)


def tensor_product(phi: ChaosExpansion, psi: ChaosExpansion) -> ChaosExpansion:
    """phi(x) * psi(y) on R^(d1+d2), the product of expansions in disjoint variables."""
    out = {}
    for a, ca in phi.items():
        for b, cb in psi.items():
            out[tuple(a) + tuple(b)] = ca * cb
    return ChaosExpansion(phi.dim + psi.dim, out, phi.max_degree + psi.max_degree)


# --------------------------------------------------------------------------
# exponential vectors and the S-transform

def _monomial(xi: Sequence, alpha: MultiIndex):
    out = 1
    for z, k in zip(xi, alpha):
        if k:
            out = out * z ** k
    return out


def exponential_chaos(xi: Sequence, max_degree: int) -> ChaosExpansion:
    """Degree-<=N truncation of E_xi = sum xi^{<>n}/n!, coefficients xi^alpha / alpha!.

    The L^2(mu) error of the truncation is ``exponential_tail_bound(xi, N)``.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    xi = list(xi)
    dim = len(xi)
    coeffs = {a: _monomial(xi, a) / a.factorial() for a in multi_indices(dim, max_degree)}
    return ChaosExpansion(dim, coeffs, max_degree)


def exponential_tail_bound(xi: Sequence, max_degree: int) -> float:
    """sqrt(sum_{n>N} s^n/n!) with s = sum |xi_i|^2: the L^2 norm of the discarded tail."""
    s = float(sum(abs(complex(z)) ** 2 for z in xi))
    if s == 0.0:
        return 0.0
    n = max_degree + 1
    term = math.exp(n * math.log(s) - math.lgamma(n + 1))
    total = 0.0
    while term > 1e-300 and (total == 0.0 or term > total * 1e-18):
        total += term
        n += 1
        term *= s / n
    return math.sqrt(total)


def exponential_eval(xi: Sequence, x):
    """exp(<xi, x> - <xi, xi>/2) with the bilinear (unconjugated) pairing."""
    z = np.asarray(xi, dtype=complex)
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1:] != z.shape and not (arr.ndim == 0 and z.size == 1):
        raise DimensionMismatch(f"xi has length {z.size}, x has shape {arr.shape}")
    pairing = arr * z[0] if arr.ndim == 0 else arr @ z
    val = np.exp(pairing - 0.5 * (z @ z))
    return complex(val) if np.ndim(val) == 0 else val


def s_transform(phi: ChaosExpansion, xi: Sequence):
    """(S phi)(xi) = E[phi E_xi] = sum_alpha c_alpha xi^alpha."""
    xi = list(xi)
    if len(xi) != phi.dim:
        raise DimensionMismatch(f"xi has length {len(xi)}, expansion has dim {phi.dim}")
    total = 0
    for a, c in phi.items():
        total = total + c * _monomial(xi, a)
    return total
