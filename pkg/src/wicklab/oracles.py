"""Single-shot oracle comparisons, each pitting a library routine against an independent route."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .chaos import (ChaosExpansion, exponential_chaos, exponential_eval, hermite_table,
                    multi_indices, s_transform, wick_product)
from .numerics import (GridFunction, GridSpec, convolve_normalized, gauss_hermite_rule,
                       lp_norm_gaussian, polynomial_lp_norm, wick_by_projection)


@dataclass(frozen=True)
class OracleResult:
    name: str
    lines: tuple[str, ...]
    error: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tol)

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        body = "\n".join(self.lines)
        return f"{body}\n{status} {self.name}: max error {self.error:.3e} (tol {self.tol:.0e})"


def _coeff_diff(phi: ChaosExpansion, oracle: dict) -> float:
    keys = set(phi.coeffs) | set(oracle)
    return max((abs(complex(phi[k]) - complex(oracle.get(k, 0))) for k in keys), default=0.0)


def wick_x_x() -> OracleResult:
    x = ChaosExpansion.basis((1,))
    lib = wick_product(x, x)
    proj = wick_by_projection(x, x, gauss_hermite_rule(16))
    lines = (f"wick_product(He_1, He_1) = {dict(lib.items())}",
             f"P_2(x * x) by quadrature = { {tuple(k): v for k, v in proj.items()} }")
    return OracleResult("wick-x-x", lines, _coeff_diff(lib, proj), 1e-12)


def wick_pairs() -> OracleResult:
    """All Hermite pairs of total degree <= 4 in d = 1, 2 against the projection definition."""
    worst, count = 0.0, 0
    for d in (1, 2):
        rule = gauss_hermite_rule(16)
        basis = [ChaosExpansion.basis(a) for a in multi_indices(d, 4)]
        for f in basis:
            for g in basis:
                worst = max(worst, _coeff_diff(wick_product(f, g), wick_by_projection(f, g, rule)))
                count += 1
    return OracleResult("wick-pairs", (f"{count} pairs checked",), worst, 1e-8)


def hermite_orthogonality(order: int = 20) -> OracleResult:
    rule = gauss_hermite_rule(order)
    table = hermite_table(order - 1, rule.nodes)
    gram = (table * rule.weights) @ table.T
    fact = np.array([math.factorial(j) for j in range(order)], dtype=float)
    target = np.diag(fact)
    scale = np.sqrt(np.outer(fact, fact))
    err = float(np.abs((gram - target) / scale).max())
    return OracleResult("hermite-orthogonality",
                        (f"order {order}: E[He_j He_k] vs delta_jk j!, relative to sqrt(j! k!)",
                         f"E[He_5^2] = {gram[5, 5]!r}"), err, 1e-9)


def exponential_norm() -> OracleResult:
    phi = exponential_chaos([1.0], 40)
    vals = [lp_norm_gaussian(phi, 3, gauss_hermite_rule(n)) for n in (64, 128)]
    split = polynomial_lp_norm(phi, 3)
    lines = tuple(f"||E_1||_3 by order-{n} quadrature = {v!r}" for n, v in zip((64, 128), vals))
    lines += (f"||E_1||_3 by root-split integration = {split!r}", f"closed form e = {math.e!r}")
    err = max(abs(v - math.e) for v in (*vals, split)) / math.e
    return OracleResult("exp-norm", lines, err, 1e-8)


def s_transform_oracle() -> OracleResult:
    worst = 0.0
    rule = gauss_hermite_rule(80)
    pts = rule.nodes[:, None]
    for xi, eta in ((0.5, 1.0), (-1.5, 2.0), (2.0, 2.0), (1j, 0.7)):
        lib = s_transform(exponential_chaos([eta], 40), [xi])
        quad = np.sum(rule.weights * exponential_eval([eta], pts) * exponential_eval([xi], pts))
        closed = np.exp(xi * eta)
        worst = max(worst, abs(lib - closed) / abs(closed), abs(quad - closed) / abs(closed))
    return OracleResult("s-transform", ("S(E_eta)(xi) vs E[E_eta E_xi] vs exp(xi eta)",), worst, 1e-10)


def gauss_convolution() -> OracleResult:
    spec = GridSpec(1, 24.0, 0.01)
    x = spec.axis()
    f = GridFunction(spec, np.exp(-x * x / 4))
    g = GridFunction(spec, np.exp(-x * x / 6))
    out = convolve_normalized(f, g).samples.real
    # (2 pi)^{-1/2} int e^{-(x-y)^2/(2a)} e^{-y^2/(2b)} dy = sqrt(ab/(a+b)) e^{-x^2/(2(a+b))}
    exact = math.sqrt(6.0 / 5.0) * np.exp(-x * x / 10)
    err = float(np.abs(out - exact).max())
    return OracleResult("gauss-conv", ("variances 2 and 3 -> variance 5",), err, 1e-8)


def quadrature_table(order: int = 8) -> OracleResult:
    rule = gauss_hermite_rule(order)
    moments = [float(np.sum(rule.weights * rule.nodes ** k)) for k in range(2 * order)]
    exact = [0.0 if k % 2 else float(math.prod(range(k - 1, 0, -2))) for k in range(2 * order)]
    err = max(abs(m - e) / max(1.0, e) for m, e in zip(moments, exact))
    return OracleResult("quadrature-table", (rule.table().rstrip(),), err, 1e-10)


ORACLES: dict[str, Callable[[], OracleResult]] = {
    "wick-x-x": wick_x_x,
    "wick-pairs": wick_pairs,
    "hermite-orthogonality": hermite_orthogonality,
    "exp-norm": exponential_norm,
    "s-transform": s_transform_oracle,
    "gauss-conv": gauss_convolution,
    "quadrature-table": quadrature_table,
}
