"""Exponent algebra: conjugates, admissible (u, v, p, q, r) tuples, sharp Young constants.

Infinite exponents are carried as ``math.inf`` and every formula that meets
one takes its limit explicitly (1/inf -> 0, inf' = 1, Gamma(1/sqrt(inf)) ->
Gamma(0)); no exponent is ever approximated by a large float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ExponentError

INF = math.inf
IDENTITY_TOL = 1e-12


def inv(x: float) -> float:
    """1/x with 1/inf = 0."""
    return 0.0 if math.isinf(x) else 1.0 / x


def conjugate_exponent(k: float, allow_one: bool = False) -> float:
    """k' = k/(k-1); inf -> 1, and 1 -> inf only when ``allow_one`` is set."""
    if math.isinf(k):
        return 1.0
    if k == 1 and allow_one:
        return INF
    if not k > 1:
        raise ExponentError(f"conjugate exponent needs k > 1, got {k}")
    return k / (k - 1.0)


def _close(a: float, b: float, tol: float = IDENTITY_TOL) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def conjugate_pair_residual(u: float, v: float) -> float:
    return inv(u) + inv(v) - 1.0


def full_holder_solve(u: float, v: float, p: float, q: float) -> float:
    """r solving 1/(r-1) = 1/(u(p-1)) + 1/(v(q-1)); the dual form p'/u + q'/v = r' is checked."""
    if u <= 0 or v <= 0 or abs(conjugate_pair_residual(u, v)) > IDENTITY_TOL:
        raise ExponentError(f"(u, v) = ({u}, {v}) is not a conjugate pair")
    if not (p > 1 and q > 1):
        raise ExponentError(f"p and q must exceed 1, got p={p}, q={q}")
    total = inv(u * (p - 1.0)) + inv(v * (q - 1.0))
    r = INF if total == 0 else 1.0 + 1.0 / total
    dual = conjugate_exponent(p) * inv(u) + conjugate_exponent(q) * inv(v)
    if not _close(dual, conjugate_exponent(r)):
        raise ExponentError(f"dual condition failed: p'/u + q'/v = {dual} != r' = {conjugate_exponent(r)}")
    return r


class NelsonExponents(NamedTuple):
    u: float
    v: float
    s_conj: float
    q_young: float


def nelson_exponents(p: float, r: float) -> NelsonExponents:
    """u = (r-1)/(p-1), v = (r-1)/(r-p), s' = r/p and the Young exponent q with 1/r + 1 = 1/p + 1/q.

    The closed forms u = r p'/(p r'), v = q'/(p r') and s' = (r' v)/(r' v - 1)
    are recomputed independently and must agree.  At r = p the tuple is the
    degenerate (u, v, s', q) = (1, inf, 1, 1).
    """
    if not p > 1:
        raise ExponentError(f"Nelson exponents need p > 1, got {p}")
    if math.isinf(r):
        raise ExponentError("Nelson exponents need finite r")
    if r < p:
        raise ExponentError(f"Nelson exponents need r >= p, got p={p}, r={r}")
    if r == p:
        return NelsonExponents(1.0, INF, 1.0, 1.0)
    u = (r - 1.0) / (p - 1.0)
    v = (r - 1.0) / (r - p)
    q = 1.0 / (1.0 / r + 1.0 - 1.0 / p)
    s_conj = r / p
    pc, rc, qc = conjugate_exponent(p), conjugate_exponent(r), conjugate_exponent(q)
    s = rc * v
    checks = {
        "u": (u, r * pc / (p * rc)),
        "v": (v, qc / (p * rc)),
        "s'": (s_conj, s / (s - 1.0)),
    }
    for name, (direct, closed) in checks.items():
        if not _close(direct, closed, 1e-10):
            raise ExponentError(f"Nelson closed form for {name} disagrees: {direct} vs {closed}")
    return NelsonExponents(u, v, s_conj, q)


def young_factor_sq(k: float) -> float:
    """C_k^2 = k^{1/k} / k'^{1/k'}, with C_1 = C_inf = 1."""
    if k == 1 or math.isinf(k):
        return 1.0
    kc = conjugate_exponent(k)
    return k ** (1.0 / k) / kc ** (1.0 / kc)


def sharp_young_constant(p: float, q: float, r: float, d: int = 1) -> float:
    """Best constant (C_p C_q / C_r)^d in ||f*g||_r <= C ||f||_p ||g||_q."""
    if min(p, q, r) < 1:
        raise ExponentError("Young exponents must be >= 1")
    if abs(inv(p) + inv(q) - inv(r) - 1.0) > IDENTITY_TOL:
        raise ExponentError(f"1/p + 1/q != 1/r + 1 for (p, q, r) = ({p}, {q}, {r})")
    ratio_sq = young_factor_sq(p) * young_factor_sq(q) / young_factor_sq(r)
    return math.sqrt(ratio_sq) ** d


@dataclass(frozen=True)
class ExponentTuple:
    """Admissible exponents for the Wick inequalities.

    ``1/u + 1/v = 1`` and ``1/(u(p-1)) + 1/(v(q-1)) = 1/(r-1)`` must hold.
    ``p = q = r`` (the Hoelder case, any p in [1, inf]) always satisfies the
    second condition, ``q = inf`` is the Nelson case, and ``(u, v) = (1, inf)``
    is its r = p endpoint.
    """

    u: float
    v: float
    p: float
    q: float
    r: float
    p_conj: float = field(init=False)
    q_conj: float = field(init=False)
    r_conj: float = field(init=False)

    def __post_init__(self):
        u, v, p, q, r = self.u, self.v, self.p, self.q, self.r
        if not (u >= 1 and v >= 1):
            raise ExponentError(f"u, v must be >= 1, got ({u}, {v})")
        if abs(conjugate_pair_residual(u, v)) > IDENTITY_TOL:
            raise ExponentError(f"1/u + 1/v = {inv(u) + inv(v)} != 1")
        if min(p, q, r) < 1:
            raise ExponentError(f"p, q, r must be >= 1, got ({p}, {q}, {r})")
        holder = p == q == r
        if not holder:
            if min(p, q, r) <= 1:
                raise ExponentError("p, q, r must exceed 1 outside the p = q = r case")
            if abs(self.cond1_residual()) > IDENTITY_TOL:
                raise ExponentError(
                    f"1/(u(p-1)) + 1/(v(q-1)) != 1/(r-1) for {self.astuple()}")
            lo, hi = min(p, q), max(p, q)
            if not (lo * (1 - IDENTITY_TOL) <= r <= hi * (1 + IDENTITY_TOL)):
                raise ExponentError(f"r = {r} not between p = {p} and q = {q}")
        for name, k in (("p_conj", p), ("q_conj", q), ("r_conj", r)):
            object.__setattr__(self, name, conjugate_exponent(k, allow_one=True))
        if not holder and abs(self.cond2_residual()) > IDENTITY_TOL * max(1.0, self.r_conj):
            raise ExponentError(f"p'/u + q'/v != r' for {self.astuple()}")

    # constructors
    @classmethod
    def full(cls, u: float, p: float, q: float) -> "ExponentTuple":
        v = conjugate_exponent(u)
        return cls(u, v, p, q, full_holder_solve(u, v, p, q))

    @classmethod
    def holder(cls, u: float, p: float) -> "ExponentTuple":
        return cls(u, conjugate_exponent(u), p, p, p)

    @classmethod
    def nelson(cls, p: float, r: float) -> "ExponentTuple":
        ne = nelson_exponents(p, r)
        return cls(ne.u, ne.v, p, INF, r)

    # views
    def astuple(self) -> tuple[float, float, float, float, float]:
        return (self.u, self.v, self.p, self.q, self.r)

    @property
    def is_nelson(self) -> bool:
        return math.isinf(self.q)

    @property
    def finite(self) -> bool:
        return not any(math.isinf(x) for x in self.astuple())

    @property
    def gamma_args(self) -> tuple[float, float]:
        """(1/sqrt(u), 1/sqrt(v)), the second-quantization factors."""
        return (math.sqrt(inv(self.u)), math.sqrt(inv(self.v)))

    def cond1_residual(self) -> float:
        lhs = inv(self.u * (self.p - 1.0)) + inv(self.v * (self.q - 1.0))
        return lhs - inv(self.r - 1.0)

    def cond2_residual(self) -> float:
        return self.p_conj * inv(self.u) + self.q_conj * inv(self.v) - self.r_conj


@dataclass(frozen=True)
class LiebParams:
    """alpha = q'/(v sqrt(p'q'r')), beta = r'/sqrt(p'q'r'), gamma = p'/(u sqrt(p'q'r'))."""

    alpha: float
    beta: float
    gamma: float

    @classmethod
    def from_tuple(cls, e: ExponentTuple) -> "LiebParams":
        if min(e.p, e.q, e.r) <= 1:
            raise ExponentError("Lieb parameters need p, q, r > 1")
        root = math.sqrt(e.p_conj * e.q_conj * e.r_conj)
        return cls(e.q_conj * inv(e.v) / root, e.r_conj / root, e.p_conj * inv(e.u) / root)

    def sum_residual(self) -> float:
        return self.alpha + self.gamma - self.beta

    def j1_residual(self, e: ExponentTuple) -> float:
        return inv(e.p * e.v) + inv(e.q * e.u) + self.beta ** 2 - 1.0

    def j2_residual(self, e: ExponentTuple) -> float:
        lhs = (self.gamma ** 2 * inv(e.p * e.v) + self.alpha ** 2 * inv(e.q * e.u)
               + inv(e.p * e.q * e.u * e.v))
        return lhs - inv(e.u * e.v * e.r)
