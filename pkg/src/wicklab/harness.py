"""Run configuration, seeded random fixtures, and orchestration of every check.

Random fixtures come from numpy's PCG64 bit generator (``default_rng``),
seeded through ``SeedSequence`` with the run seed followed by small integer
keys naming the section and pair.  Output rows carry no timing, so equal
configurations give byte-identical artifacts.
"""

from __future__ import annotations

import csv
import dataclasses
import functools
import hashlib
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

import numpy as np
import scipy

from . import __version__
from . import checks as ck
from .chaos import ChaosExpansion, exponential_chaos, multi_indices
from .errors import WickLabError
from .exponents import INF, ExponentTuple, conjugate_exponent, full_holder_solve, sharp_young_constant
from .numerics import MAX_ORDER, GridFunction, GridSpec, gauss_hermite_rule

SECTIONS = ("conv_wick", "holder", "nelson", "full_holder", "constants", "young", "lieb",
            "witness", "minimality", "tensorization")
MODES = ("verify", "sweep", "oracle")
FORMATS = ("csv", "json")
MAX_DEGREE = 16
CONFIG_DIR = Path(__file__).with_name("configs")


class ConfigError(WickLabError, ValueError):
    pass


def parse_number(x: Any) -> float:
    """A float from a JSON value: numbers, "inf", or a fraction string such as "4/3"."""
    if isinstance(x, bool):
        raise ConfigError(f"not a number: {x!r}")
    if isinstance(x, (int, float)):
        return float(x)
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "infinity", "+inf"):
            return INF
        try:
            return float(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"not a number: {x!r}") from exc
    raise ConfigError(f"not a number: {x!r}")


def _numbers(xs: Iterable[Any]) -> tuple[float, ...]:
    return tuple(parse_number(x) for x in xs)


def _pairs(xs: Iterable[Sequence[Any]]) -> tuple[tuple[float, float], ...]:
    out = []
    for pair in xs:
        if len(pair) != 2:
            raise ConfigError(f"expected a pair, got {pair!r}")
        out.append((parse_number(pair[0]), parse_number(pair[1])))
    return tuple(out)


def _triples(xs: Iterable[Sequence[Any]]) -> tuple[tuple[float, float, float], ...]:
    out = []
    for t in xs:
        if len(t) != 3:
            raise ConfigError(f"expected a triple, got {t!r}")
        out.append(tuple(parse_number(x) for x in t))
    return tuple(out)


def _dump(x: Any) -> Any:
    """JSON-safe form: infinities become "inf", tuples become lists."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, (tuple, list)):
        return [_dump(v) for v in x]
    return x


_CONVERTERS: dict[str, Callable[[Any], Any]] = {
    "exponent_u": _numbers, "exponent_p": _numbers, "exponent_q": _numbers,
    "holder_p": _numbers, "holder_uv": _pairs, "nelson_pr": _pairs, "conv_uv": _pairs,
    "minimality_uv": _pairs, "tensor_upq": _triples, "young_pqr": _triples,
    "sections": tuple,
}


@dataclass(frozen=True)
class RunConfig:
    """Every knob of a run.  ``seed`` determines all random fixtures."""

    mode: str = "verify"
    seed: int = 20250101
    dim: int = 1
    degree: int = 6
    decay: float = 0.5
    pairs: int = 200
    order: int = 64
    extent: float = 12.0
    step: float = 0.01
    slack: float = ck.SLACK
    identity_tol: float = ck.GRID_TOL
    arith_tol: float = ck.ARITH_TOL
    workers: int = 1
    output: str | None = None
    format: str = "csv"
    exponent_u: tuple[float, ...] = (4 / 3, 2.0, 4.0)
    exponent_p: tuple[float, ...] = (1.5, 2.0, 3.0, 4.0)
    exponent_q: tuple[float, ...] = (1.5, 2.0, 3.0, 4.0)
    holder_p: tuple[float, ...] = (1.0, 2.0, 3.0, INF)
    holder_uv: tuple[tuple[float, float], ...] = ((2.0, 2.0), (4.0, 4 / 3))
    nelson_pr: tuple[tuple[float, float], ...] = ((2.0, 4.0), (1.5, 3.0), (2.0, 2.0))
    conv_uv: tuple[tuple[float, float], ...] = ((2.0, 2.0), (3.0, 1.5), (4.0, 4 / 3))
    young_pqr: tuple[tuple[float, float, float], ...] = (
        (4 / 3, 4 / 3, 2.0), (1.5, 1.5, 3.0), (2.0, 2.0, INF), (1.0, 2.0, 2.0), (1.2, 1.6, 24 / 11))
    minimality_uv: tuple[tuple[float, float], ...] = (
        (1.5, 1.5), (1.9, 1.9), (1.2, 3.0), (1.05, 10.0), (2.0, 1.9), (2.0, 2.0), (3.0, 1.5))
    minimality_p: float = 2.0
    minimality_trials: int = 500
    tensor_upq: tuple[tuple[float, float, float], ...] = ((2.0, 2.0, 4.0), (2.0, 3.0, 3.0),
                                                          (4 / 3, 1.5, 4.0))
    sections: tuple[str, ...] = SECTIONS

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2 ** 64):
            raise ConfigError("seed must be an integer in [0, 2^64)")
        if self.dim not in (1, 2):
            raise ConfigError("dim must be 1 or 2")
        if not 0 <= self.degree <= MAX_DEGREE:
            raise ConfigError(f"degree must be in [0, {MAX_DEGREE}]")
        if not 1 <= self.order <= MAX_ORDER:
            raise ConfigError(f"order must be in [1, {MAX_ORDER}]")
        if not 0 < self.decay < 1:
            raise ConfigError("decay must lie in (0, 1)")
        if self.pairs < 1 or self.workers < 1 or self.minimality_trials < 1:
            raise ConfigError("pairs, workers and minimality_trials must be positive")
        if min(self.slack, self.identity_tol, self.arith_tol) < 0:
            raise ConfigError("tolerances must be non-negative")
        unknown = set(self.sections) - set(SECTIONS)
        if unknown:
            raise ConfigError(f"unknown sections {sorted(unknown)}")
        GridSpec(1, self.extent, self.step)

    # (de)serialisation ------------------------------------------------------
    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        kwargs = {}
        for key, value in data.items():
            conv = _CONVERTERS.get(key)
            if conv is not None:
                value = conv(value)
            elif key in ("decay", "extent", "step", "slack", "identity_tol", "arith_tol",
                         "minimality_p"):
                value = parse_number(value)
            kwargs[key] = value
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    @classmethod
    def pinned(cls, name: str = "verify") -> "RunConfig":
        return cls.load(CONFIG_DIR / f"{name}.json")

    def to_dict(self) -> dict:
        return {f.name: _dump(getattr(self, f.name)) for f in dataclasses.fields(self)}

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form, excluding output-only fields."""
        data = self.to_dict()
        for key in ("output", "format", "workers"):
            data.pop(key)
        blob = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)

    @property
    def grid(self) -> GridSpec:
        return GridSpec(1, self.extent, self.step)


# --------------------------------------------------------------------------
# seeded fixtures

SECTION_KEYS = {name: i + 1 for i, name in enumerate(SECTIONS)}


def derive_seed(seed: int, *keys: int) -> int:
    """A 64-bit seed determined by ``seed`` and a path of non-negative integer keys."""
    state = np.random.SeedSequence([seed, *keys]).generate_state(2, np.uint32)
    return int(state[0]) | (int(state[1]) << 32)


def random_chaos(seed: int, d: int, N: int, decay: float = 0.5,
                 complex_coeffs: bool = False) -> ChaosExpansion:
    """Random expansion with c_alpha = z_alpha decay^{|alpha|} / sqrt(alpha!), z standard normal.

    z is drawn from PCG64 seeded with ``seed`` in graded multi-index order
    (real parts for every index first, then imaginary parts).
    """
    if d not in (1, 2) or not 0 <= N <= MAX_DEGREE or not 0 < decay < 1:
        raise ConfigError("random_chaos needs d in {1, 2}, 0 <= N <= 16, 0 < decay < 1")
    rng = np.random.default_rng(seed)
    idx = multi_indices(d, N)
    z = rng.standard_normal(len(idx)).astype(complex)
    if complex_coeffs:
        z += 1j * rng.standard_normal(len(idx))
    coeffs = {a: complex(z[i]) * decay ** a.degree / math.sqrt(a.factorial())
              for i, a in enumerate(idx)}
    return ChaosExpansion(d, coeffs, max_degree=N)


@functools.lru_cache(maxsize=32)
def random_pairs(seed: int, section: str, count: int, d: int, N: int,
                 decay: float) -> tuple[tuple[ChaosExpansion, ChaosExpansion], ...]:
    """The seeded pairs shared by every exponent point of a section; odd pairs are complex."""
    key = SECTION_KEYS[section]
    return tuple((random_chaos(derive_seed(seed, key, k, 0), d, N, decay, k % 2 == 1),
                  random_chaos(derive_seed(seed, key, k, 1), d, N, decay, k % 2 == 1))
                 for k in range(count))


# --------------------------------------------------------------------------
# conv-Wick fixtures

def _poly(*coeffs) -> ChaosExpansion:
    return ChaosExpansion(1, {(n,): c for n, c in enumerate(coeffs)})


CONV_FIXTURES: dict[str, Callable[[], tuple[ChaosExpansion, ChaosExpansion]]] = {
    "const_one": lambda: (ChaosExpansion.constant(1), ChaosExpansion.constant(1)),
    "const_complex": lambda: (ChaosExpansion.constant(2.0), ChaosExpansion.constant(-0.5 + 1j)),
    "exp_0.5_-0.3": lambda: (exponential_chaos([0.5], 30), exponential_chaos([-0.3], 30)),
    "exp_1_1": lambda: (exponential_chaos([1.0], 40), exponential_chaos([1.0], 40)),
    "exp_-1_0.7": lambda: (exponential_chaos([-1.0], 40), exponential_chaos([0.7], 40)),
    "exp_0.8i_0.4": lambda: (exponential_chaos([0.8j], 40), exponential_chaos([0.4], 30)),
    "He2_He1": lambda: (ChaosExpansion.basis((2,)), ChaosExpansion.basis((1,))),
    "He4_He3": lambda: (ChaosExpansion.basis((4,)), ChaosExpansion.basis((3,))),
    "He4_He4": lambda: (ChaosExpansion.basis((4,)), ChaosExpansion.basis((4,))),
    "poly_mixed": lambda: (_poly(1, 0.5, 0, -0.25), _poly(0, 0, 1, 0, 0.1j)),
}


# --------------------------------------------------------------------------
# result container

@dataclass
class SweepResult:
    rows: list[ck.CheckReport]
    config: RunConfig
    wall_time: float = 0.0
    metadata: dict = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> list[ck.CheckReport]:
        return [r for r in self.rows if not r.passed]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(ck.CSV_COLUMNS)
        for r in self.rows:
            writer.writerow(r.row())
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {"metadata": self.metadata, "rows": [r.as_dict() for r in self.rows]}
        return json.dumps(doc, indent=2) + "\n"

    def render(self, fmt: str | None = None) -> str:
        fmt = fmt or self.config.format
        return self.to_csv() if fmt == "csv" else self.to_json()

    def write(self, path: str | Path, fmt: str | None = None) -> None:
        Path(path).write_text(self.render(fmt), encoding="utf-8")


def _metadata(cfg: RunConfig, rows: list[ck.CheckReport]) -> dict:
    return {
        "mode": cfg.mode,
        "config_sha256": cfg.digest(),
        "versions": {"wicklab": __version__, "numpy": np.__version__, "scipy": scipy.__version__},
        "rows": len(rows),
        "passed": sum(r.passed for r in rows),
        "rng": "numpy PCG64 via SeedSequence([seed, section, pair, side])",
    }


# --------------------------------------------------------------------------
# tasks

Task = tuple[int, int, str, tuple]  # (section rank, index, task name, args)


def _worst(reports: Sequence[ck.CheckReport], label: str) -> ck.CheckReport:
    k, worst = max(enumerate(reports), key=lambda kr: (kr[1].ratio, -kr[0]))
    failed = sum(not r.passed for r in reports)
    note = f"worst of {len(reports)} {label} (pair {k}); {failed} failing"
    if worst.note:
        note += "; " + worst.note
    return dataclasses.replace(worst, passed=failed == 0, note=note)


def _rule(cfg: RunConfig):
    return gauss_hermite_rule(cfg.order)


def _bank(cfg: RunConfig, section: str):
    return random_pairs(cfg.seed, section, cfg.pairs, cfg.dim, cfg.degree, cfg.decay)


def task_conv_wick(cfg: RunConfig, name: str, u: float, v: float) -> list[ck.CheckReport]:
    phi, psi = CONV_FIXTURES[name]()
    rep = ck.verify_conv_wick_identity(phi, psi, u, v, cfg.grid, cfg.identity_tol)
    return [dataclasses.replace(rep, note=f"fixture={name}; {rep.note}")]


def task_holder(cfg: RunConfig, p: float, u: float, v: float) -> list[ck.CheckReport]:
    rule = _rule(cfg)
    reps = [ck.holder_wick_ratio(phi, psi, p, u, v, rule, cfg.slack)
            for phi, psi in _bank(cfg, "holder")]
    out = [_worst(reps, "seeded pairs")]
    phi, psi = _bank(cfg, "holder")[0]
    e = ExponentTuple(u, v, p, p, p)
    a, b = ck.full_holder_ratio(phi, psi, e, rule).ratio, reps[0].ratio
    out.append(ck.CheckReport.identity("holder_specialization", e.astuple(), a, b, abs(a - b),
                                       cfg.arith_tol, "full_holder at p=q=r vs holder, pair 0"))
    return out


def task_nelson(cfg: RunConfig, p: float, r: float) -> list[ck.CheckReport]:
    rule = _rule(cfg)
    one = ChaosExpansion.constant(1, cfg.dim)
    pairs = [(phi, psi if k % 2 == 0 else one) for k, (phi, psi) in enumerate(_bank(cfg, "nelson"))]
    reps = [ck.nelson_ratio(phi, psi, p, r, rule, cfg.slack) for phi, psi in pairs]
    out = [_worst(reps, "seeded pairs, psi = 1 on odd pairs")]
    e = ExponentTuple.nelson(p, r)
    phi, psi = pairs[0]
    a, b = ck.full_holder_ratio(phi, psi, e, rule).ratio, reps[0].ratio
    out.append(ck.CheckReport.identity("nelson_specialization", e.astuple(), a, b, abs(a - b),
                                       cfg.identity_tol, "full_holder at q=inf vs nelson, pair 0"))
    xi = np.zeros(cfg.dim)
    xi[0] = 0.8
    w = ck.nelson_ratio(exponential_chaos(xi, 40), one, p, r, rule)
    out.append(ck.CheckReport.identity("nelson_witness", w.exponents, w.lhs, w.rhs,
                                       abs(w.ratio - 1.0), cfg.identity_tol,
                                       "phi = E_0.8, psi = 1"))
    return out


def _full_point(cfg: RunConfig, u: float, p: float, q: float) -> ExponentTuple:
    v = conjugate_exponent(u)
    return ExponentTuple(u, v, p, q, full_holder_solve(u, v, p, q))


def task_full_holder(cfg: RunConfig, u: float, p: float, q: float) -> list[ck.CheckReport]:
    rule = _rule(cfg)
    e = _full_point(cfg, u, p, q)
    bank = _bank(cfg, "full_holder")
    if e.is_nelson:
        reps = [ck.nelson_ratio(phi, psi, e.p, e.r, rule, cfg.slack) for phi, psi in bank]
        rep = _worst(reps, "seeded pairs")
        return [dataclasses.replace(rep, check="full_holder", note="nelson mode (q = inf); " + rep.note)]
    reps = [ck.full_holder_ratio(phi, psi, e, rule, cfg.slack) for phi, psi in bank]
    return [_worst(reps, "seeded pairs")]


def task_constants(cfg: RunConfig, u: float, p: float, q: float) -> list[ck.CheckReport]:
    return ck.constants_identity_suite(_full_point(cfg, u, p, q), cfg.arith_tol)


def task_constants_nelson(cfg: RunConfig, p: float, r: float) -> list[ck.CheckReport]:
    return ck.constants_identity_suite(ExponentTuple.nelson(p, r), cfg.arith_tol)


def _young_fixtures(grid: GridSpec) -> dict[str, tuple[GridFunction, GridFunction]]:
    x = grid.axis()
    gauss = lambda a: GridFunction(grid, np.exp(-0.5 * a * x * x))  # noqa: E731
    tent = GridFunction(grid, np.clip(1.0 - np.abs(x), 0.0, None))
    box = GridFunction(grid, (np.abs(x) <= 2.0).astype(float))
    return {"gauss_1_2": (gauss(1.0), gauss(2.0)), "gauss_1_1": (gauss(1.0), gauss(1.0)),
            "tent_box": (tent, box)}


def task_young(cfg: RunConfig, p: float, q: float, r: float) -> list[ck.CheckReport]:
    grid = GridSpec(1, 12.0, 0.01)
    out = []
    for name, (f, g) in _young_fixtures(grid).items():
        rep = ck.young_inequality_check(f, g, p, q, r, cfg.identity_tol)
        out.append(dataclasses.replace(rep, note=f"fixture={name}; {rep.note}"))
    return out


def task_young_constants(cfg: RunConfig) -> list[ck.CheckReport]:
    nan = math.nan
    out = []
    for p, q, r in ((2.0, 2.0, INF), (1.0, 3.0, 3.0), (1.0, 1.0, 1.0)):
        C = sharp_young_constant(p, q, r)
        out.append(ck.CheckReport.identity("young_constant", (nan, nan, p, q, r), C, 1.0,
                                           abs(C - 1.0), 0.0, "exact"))
    C = sharp_young_constant(4 / 3, 4 / 3, 2.0)
    ref = (4 / 3) ** 0.75 / 4 ** 0.25
    out.append(ck.CheckReport.identity("young_constant", (nan, nan, 4 / 3, 4 / 3, 2.0), C, 0.877383,
                                       abs(C - 0.877383), 1e-6,
                                       f"(4/3)^(3/4)/4^(1/4) = {ref!r}"))
    return out


def task_lieb(cfg: RunConfig, u: float, p: float, q: float) -> list[ck.CheckReport]:
    return [ck.lieb_search_report(_full_point(cfg, u, p, q), cfg.slack)]


def task_witness(cfg: RunConfig, e_args: tuple, perturb: bool) -> list[ck.CheckReport]:
    e = ExponentTuple(*e_args)
    rule = _rule(cfg)
    out = [ck.witness_report(e, cfg.dim, rule=rule, tol=cfg.identity_tol)]
    if perturb:
        rep = ck.witness_report(e, cfg.dim, rule=rule, eta_factor=2.0)
        out.append(dataclasses.replace(rep, passed=bool(rep.ratio < 1.0 - 1e-3),
                                       note="eta <- 2 eta; must fall below 1 - 1e-3"))
        rep = ck.witness_report(e, cfg.dim, scale=2.5, rule=rule, tol=cfg.identity_tol)
        out.append(dataclasses.replace(rep, check="witness_scaled", note="xi, eta scaled by 2.5"))
    return out


def task_minimality(cfg: RunConfig, u: float, v: float) -> list[ck.CheckReport]:
    p = cfg.minimality_p
    if 1.0 / u + 1.0 / v > 1.0:
        return [ck.minimality_report(u, v, p)]
    worst, tol = 0.0, cfg.arith_tol
    for t in ck.MINIMALITY_LADDER:
        xi, eta = ck.minimality_witness(u, v, t)
        worst = max(worst, ck.minimality_pair_ratio(u, v, p, xi, eta))
        # the log-ratio is a difference of terms of size (p-1)(xi^2 + eta^2)
        tol = max(tol, cfg.arith_tol * (p - 1.0) * (xi * xi + eta * eta))
    return [ck.CheckReport("minimality_boundary", u, v, p, p, p, lhs=worst, rhs=1.0, ratio=worst,
                           residual=max(0.0, worst - 1.0), passed=worst <= 1.0 + tol,
                           note=f"1/u + 1/v <= 1: no ladder scale may violate the bound; tol {tol:.1e}")]


def task_minimality_trials(cfg: RunConfig) -> list[ck.CheckReport]:
    seed = derive_seed(cfg.seed, SECTION_KEYS["minimality"])
    return [ck.false_counterexample_trials(seed, cfg.minimality_trials)]


def task_tensorization(cfg: RunConfig, u: float, p: float, q: float, fixture: str) -> list[ck.CheckReport]:
    e = _full_point(cfg, u, p, q)
    if fixture == "constants":
        phi = psi = ChaosExpansion.constant(1)
    elif fixture == "witness":
        xi, eta = ck.sharpness_witness(e, 1, 0.6)
        n = ck.witness_degree(xi, eta)
        phi, psi = exponential_chaos(xi, n), exponential_chaos(eta, n)
    else:
        n = ck.witness_degree([0.3], [-0.5])
        phi, psi = exponential_chaos([0.3], n), exponential_chaos([-0.5], n)
    rep = ck.tensorization_check(phi, psi, e, gauss_hermite_rule(min(cfg.order, 48)))
    return [dataclasses.replace(rep, note=f"fixture={fixture}; {rep.note}")]


TASKS: dict[str, Callable[..., list[ck.CheckReport]]] = {
    "conv_wick": task_conv_wick, "holder": task_holder, "nelson": task_nelson,
    "full_holder": task_full_holder, "constants": task_constants,
    "constants_nelson": task_constants_nelson, "young": task_young,
    "young_constants": task_young_constants, "lieb": task_lieb, "witness": task_witness,
    "minimality": task_minimality, "minimality_trials": task_minimality_trials,
    "tensorization": task_tensorization,
}


def _exps_from_args(name: str, args: tuple) -> tuple[float, ...]:
    nan = math.nan
    try:
        if name in ("holder",):
            p, u, v = args
            return (u, v, p, p, p)
        if name in ("nelson", "constants_nelson"):
            p, r = args
            return (nan, nan, p, INF, r)
        if name in ("full_holder", "constants", "lieb", "tensorization"):
            u, p, q = args[:3]
            return (u, nan, p, q, nan)
        if name == "conv_wick":
            return (args[1], args[2], nan, nan, nan)
        if name == "minimality":
            return (args[0], args[1], nan, nan, nan)
        if name == "witness":
            return tuple(args[0])
    except (TypeError, ValueError):
        pass
    return (nan,) * 5


def _run_task(job: tuple[RunConfig, Task]) -> list[tuple[int, int, int, ck.CheckReport]]:
    cfg, (rank, index, name, args) = job
    try:
        reports = TASKS[name](cfg, *args)
    except (WickLabError, ValueError, ArithmeticError) as exc:
        reports = [ck.CheckReport.failure(name, _exps_from_args(name, args),
                                          f"{type(exc).__name__}: {exc}")]
    return [(rank, index, sub, rep) for sub, rep in enumerate(reports)]


def _grid_points(cfg: RunConfig) -> list[tuple[float, float, float]]:
    return [(u, p, q) for u in cfg.exponent_u for p in cfg.exponent_p for q in cfg.exponent_q]


def verify_tasks(cfg: RunConfig) -> list[Task]:
    """Task list in emission order."""
    tasks: list[Task] = []

    def add(section: str, name: str, args: tuple) -> None:
        rank = SECTIONS.index(section)
        tasks.append((rank, sum(t[0] == rank for t in tasks), name, args))

    for section in cfg.sections:
        if section == "conv_wick":
            for u, v in cfg.conv_uv:
                for fixture in CONV_FIXTURES:
                    add(section, "conv_wick", (fixture, u, v))
        elif section == "holder":
            for u, v in cfg.holder_uv:
                for p in cfg.holder_p:
                    add(section, "holder", (p, u, v))
        elif section == "nelson":
            for p, r in cfg.nelson_pr:
                add(section, "nelson", (p, r))
        elif section == "full_holder":
            for point in _grid_points(cfg):
                add(section, "full_holder", point)
        elif section == "constants":
            for point in _grid_points(cfg):
                add(section, "constants", point)
            for p, r in cfg.nelson_pr:
                add(section, "constants_nelson", (p, r))
        elif section == "young":
            add(section, "young_constants", ())
            for pqr in cfg.young_pqr:
                add(section, "young", pqr)
        elif section == "lieb":
            for point in _grid_points(cfg):
                add(section, "lieb", point)
        elif section == "witness":
            for i, (u, p, q) in enumerate(_grid_points(cfg)):
                try:
                    e_args = _full_point(cfg, u, p, q).astuple()
                except WickLabError:
                    e_args = (u, math.nan, p, q, math.nan)
                add(section, "witness", (e_args, i == 0))
            for u, v in cfg.holder_uv:
                for p in cfg.holder_p:
                    add(section, "witness", ((u, v, p, p, p), False))
            for p, r in cfg.nelson_pr:
                add(section, "witness", (ExponentTuple.nelson(p, r).astuple(), False))
        elif section == "minimality":
            for u, v in cfg.minimality_uv:
                add(section, "minimality", (u, v))
            add(section, "minimality_trials", ())
        elif section == "tensorization":
            for point in cfg.tensor_upq:
                for fixture in ("constants", "witness", "exponentials"):
                    add(section, "tensorization", (*point, fixture))
    return tasks


def sweep_tasks(cfg: RunConfig) -> list[Task]:
    tasks: list[Task] = []
    for i, point in enumerate(_grid_points(cfg)):
        tasks.append((0, i, "full_holder", point))
        tasks.append((1, i, "lieb", point))
    return tasks


def execute(cfg: RunConfig, tasks: list[Task]) -> SweepResult:
    """Run tasks serially or on a process pool; rows are sorted by (section, index)."""
    start = time.perf_counter()
    jobs = [(cfg, t) for t in tasks]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_run_task, jobs))
    else:
        chunks = [_run_task(job) for job in jobs]
    keyed = sorted((item for chunk in chunks for item in chunk), key=lambda it: it[:3])
    rows = [rep for *_, rep in keyed]
    return SweepResult(rows, cfg, time.perf_counter() - start, _metadata(cfg, rows))


def run_verify(cfg: RunConfig | None = None) -> SweepResult:
    cfg = cfg or RunConfig.pinned("verify")
    return execute(cfg, verify_tasks(cfg))


def run_sweep(cfg: RunConfig) -> SweepResult:
    """full_holder (Nelson mode where q = inf) and Lieb search rows for every grid point."""
    return execute(cfg, sweep_tasks(cfg))
