import json
import math

import pytest

from wicklab import ChaosExpansion
from wicklab.harness import (CONV_FIXTURES, SECTIONS, ConfigError, RunConfig, derive_seed,
                             parse_number, random_chaos, random_pairs, run_sweep, run_verify)

SMALL = dict(pairs=4, exponent_u=(2.0,), exponent_p=(2.0,), exponent_q=(4.0,))


def small(**changes):
    return RunConfig(**{**SMALL, **changes})


# --- fixtures --------------------------------------------------------------------

def test_random_chaos_is_deterministic():
    a = random_chaos(123, 2, 5, 0.5, True)
    b = random_chaos(123, 2, 5, 0.5, True)
    assert a == b and a.to_json() == b.to_json()
    assert a != random_chaos(124, 2, 5, 0.5, True)


def test_random_chaos_seed_42_norm():
    phi = random_chaos(42, 1, 6, 0.5)
    norm = math.sqrt(sum(abs(c) ** 2 * a.factorial() for a, c in phi.items()))
    assert 0.1 <= norm <= 10
    assert norm == pytest.approx(phi.l2_norm())


def test_small_decay_concentrates_at_degree_zero():
    phi = random_chaos(5, 1, 6, 1e-6)
    top = abs(phi[(0,)])
    rest = sum(abs(c) for a, c in phi.items() if a.degree > 0)
    assert rest <= 1e-5 * max(top, 1e-300) or top == 0


def test_random_chaos_envelope():
    with pytest.raises(ConfigError):
        random_chaos(1, 3, 4)
    with pytest.raises(ConfigError):
        random_chaos(1, 1, 17)
    with pytest.raises(ConfigError):
        random_chaos(1, 1, 4, decay=1.0)


def test_random_pairs_alternate_complex():
    pairs = random_pairs(9, "holder", 4, 1, 3, 0.5)
    assert len(pairs) == 4
    assert all(isinstance(c, complex) and c.imag == 0 for c in pairs[0][0].coeffs.values())
    assert any(c.imag != 0 for c in pairs[1][0].coeffs.values())


def test_derive_seed_is_64_bit_and_key_sensitive():
    s = derive_seed(1, 2, 3)
    assert 0 <= s < 2 ** 64
    assert s == derive_seed(1, 2, 3) != derive_seed(1, 3, 2)


def test_conv_fixture_catalogue():
    assert len(CONV_FIXTURES) == 10
    for make in CONV_FIXTURES.values():
        phi, psi = make()
        assert isinstance(phi, ChaosExpansion) and phi.dim == psi.dim == 1


# --- config ----------------------------------------------------------------------------

@pytest.mark.parametrize("text, value", [("inf", math.inf), ("4/3", 4 / 3), (2, 2.0), ("1.5", 1.5)])
def test_parse_number(text, value):
    assert parse_number(text) == value


def test_pinned_config_matches_defaults():
    assert RunConfig.pinned("verify") == RunConfig()


def test_config_round_trip(tmp_path):
    cfg = small(seed=77, format="json")
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_dict()))
    back = RunConfig.load(path)
    assert back == cfg and back.digest() == cfg.digest()


def test_digest_ignores_output_fields():
    cfg = small()
    assert cfg.digest() == cfg.replace(output="x.csv", format="json", workers=3).digest()
    assert cfg.digest() != cfg.replace(seed=cfg.seed + 1).digest()


@pytest.mark.parametrize("bad", [{"dim": 3}, {"degree": 17}, {"order": 500}, {"mode": "x"},
                                 {"format": "xml"}, {"seed": -1}, {"nonsense": 1},
                                 {"sections": ["holder", "nope"]}])
def test_config_validation(bad):
    with pytest.raises(ConfigError):
        RunConfig.from_dict({**SMALL, **bad})


# --- verify --------------------------------------------------------------------------------

def test_mismatched_pair_gives_failure_row():
    res = run_verify(small(sections=("holder",), holder_uv=((3.0, 3.0),), holder_p=(2.0,)))
    assert len(res.rows) == 1
    row = res.rows[0]
    assert not row.passed and row.note.startswith("error:") and row.u == 3.0


def test_malformed_conv_pair_gives_failure_rows():
    res = run_verify(small(sections=("conv_wick",), conv_uv=((2.0, 3.0),)))
    assert len(res.rows) == len(CONV_FIXTURES)
    assert all(not r.passed and "error" in r.note for r in res.rows)


def test_minimality_section():
    res = run_verify(small(sections=("minimality",), minimality_uv=((1.5, 1.5), (2.0, 2.0)),
                           minimality_trials=50))
    checks = [r.check for r in res.rows]
    assert checks == ["minimality", "minimality_boundary", "minimality_false_positive"]
    assert res.rows[0].passed and res.rows[0].ratio > 1
    assert res.all_passed


def test_cheap_sections_pass():
    res = run_verify(small(sections=("conv_wick", "constants", "young", "lieb", "witness")))
    assert res.all_passed, [r for r in res.failures]
    assert {r.check for r in res.rows} >= {"conv_wick", "const_J1", "young", "lieb_sup", "witness"}


def test_rows_follow_section_order():
    # emission follows the canonical section order, not the order given in the config
    res = run_verify(small(sections=("lieb", "constants")))
    kinds = [r.check.startswith("const") for r in res.rows]
    assert SECTIONS.index("constants") < SECTIONS.index("lieb")
    assert kinds == sorted(kinds, reverse=True) and kinds[0] and not kinds[-1]


# --- sweep -----------------------------------------------------------------------------------

SWEEP = dict(mode="sweep", pairs=3, exponent_u=(4 / 3, 2.0, 4.0), exponent_p=(1.5, 2.0, 3.0),
             exponent_q=(2.0, 4.0, math.inf))


def test_sweep_row_counts_and_nelson_mode():
    res = run_sweep(RunConfig(**SWEEP))
    counts = {}
    for r in res.rows:
        counts[r.check] = counts.get(r.check, 0) + 1
    assert counts == {"full_holder": 27, "lieb_sup": 27}
    nelson_rows = [r for r in res.rows if r.check == "full_holder" and math.isinf(r.q)]
    assert len(nelson_rows) == 9 and all("nelson mode" in r.note for r in nelson_rows)
    assert res.all_passed


def test_sweep_is_byte_identical():
    cfg = RunConfig(**SWEEP)
    assert run_sweep(cfg).to_csv() == run_sweep(cfg).to_csv()
    assert run_sweep(cfg).to_json() == run_sweep(cfg).to_json()


def test_parallel_matches_serial():
    cfg = RunConfig(**SWEEP)
    serial = run_sweep(cfg).to_csv()
    parallel = run_sweep(cfg.replace(workers=2)).to_csv()
    assert serial == parallel


def test_json_report_layout():
    res = run_sweep(RunConfig(**{**SWEEP, "exponent_q": (2.0,)}))
    doc = json.loads(res.to_json())
    assert doc["metadata"]["rows"] == len(doc["rows"]) == 18
    assert doc["metadata"]["config_sha256"] == res.config.digest()
    assert list(doc["rows"][0]) == ["check", "u", "v", "p", "q", "r", "lhs", "rhs", "ratio",
                                    "residual", "pass", "budget_note"]
