"""Tests for corpus configuration, suite rows, and report emission."""

import json
from functools import lru_cache

import jsonschema
import pytest

from ctcsa.errors import ConfigError
from ctcsa.harness import (
    Caps,
    Config,
    CorpusEntry,
    SUITE_NAMES,
    SuiteRow,
    config_from_dict,
    config_hash,
    config_to_dict,
    default_config,
    emit_json,
    emit_markdown,
    failing_rows,
    group_info,
    load_config,
    rows_pass,
    run_all,
    run_suite,
)

SCHEMA_PATH = "src/ctcsa/report_schema.json"


@lru_cache(maxsize=None)
def _schema():
    with open(SCHEMA_PATH, "r", encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def _small_config() -> Config:
    return config_from_dict(
        {
            "corpus": [
                "cyclic:6",
                "cyclic:7",
                {"recipe": "symmetric:3", "nickname": "triangle"},
                "frobenius:3,7",
                "psl2:3",
                "alternating:4",
            ],
            "known_refutations": [
                {"suite": "psl2-ct", "subject": "psl2:3", "check": "ct"}
            ],
        }
    )


# ---------------------------------------------------------------------------
# configuration


def test_default_config_shape():
    config = default_config()
    recipes = [e.recipe for e in config.entries]
    assert "cyclic:1" in recipes and "cyclic:30" in recipes
    assert "dihedral:3" in recipes and "dihedral:12" in recipes
    assert "psl2:13" in recipes and "sl2:13" in recipes
    assert "direct(symmetric:3,symmetric:3)" in recipes
    assert "semidirect(direct(cyclic:2,cyclic:2),cyclic:3,rotate-involutions)" in recipes
    big = config.entry("psl2:16")
    assert big is not None and big.centralizer_only
    assert ("psl2-ct", "psl2:3", "ct") in config.known_refutations
    assert ("psl2-ct", "psl2:5", "ct") in config.known_refutations
    assert len(recipes) == len(set(recipes))


def test_config_round_trip():
    config = _small_config()
    again = config_from_dict(config_to_dict(config))
    assert again == config
    assert config_hash(again) == config_hash(config)


def test_config_nickname_preserved():
    config = _small_config()
    assert config.entry("symmetric:3").nickname == "triangle"


def test_config_hash_is_sha256_hex():
    h = config_hash(default_config())
    assert len(h) == 64 and set(h) <= set("0123456789abcdef")


def test_config_hash_changes_with_content():
    a = config_from_dict({"corpus": ["cyclic:6"]})
    b = config_from_dict({"corpus": ["cyclic:7"]})
    assert config_hash(a) != config_hash(b)


def test_recipe_normalized_on_load():
    config = config_from_dict({"corpus": ["direct( cyclic:2 , cyclic:3 )"]})
    assert config.entries[0].recipe == "direct(cyclic:2,cyclic:3)"


def test_order_cap_below_default_scan_cap_accepted():
    # the caps are independent bounds; a scan cap above the order cap is
    # simply never reached
    config = config_from_dict({"corpus": ["cyclic:6"], "caps": {"order_cap": 500}})
    assert config.caps.order_cap == 500
    assert config.caps.triple_scan_cap == 600


@pytest.mark.parametrize(
    "data,fragment",
    [
        ([1, 2], "must be a JSON object"),
        ({"corpus": ["cyclic:6"], "extra": 1}, "unknown config keys"),
        ({}, "nonempty 'corpus'"),
        ({"corpus": []}, "nonempty 'corpus'"),
        ({"corpus": [{"nickname": "x"}]}, "needs a 'recipe'"),
        ({"corpus": [{"recipe": "cyclic:6", "big": True}]}, "unknown corpus entry"),
        ({"corpus": ["wreath:3"]}, "bad recipe"),
        ({"corpus": ["cyclic:6"], "caps": {"order_cap": 0}}, "positive"),
        ({"corpus": ["cyclic:6"], "caps": {"triple_scan_cap": -5}}, "positive"),
        ({"corpus": ["cyclic:6"], "caps": {"odd": 1}}, "unknown caps"),
        (
            {"corpus": ["cyclic:6"], "known_refutations": [{"suite": "wu"}]},
            "exactly suite, subject, check",
        ),
    ],
)
def test_config_validation_errors(data, fragment):
    with pytest.raises(ConfigError) as exc:
        config_from_dict(data)
    assert fragment in str(exc.value)


def test_load_config_from_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"corpus": ["cyclic:6"]}))
    config = load_config(str(path))
    assert config.entries[0].recipe == "cyclic:6"


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(str(tmp_path / "absent.json"))


def test_load_config_invalid_json(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{nope")
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_config(str(path))


# ---------------------------------------------------------------------------
# row pass semantics


def _mk_row(**kw):
    base = dict(
        suite="wu", subject="cyclic:6", check="dichotomy",
        expected=True, computed=True, paper_claim="confirms",
        claim="statement",
    )
    base.update(kw)
    return SuiteRow(**base)


def test_row_pass_matrix():
    config = _small_config()
    assert _mk_row().passes(config)
    assert not _mk_row(computed=False).passes(config)
    assert not _mk_row(error="OrderCapExceeded: too big").passes(config)
    refuting = _mk_row(
        suite="psl2-ct", subject="psl2:3", check="ct", paper_claim="refutes"
    )
    assert refuting.passes(config)
    unlisted = _mk_row(
        suite="psl2-ct", subject="psl2:5", check="ct", paper_claim="refutes"
    )
    assert not unlisted.passes(config)


def test_row_to_dict_matches_schema_fields():
    row_fields = set(_mk_row().to_dict())
    schema_fields = set(
        _schema()["properties"]["suites"]["items"]["properties"]["rows"]["items"][
            "properties"
        ]
    )
    assert row_fields == schema_fields


# ---------------------------------------------------------------------------
# suites


def test_unknown_suite_name():
    with pytest.raises(ConfigError, match="unknown suite"):
        run_suite("nosuch", _small_config())


def test_suite_names_cover_run_all():
    results = run_all(_small_config())
    assert tuple(results) == SUITE_NAMES


@pytest.mark.parametrize("name", SUITE_NAMES)
def test_each_suite_passes_on_small_config(name):
    config = _small_config()
    rows = run_suite(name, config)
    assert rows_pass(rows, config), [r.to_dict() for r in failing_rows(rows, config)]


def test_rows_deterministic_across_runs():
    config = _small_config()
    first = [r.to_dict() for r in run_suite("lemma22-equivalence", config)]
    second = [r.to_dict() for r in run_suite("lemma22-equivalence", config)]
    assert first == second


def test_rows_sorted_by_subject_then_check():
    config = _small_config()
    rows = run_suite("wu", config)
    keys = [(r.subject, r.check) for r in rows]
    assert keys == sorted(keys)


def test_pq_rows_present():
    config = _small_config()
    rows = run_suite("pq-example", config)
    checks = {(r.subject, r.check) for r in rows}
    assert ("frobenius:3,7", "ct") in checks
    assert ("frobenius:3,7", "not-csa") in checks
    assert ("frobenius:3,7", "extraction") in checks
    extraction = next(r for r in rows if r.check == "extraction")
    assert extraction.witness == {"g0_size": 21, "a_size": 7, "a_cyclic": True}


def test_refuting_row_shape():
    config = _small_config()
    rows = run_suite("psl2-ct", config)
    (row,) = rows
    assert row.subject == "psl2:3"
    assert row.paper_claim == "refutes"
    assert row.expected is True and row.computed is True
    assert row.passes(config)


def test_unlisted_refutation_fails_run():
    config = config_from_dict({"corpus": ["psl2:3"]})
    rows = run_suite("psl2-ct", config)
    assert not rows_pass(rows, config)
    (bad,) = failing_rows(rows, config)
    assert bad.error is None and bad.computed == bad.expected


def test_build_failure_becomes_error_row():
    config = config_from_dict(
        {
            "corpus": ["symmetric:5"],
            "caps": {"order_cap": 100, "triple_scan_cap": 100},
        }
    )
    rows = run_suite("csa-abelian", config)
    (row,) = rows
    assert row.check == "build"
    assert row.error is not None and "OrderCapExceeded" in row.error
    assert not rows_pass(rows, config)


def test_centralizer_only_entries_skipped_in_scan_suites():
    config = config_from_dict(
        {"corpus": [{"recipe": "psl2:3", "centralizer_only": True}, "cyclic:6"]}
    )
    rows = run_suite("lemma22-equivalence", config)
    assert {r.subject for r in rows} == {"cyclic:6"}
    ct_rows = run_suite("psl2-ct", config)
    assert {r.subject for r in ct_rows} == {"psl2:3"}


def test_monolith_known_rows():
    config = config_from_dict({"corpus": ["symmetric:4", "cyclic:6", "alternating:5"]})
    rows = run_suite("monolith", config)
    by_key = {(r.subject, r.check): r for r in rows}
    assert by_key[("symmetric:4", "known-monolith-size")].witness == {
        "monolith_size": 4
    }
    assert ("cyclic:6", "no-monolith") in by_key
    assert ("alternating:5", "simple-group-is-own-monolith") in by_key
    assert rows_pass(rows, config)


def test_aut_suite_fixed_subjects():
    config = config_from_dict({"corpus": ["cyclic:6"]})
    rows = run_suite("aut-sl2", config)
    subjects = {(r.subject, r.check) for r in rows}
    assert ("sl2:4", "alpha-tau-commute") in subjects
    assert ("sl2:8", "tau-order-three") in subjects
    assert ("psl2:4", "conjugation-kernel-trivial") in subjects
    assert rows_pass(rows, config)


def test_char0_suite_is_corpus_independent():
    config = config_from_dict({"corpus": ["cyclic:6"]})
    rows = run_suite("char0-witness", config)
    checks = {r.check for r in rows}
    assert checks == {
        "abc-relations",
        "bc-commute",
        "no-squares-summing-to-minus-one",
        "tuv-relations",
    }
    assert rows_pass(rows, config)


# ---------------------------------------------------------------------------
# emission


def test_emit_json_validates_and_is_deterministic():
    config = _small_config()
    results = run_all(config)
    doc1 = json.loads(emit_json(results, config))
    doc2 = json.loads(emit_json(results, config))
    jsonschema.validate(doc1, _schema())
    doc1.pop("generated_at")
    doc2.pop("generated_at")
    assert doc1 == doc2
    assert doc1["config_hash"] == config_hash(config)
    assert doc1["version"] == "1"


def test_emit_json_accepts_flat_row_list():
    config = _small_config()
    rows = run_suite("pq-example", config)
    doc = json.loads(emit_json(rows, config))
    jsonschema.validate(doc, _schema())
    assert [s["name"] for s in doc["suites"]] == ["pq-example"]


def test_emit_empty_report():
    config = _small_config()
    doc = json.loads(emit_json([], config))
    jsonschema.validate(doc, _schema())
    assert doc["suites"] == []
    assert "Check suite report" in emit_markdown([], config)


def test_emit_markdown_statuses():
    config = _small_config()
    rows = run_suite("psl2-ct", config)
    md = emit_markdown(rows, config)
    assert "| psl2:3 | ct |" in md
    assert "pass (known refutation)" in md
    bare = config_from_dict({"corpus": ["psl2:3"]})
    md_fail = emit_markdown(run_suite("psl2-ct", bare), bare)
    assert "FAIL" in md_fail


def test_emit_markdown_has_statement_column():
    config = _small_config()
    md = emit_markdown(run_suite("pq-example", config), config)
    header = next(line for line in md.splitlines() if line.startswith("| subject"))
    assert "statement" in header


# ---------------------------------------------------------------------------
# group_info


def test_group_info_psl2_4():
    info = group_info("psl2:4", _small_config())
    assert info["order"] == 60
    assert info["simple"] is True
    assert info["ct"] is True
    assert info["csa"] is False
    assert info["monolith_size"] == 60
    assert info["solvable"] is False


def test_group_info_trivial_group():
    info = group_info("cyclic:1", _small_config())
    assert info["order"] == 1
    assert info["abelian"] is True
    assert info["center_size"] == 1
    assert info["maximal_abelian_count"] == 0 or info["maximal_abelian_count"] == 1


def test_group_info_normalizes_recipe():
    info = group_info(" cyclic:6 ", _small_config())
    assert info["recipe"] == "cyclic:6"


def test_group_info_skips_heavy_fields_when_flagged():
    config = config_from_dict(
        {"corpus": [{"recipe": "psl2:3", "centralizer_only": True}]}
    )
    info = group_info("psl2:3", config)
    assert info["ct"] is True
    assert info["csa"] is None and info["simple"] is None
    assert "skipped" in info


def test_group_info_skips_above_normal_enum_cap():
    config = config_from_dict(
        {
            "corpus": ["cyclic:12"],
            "caps": {"normal_enum_cap": 10},
        }
    )
    info = group_info("cyclic:12", config)
    assert info["csa"] is None and info["monolith_size"] is None
    assert "skipped" in info


def test_group_info_is_json_serializable():
    info = group_info("frobenius:3,7", _small_config())
    parsed = json.loads(json.dumps(info))
    assert parsed["order"] == 21 and parsed["solvable"] is True
