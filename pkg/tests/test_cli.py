"""The command-line front end: plumbing, exit codes, determinism."""

import json
from fractions import Fraction

import pytest

from kodaira import cli
from importlib import resources
from kodaira.exactfield import NumberRing, to_payload

R = NumberRing()
I = R.i()


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_scenes_listing(capsys):
    code, out, err = run(capsys, "scenes")
    assert code == 0 and err == ""
    names = out.splitlines()
    assert names == sorted(names)
    assert "translations" in names and "order6" in names
    assert len(names) == 13


def test_scene_echo_matches_bundled_file(capsys):
    for name in cli.bundled_scene_names():
        code, out, err = run(capsys, "scene", "--scene", f"bundled:{name}")
        assert code == 0, name
        raw = (resources.files("kodaira") / "scenes" / f"{name}.json").read_text()
        assert out == raw


def test_round_trip_through_parser():
    for name in cli.bundled_scene_names():
        doc = cli.bundled_scene(name)
        scene = cli.parse_scene(doc)
        assert cli.scene_document(scene) == doc


def test_output_is_deterministic(capsys):
    cases = [
        ("cohomology", "--scene", "bundled:translations", "--lift", "half_period",
         "--format", "json"),
        ("moduli", "--scene", "bundled:order6", "--format", "json"),
        ("verify-forms", "--scene", "bundled:order2", "--format", "table"),
    ]
    for argv in cases:
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second
        assert first[0] == 0


def test_normalize_frozen_values(capsys):
    code, out, _ = run(capsys, "normalize", "--scene", "bundled:normalize_demo",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    shift = R.value(Fraction(1, 6)) - I * Fraction(1, 5)
    assert doc["delta_zero"]["base_shift"] == to_payload(shift)
    assert doc["c_integer"]["fibre_scale"] == to_payload(-I)
    assert doc["c_integer"]["surface"]["c"] == to_payload(R.value(2))
    assert doc["c_integer"]["surface"]["delta"] == []
    assert doc["torsion_m"] == 2


def test_fixed_locus_output(capsys):
    code, out, _ = run(capsys, "fixed-locus", "--scene", "bundled:fixed_locus",
                       "--lift", "involution", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "fibres"
    half = Fraction(1, 2)
    expected = [to_payload(v) for v in
                (R.zero(), I * half, (R.one() + I) * half)]
    assert sorted(map(json.dumps, doc["fibres"])) == sorted(map(json.dumps, expected))

    code, out, _ = run(capsys, "fixed-locus", "--scene", "bundled:fixed_locus",
                       "--lift", "involution_shifted", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"kind": "empty", "fibres": []}


def test_pi1_abelianization(capsys):
    code, out, _ = run(capsys, "pi1", "abelianization", "--scene",
                       "bundled:translations", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["free_rank"] == 3
    assert doc["torsion"] == [2]


def test_pi1_star_and_inverse(capsys):
    code, out, _ = run(capsys, "pi1", "--scene", "bundled:translations",
                       "--format", "json", "star", "1,0,0,0", "0,1,0,0")
    assert code == 0
    product = json.loads(out)["exponents"]
    code, out, _ = run(capsys, "pi1", "--scene", "bundled:translations",
                       "--format", "json", "--", "inverse", ",".join(map(str, product)))
    assert code == 0
    inv = json.loads(out)["exponents"]
    code, out, _ = run(capsys, "pi1", "--scene", "bundled:translations",
                       "--format", "json", "--", "star", ",".join(map(str, product)),
                       ",".join(map(str, inv)))
    assert json.loads(out)["exponents"] == [0, 0, 0, 0]


def test_pi1_star_needs_elements(capsys):
    code, _, err = run(capsys, "pi1", "--scene", "bundled:translations", "star")
    assert code == 2
    assert "element" in err


def test_check_lift_reports(capsys):
    code, out, _ = run(capsys, "check-lift", "--scene", "bundled:translations",
                       "--lift", "half_period", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["class"] == "Automorphism"
    assert doc["base_map"] == "translation"
    assert doc["is_deck"] is False


def test_cohomology_report(capsys):
    code, out, _ = run(capsys, "cohomology", "--scene", "bundled:translations",
                       "--lift", "half_period", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rho"] == to_payload(-R.one())
    assert doc["lefschetz"] == to_payload(R.zero())
    assert doc["total_trace"] == to_payload(R.value(12))
    assert doc["symplectic"] is True
    assert doc["acts_trivially"] is False
    assert set(doc["action"]) == {f"H{p}{q}" for p in range(3) for q in range(3)}


def test_moduli_precision(capsys):
    code, out, _ = run(capsys, "moduli", "--scene", "bundled:translations",
                       "--format", "json", "--precision", "12")
    assert code == 0
    doc = json.loads(out)
    assert doc["j_base"]["re"] == pytest.approx(1728.0, rel=1e-9)
    assert doc["j_base"]["im"] == pytest.approx(0.0, abs=1e-9)
    assert doc["precision"] == 12


def test_iso_verdicts(capsys):
    code, out, _ = run(capsys, "iso", "--scene", "bundled:translations",
                       "--other", "bundled:iso_translate", "--format", "json")
    assert code == 0
    assert json.loads(out)["isomorphic"] is True
    code, out, _ = run(capsys, "iso", "--scene", "bundled:translations",
                       "--other", "bundled:iso_half_shift", "--format", "json")
    assert code == 0
    assert json.loads(out)["isomorphic"] is False


def test_order_n_matches_unit_order(capsys):
    for name, order in [("order4", 4), ("order6", 6), ("order2", 2)]:
        code, out, _ = run(capsys, "order-n", "--scene", f"bundled:{name}",
                           "--format", "json")
        assert code == 0
        assert json.loads(out)["n"] == order


def test_verify_forms_table(capsys):
    code, out, _ = run(capsys, "verify-forms", "--scene", "bundled:order6",
                       "--format", "table")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "96 of 96 identities hold"
    assert all(l.startswith("pass  ") for l in lines[:-1])


def test_missing_lift_is_a_scene_error(capsys):
    code, _, err = run(capsys, "fixed-locus", "--scene", "bundled:fixed_locus",
                       "--lift", "nope")
    assert code == 2
    assert "nope" in err


def test_ambiguous_lift_default_is_a_scene_error(capsys):
    # fixed_locus ships several lifts, so --lift is required there
    code, _, err = run(capsys, "check-lift", "--scene", "bundled:fixed_locus")
    assert code == 2
    # while a single-lift scene picks its lift automatically
    code, out, _ = run(capsys, "check-lift", "--scene", "bundled:bundle_action",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["class"] == "Automorphism"


def test_malformed_scene_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "scene", "--scene", str(bad))
    assert code == 2 and "error:" in err

    extra = tmp_path / "extra.json"
    doc = cli.bundled_scene("translations")
    doc["unknown"] = 1
    extra.write_text(json.dumps(doc))
    code, _, err = run(capsys, "scene", "--scene", str(extra))
    assert code == 2 and "unknown" in err

    missing = tmp_path / "missing.json"
    doc = cli.bundled_scene("translations")
    del doc["surface"]["c"]
    missing.write_text(json.dumps(doc))
    code, _, err = run(capsys, "scene", "--scene", str(missing))
    assert code == 2


def test_domain_errors_exit_one(tmp_path, capsys):
    doc = cli.bundled_scene("translations")
    doc["lifts"]["bad"] = {
        "alpha": to_payload(R.one()),
        "beta": to_payload(R.value(Fraction(1, 7))),
        "sigma10": [],
        "v": [],
    }
    scene = tmp_path / "scene.json"
    scene.write_text(json.dumps(doc))
    code, _, err = run(capsys, "fixed-locus", "--scene", str(scene), "--lift", "bad")
    assert code == 1
    assert "error:" in err
    # the same lift is still reportable, just not an automorphism
    code, out, _ = run(capsys, "check-lift", "--scene", str(scene), "--lift", "bad",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["class"] == "NotDescending"


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["power", "--scene", "bundled:order4"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_selftest_command_reports_all_checks(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("criterion")]
    assert len(lines) == 13
    assert all(" PASS " in l for l in lines)
