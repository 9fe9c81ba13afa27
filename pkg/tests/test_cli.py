import io
import json
import os
import shutil

from tclab.cli import (
    CASES,
    analyze_report,
    build_report,
    ci_report,
    enumerate_report,
    main,
    reproduce_cases,
    verify_report,
)

H14 = "1,2,3,4,5,6,7,8,9,10,10,10,9,8,8,5,3,3,2"
H14_LIST = [int(v) for v in H14.split(",")]


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_analyze_human_output():
    code, text = run(["analyze", "--h", H14])
    assert code == 0
    assert "4 ≤ ν(I) ≤ 11" in text
    assert "7 ≤ ν(I*) ≤ 11" in text
    assert "P(-10) (+) P(-12) (+) P^3(-15) (+) P(-18) (+) P(-19)" in text


def test_analyze_json_round_trip():
    code, text = run(["analyze", "--h", H14, "--json"])
    assert code == 0
    report = json.loads(text)
    assert json.loads(json.dumps(report)) == report
    assert report["nu_bounds"] == [4, 11]
    assert report["nu_star_bounds"] == [7, 11]
    assert report["min_star_table"]["beta0"] == {
        "10": 1, "12": 1, "15": 3, "18": 1, "19": 1}


def test_analyze_rejects_bad_input():
    code, _ = run(["analyze", "--h", "1,3,2"])
    assert code == 2
    code, _ = run(["analyze", "--h", "1,two"])
    assert code == 2


def test_build_cli(tmp_path):
    sched = tmp_path / "sched.json"
    sched.write_text(json.dumps([[12, 12], [6, 8], [9, 11]]))
    code, text = run(["build", "--h", "1,2,3,4,4,3,3,3,2,2,2,1",
                      "--schedule", str(sched), "--json"])
    assert code == 0
    report = json.loads(text)
    assert report["certification"]["nu"] == 2
    assert report["certification"]["nu_star"] == 4
    assert report["star_table_matches"] and report["leading_matches_homogeneous"]
    assert report["star_matrix"]["unit_slots"] == [[4, 2]]


def test_build_empty_schedule():
    code, text = run(["build", "--h", "1,1", "--json"])
    assert code == 0
    report = json.loads(text)
    assert report["certification"]["beta0"] == {"1": 1, "2": 1}
    assert report["certification"]["nu"] == 2


def test_ci_cli_with_d_seq():
    code, text = run(["ci", "--c", "4,5,8,11", "--d-seq", "4,3,2,0", "--json"])
    assert code == 0
    report = json.loads(text)
    assert report["e"] == [0, 6, 9, 13]
    assert report["h"] == [1, 2, 3, 4, 4, 3, 3, 3, 2, 2, 2, 1]
    assert report["multiplicity"] == 30
    assert report["a_invariant"] == 11


def test_ci_requires_exactly_one_sequence():
    code, _ = run(["ci", "--c", "4,5,8,11"])
    assert code == 2
    code, _ = run(["ci", "--c", "4,5,8,11", "--e", "6,9,13",
                   "--d-seq", "4,3,2,0"])
    assert code == 2


def test_ci_enumerate_flag():
    code, text = run(["ci", "--c", "4,5,8,11", "--e", "6,9,13",
                      "--enumerate", "--json"])
    assert code == 0
    report = json.loads(text)
    assert report["e_choices"] == [[6, 9, 13], [6, 10, 12], [7, 9, 12]]


def test_enumerate_cli():
    code, text = run(["enumerate", "--c", "4,5,8,11", "--json"])
    assert code == 0
    report = json.loads(text)
    assert [c["e"] for c in report["choices"]] == [
        [6, 9, 13], [6, 10, 12], [7, 9, 12]]
    assert report["choices"][2]["h"] == [1, 2, 3, 4, 4, 3, 2, 2, 1, 1, 1]


def test_verify_cli(tmp_path):
    payload = {"gens": ["xy^6 - x^3y^2 + xy^4",
                        "-2x^2y^4 + y^6 + x^4 - x^2y^2"]}
    path = tmp_path / "gens.json"
    path.write_text(json.dumps(payload))
    code, text = run(["verify", str(path), "--json"])
    assert code == 0
    report = json.loads(text)
    assert report["nu"] == 2
    assert report["hf"] == [1, 2, 3, 4, 4, 3, 3, 3, 2, 2, 2, 1]
    assert report["beta1"] == {"6": 1, "9": 1, "13": 1}


def test_verify_respects_payload_prime(tmp_path):
    payload = {"gens": ["x^2 + 7y^2", "y^5"], "p": 101}
    path = tmp_path / "gens.json"
    path.write_text(json.dumps(payload))
    code, text = run(["verify", str(path), "--json"])
    assert code == 0
    assert json.loads(text)["field"] == "GF(101)"


def test_prime_env_override(monkeypatch):
    monkeypatch.setenv("TCLAB_PRIME", "101")
    code, text = run(["analyze", "--h", "1,1", "--json"])
    assert code == 0
    assert json.loads(text)["field"] == "GF(101)"
    monkeypatch.setenv("TCLAB_PRIME", "10")
    code, _ = run(["analyze", "--h", "1,1", "--json"])
    assert code == 2


def test_reproduce_all_pass():
    code, text = run(["reproduce"])
    assert code == 0
    for case in CASES:
        assert f"PASS {case}" in text


def test_reproduce_single_case():
    code, text = run(["reproduce", "--case", "ex2.7"])
    assert code == 0
    assert text.strip() == "PASS ex2.7"
    code, _ = run(["reproduce", "--case", "nope"])
    assert code == 2


def test_reproduce_detects_corruption(tmp_path):
    src = os.path.join(os.path.dirname(CASES["ex2.5"].__code__.co_filename),
                       "fixtures")
    for name in os.listdir(src):
        shutil.copy(os.path.join(src, name), tmp_path)
    bad = json.loads((tmp_path / "ex2_5.json").read_text())
    bad["ci"]["multiplicity"] = 31
    (tmp_path / "ex2_5.json").write_text(json.dumps(bad))
    code, text = run(["reproduce", "--fixtures", str(tmp_path)])
    assert code == 1
    assert "FAIL ex2.5" in text
    assert "multiplicity" in text
    assert "PASS ex1.4" in text


def test_reproduce_bless_round_trip(tmp_path):
    ok = reproduce_cases(case="ex2.7", bless=True, fixtures_dir=str(tmp_path),
                         out=io.StringIO())
    assert ok
    code, text = run(["reproduce", "--case", "ex2.7", "--fixtures",
                      str(tmp_path)])
    assert code == 0 and "PASS" in text


def test_report_functions_round_trip_json():
    for report in (
        analyze_report(H14_LIST),
        build_report([1, 1], []),
        ci_report([1, 2], e=[3]),
        enumerate_report([4, 5, 8, 11]),
        verify_report({"gens": ["x^2", "y^2"]}),
    ):
        assert json.loads(json.dumps(report)) == report
