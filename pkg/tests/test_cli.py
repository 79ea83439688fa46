"""End-to-end command-line behavior, run in process through main()."""

import json
from fractions import Fraction

import pytest

from shiftlab.cli import main
from shiftlab.exactnum import decimal_string
from shiftlab.measures import combine1d, delta, lebesgue, make1d
from shiftlab.sfc import example_family

F = Fraction


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def specs(tmp_path):
    """A directory of spec files covering every subcommand."""

    def dump(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return str(path)

    xi = make1d([(F(0), F(1, 3)), (F(1, 2), F(1, 3)), (F(1), F(1, 3))])
    eta = combine1d(
        [(F(1, 2), lebesgue()), (F(1, 2), delta(F(1)))]
    )
    out = {
        "bergman": dump(
            "bergman.json", {"prefix_sq": [], "tail": {"kind": "bergman_like", "value": 1}}
        ),
        "witness": dump(
            "witness.json",
            {"prefix_sq": ["1/4", "1/4"], "tail": {"kind": "constant", "value": "1"}},
        ),
        "decreasing": dump(
            "decreasing.json",
            {"prefix_sq": ["1", "1/2"], "tail": {"kind": "constant", "value": "1/2"}},
        ),
        "finite": dump("finite.json", {"prefix_sq": ["1/2", "3/4"], "tail": {"kind": "none"}}),
        "fig9": dump("fig9.json", {"model": "figure9", "y_sq": "1/3"}),
        "fig5": dump(
            "fig5.json",
            {"model": "figure5", "k2": 2, "alpha0_sq": "1/4", "beta0_sq": "7/3240"},
        ),
        "flatpair": dump(
            "flatpair.json",
            {
                "model": "totally_flat",
                "x_row": {"prefix_sq": ["1/2", "1/2"], "tail": {"kind": "constant", "value": "1"}},
                "y_sq": "1/8",
            },
        ),
        "sfc_mid": dump(
            "sfc_mid.json",
            {
                "model": "sfc",
                "xi": xi.to_json_obj(),
                "eta": eta.to_json_obj(),
                "a_sq": "1/2",
                "y0_sq": "12/25",
            },
        ),
        "sfc_tight": dump(
            "sfc_tight.json",
            {
                "model": "sfc",
                "xi": xi.to_json_obj(),
                "eta": eta.to_json_obj(),
                "a_sq": "5/12",
                "y0_sq": "13/16",
            },
        ),
        "badjson": str(tmp_path / "bad.json"),
        "unknown": dump("unknown.json", {"model": "weird"}),
        "dir": tmp_path,
    }
    (tmp_path / "bad.json").write_text('{"model": oops}\n', encoding="utf-8")
    return out


# ---------------------------------------------------------------------------
# moments


def test_moments_default_window(capsys, specs):
    code, out, err = run(capsys, ["moments", specs["bergman"]])
    assert code == 0 and err == ""
    assert "gamma[ 10]" in out and "1/11" in out


def test_moments_json_values(capsys, specs):
    code, out, _ = run(capsys, ["moments", specs["bergman"], "--window", "3", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "moments" and doc["window"] == 3
    assert [g["rat"] for g in doc["gamma"]] == ["1", "1/2", "1/3", "1/4"]
    assert doc["gamma"][2]["dec"] == "0.333333333333"


def test_moments_window_validation(capsys, specs):
    code, _, err = run(capsys, ["moments", specs["bergman"], "--window", "0"])
    assert code == 2 and "error:" in err
    code2, _, err2 = run(capsys, ["moments", specs["bergman"], "--window", "2", "3"])
    assert code2 == 2 and "one value" in err2


def test_moments_beyond_finite_prefix(capsys, specs):
    code, _, err = run(capsys, ["moments", specs["finite"], "--window", "5"])
    assert code == 2 and "error:" in err


# ---------------------------------------------------------------------------
# hyponormality checks


def test_check_hypo_pass_and_fail(capsys, specs):
    code, out, _ = run(capsys, ["check-hypo", specs["bergman"], "--window", "40"])
    assert code == 0 and "PASS" in out
    code2, out2, _ = run(capsys, ["check-hypo", specs["decreasing"], "--window", "5", "--json"])
    assert code2 == 1
    doc = json.loads(out2)
    assert doc["verdict"] is False and doc["witness"] == 0


def test_check_khypo_pass(capsys, specs):
    code, out, _ = run(capsys, ["check-khypo", specs["bergman"], "--k", "2", "--window", "50"])
    assert code == 0 and "PASS" in out


def test_check_khypo_witness(capsys, specs):
    code, out, _ = run(capsys, ["check-khypo", specs["witness"], "--k", "2", "--window", "5", "--json"])
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] is False and doc["witness"] == 0 and doc["order"] == 2


def test_check_khypo_order_bounds(capsys, specs):
    for bad in ("0", "7"):
        code, _, err = run(capsys, ["check-khypo", specs["bergman"], "--k", bad, "--window", "5"])
        assert code == 2 and "1..6" in err


# ---------------------------------------------------------------------------
# two-variable windows


def test_sixpoint_grid_pass(capsys, specs):
    code, out, _ = run(capsys, ["sixpoint", specs["fig9"], "--window", "5", "3", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] is True
    assert len(doc["entries"]) == 6 * 4
    first = doc["entries"][0]
    assert first["k"] == [0, 0]
    assert first["a1"]["rat"] == "1/3" and first["q"]["rat"] == "1/6"
    assert all(e["ok"] for e in doc["entries"])


def test_sixpoint_grid_fail(capsys, specs):
    code, out, _ = run(capsys, ["sixpoint", specs["flatpair"], "--window", "3", "2"])
    assert code == 1 and "failing indices" in out and "(0, 0)" in out


def test_joint_pass(capsys, specs):
    code, out, _ = run(capsys, ["joint", specs["fig9"], "--window", "20", "10", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["verdict"] is True and doc["report"]["witness"] is None
    code2, _, _ = run(capsys, ["joint", specs["fig5"], "--window", "30", "10"])
    assert code2 == 0


def test_joint_witness(capsys, specs):
    code, out, _ = run(capsys, ["joint", specs["sfc_tight"], "--window", "25", "8", "--json"])
    assert code == 1
    doc = json.loads(out)
    assert doc["report"]["witness"] == {"k": [1, 0], "condition": "six_point"}
    code2, out2, _ = run(capsys, ["joint", specs["sfc_tight"], "--window", "25", "8"])
    assert code2 == 1 and "witness (1, 0)" in out2


def test_joint_window_validation(capsys, specs):
    code, _, err = run(capsys, ["joint", specs["fig9"], "--window", "5"])
    assert code == 2 and "two values" in err


def test_json_output_is_deterministic(capsys, specs):
    argv = ["joint", specs["fig5"], "--window", "12", "6", "--json"]
    _, first, _ = run(capsys, argv)
    _, second, _ = run(capsys, argv)
    assert first == second
    assert first.endswith("\n")


# ---------------------------------------------------------------------------
# classification


def test_classify_sfc_reports_thresholds(capsys, specs):
    code, out, _ = run(capsys, ["classify-sfc", specs["sfc_mid"], "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "HyponormalNotSubnormal"
    assert doc["h_sq"]["rat"] == "8/9" and doc["s_sq"]["rat"] == "2/5"
    assert doc["h_sq"]["dec"] == "0.888888888889"


def test_classify_sfc_exit_zero_for_any_verdict(capsys, specs):
    # a computed verdict is a success even when it is NotHyponormal
    code, out, _ = run(capsys, ["classify-sfc", specs["sfc_tight"]])
    assert code == 0 and "classification:" in out


# ---------------------------------------------------------------------------
# scans


def test_scan_csv_endpoints(capsys, specs):
    code, out, _ = run(capsys, ["scan", "--lo", "1/3", "--hi", "1/2", "--steps", "2"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "a_sq,h_sq,s_sq,h_dec,s_dec,gap_dec"
    assert lines[1].startswith("1/3,16/21,1/3,")
    assert lines[2].startswith("1/2,8/9,2/5,")
    assert lines[1].split(",")[3] == decimal_string(F(16, 21), 12)


def test_scan_sum_form_rational_and_monotone_columns(capsys, specs):
    code, out, _ = run(capsys, ["scan", "--lo", "1/6+1/100", "--hi", "1/2", "--steps", "5"])
    assert code == 0
    rows = out.strip().split("\n")[1:]
    assert len(rows) == 5
    assert rows[0].split(",")[0] == "53/300"
    h_values = [F(r.split(",")[1]) for r in rows]
    s_values = [F(r.split(",")[2]) for r in rows]
    assert h_values == sorted(h_values) and s_values == sorted(s_values)
    assert all(F(r.split(",")[1]) > F(r.split(",")[2]) for r in rows)


def test_scan_out_file(tmp_path, capsys, specs):
    target = tmp_path / "scan.csv"
    code, out, _ = run(
        capsys, ["scan", "--lo", "1/3", "--hi", "1/2", "--steps", "3", "--out", str(target)]
    )
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8").startswith("a_sq,")


def test_scan_validation(capsys, specs):
    code, _, err = run(capsys, ["scan", "--hi", "1/2"])
    assert code == 2 and "--lo" in err
    code2, _, _ = run(capsys, ["scan", "--lo", "1/3", "--hi", "1/2", "--steps", "1"])
    assert code2 == 2
    code3, _, _ = run(capsys, ["scan", "--lo", "1/6", "--hi", "1/2", "--steps", "3"])
    assert code3 == 2
    code4, _, err4 = run(capsys, ["scan", "--lo", "1/x", "--hi", "1/2", "--steps", "3"])
    assert code4 == 2 and "--lo" in err4


# ---------------------------------------------------------------------------
# verification suite


def test_verify_paper_all_pass(capsys, specs):
    code, out, _ = run(capsys, ["verify-paper"])
    assert code == 0
    assert out.count("PASS") == 20
    assert "20/20 checks passed" in out


# ---------------------------------------------------------------------------
# precision control


def test_precision_env_honored(capsys, specs, monkeypatch):
    monkeypatch.setenv("SHIFTLAB_PRECISION", "4")
    code, out, _ = run(capsys, ["moments", specs["bergman"], "--window", "2", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["gamma"][2]["dec"] == "0.3333"


def test_precision_env_invalid(capsys, specs, monkeypatch):
    for bad in ("abc", "0"):
        monkeypatch.setenv("SHIFTLAB_PRECISION", bad)
        code, _, err = run(capsys, ["moments", specs["bergman"]])
        assert code == 2 and "SHIFTLAB_PRECISION" in err


# ---------------------------------------------------------------------------
# input errors


def test_malformed_json_names_position(capsys, specs):
    code, _, err = run(capsys, ["moments", specs["badjson"]])
    assert code == 2
    assert f"{specs['badjson']}:1:11" in err


def test_missing_file(capsys, specs):
    missing = str(specs["dir"] / "absent.json")
    code, _, err = run(capsys, ["moments", missing])
    assert code == 2 and "absent.json" in err


def test_unknown_model(capsys, specs):
    code, _, err = run(capsys, ["joint", specs["unknown"], "--window", "3", "3"])
    assert code == 2 and "unknown model" in err


def test_out_file_matches_stdout(tmp_path, capsys, specs):
    argv = ["joint", specs["fig9"], "--window", "8", "4", "--json"]
    _, stdout_text, _ = run(capsys, argv)
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, argv + ["--out", str(target)])
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8") == stdout_text


def test_argparse_rejects_missing_subcommand(capsys):
    with pytest.raises(SystemExit):
        main([])
    capsys.readouterr()


def test_library_and_cli_agree_on_sfc(capsys, specs):
    code, out, _ = run(capsys, ["classify-sfc", specs["sfc_mid"], "--json"])
    assert code == 0
    doc = json.loads(out)
    expected = example_family(F(1, 2), F(16, 25))
    assert doc["y0_sq"]["rat"] == "12/25"
    assert F(doc["h_sq"]["rat"]) == F(8, 9)
    assert expected.y0_sq == F(12, 25)
