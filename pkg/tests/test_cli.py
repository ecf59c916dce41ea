import json

from coinprimes import cli, verify
from coinprimes.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_compute_table(capsys):
    rc, out, _ = run(capsys, "compute", "--a", "3", "--b", "5")
    assert rc == 0
    assert "pi_star=2" in out and "pi_s=4" in out and "<3,5>" in out


def test_compute_rejects_noncoprime(capsys):
    rc, _, err = run(capsys, "compute", "--a", "4", "--b", "6")
    assert rc == 2
    assert "coprime" in err


def test_compute_all_methods(capsys):
    rc, out, _ = run(capsys, "compute", "--a", "5", "--b", "7", "--method", "all")
    assert rc == 0
    lines = [l for l in out.splitlines() if l.startswith("pair=")]
    assert len(lines) == 3
    assert all("pi_star=5" in l for l in lines)


def test_output_format_type():
    assert sorted(cli._FORMATS) == ["csv", "jsonl", "table"]
    assert cli._FORMATS["csv"] is cli.FORMAT_CSV
    assert cli.FORMAT_JSONL.kind == "jsonl"
    try:
        cli.FORMAT_TABLE.kind = "csv"
    except AttributeError:
        pass
    else:
        raise AssertionError("OutputFormat should be immutable")


def test_compute_csv_and_jsonl(capsys):
    rc, out, _ = run(capsys, "compute", "--a", "3", "--b", "5", "--format", "csv")
    assert rc == 0
    assert out.splitlines()[0] == verify.CSV_HEADER
    assert out.splitlines()[1].startswith("3,5,7,2,4,")
    rc, out, _ = run(capsys, "compute", "--a", "3", "--b", "5", "--format", "jsonl")
    assert rc == 0
    obj = json.loads(out.splitlines()[0])
    assert obj["pi_star"] == 2 and obj["ms"] == 0


def test_compute_exact_margins(capsys):
    rc, out, _ = run(capsys, "compute", "--a", "3", "--b", "5", "--exact-margins")
    assert rc == 0
    assert "thm2 margin" in out


def test_compute_brute_cap(capsys):
    rc, _, err = run(capsys, "compute", "--a", "3", "--b", "2000003", "--method", "brute", "--brute-cap", "1000")
    assert rc == 3
    assert "error:" in err


def test_gaps_output(capsys):
    rc, out, _ = run(capsys, "gaps", "--a", "3", "--b", "5")
    assert rc == 0
    assert out.splitlines() == ["1\t-", "2\tp", "4\t-", "7\tp"]
    rc, out, _ = run(capsys, "gaps", "--a", "2", "--b", "7")
    assert rc == 0
    assert out.splitlines() == ["1\t-", "3\tp", "5\tp"]


def test_gaps_empty(capsys):
    rc, out, _ = run(capsys, "gaps", "--a", "1", "--b", "5")
    assert rc == 0
    assert out == ""


def test_verify_coj2_small(capsys):
    rc, out, _ = run(capsys, "verify", "coj2", "--a-max", "4", "--b-max", "60", "--b-rule", "upto")
    assert rc == 0
    assert "PASS" in out
    assert "exception 3,5 (expected)" in out


def test_verify_coj2_partial_grid(capsys):
    # grid too small to contain (3,7); the expected set shrinks with it
    rc, out, _ = run(capsys, "verify", "coj2", "--a", "3", "--b-max", "6", "--b-rule", "upto")
    assert rc == 0
    assert "exception 3,4 (expected)" in out and "3,7" not in out


def test_verify_thm1_case(capsys):
    rc, out, _ = run(capsys, "verify", "thm1", "--case", "4")
    assert rc == 0
    assert "PASS: thm1 case 4" in out


def test_verify_thm3_single(capsys):
    rc, out, _ = run(capsys, "verify", "thm3", "--a", "3")
    assert rc == 0
    assert "PASS: thm3 a=3" in out


def test_verify_coj1_small(capsys):
    rc, out, _ = run(capsys, "verify", "coj1", "--a-max", "3", "--b-max", "30")
    assert rc == 0
    assert "equality 3,5 (expected)" in out


def test_verify_bounds_rs(capsys):
    rc, out, _ = run(capsys, "verify", "bounds", "--check", "rs", "--x-max", "1e5")
    assert rc == 0
    assert "rosser-schoenfeld" in out


def test_bad_inputs(capsys):
    rc, _, err = run(capsys, "verify", "thm3", "--a-range", "5:3")
    assert rc == 2
    rc, _, err = run(capsys, "verify", "thm3", "--a-range", "x:y")
    assert rc == 2
    rc, _, _ = run(capsys, "verify", "nothing")
    assert rc == 2


def test_corrupt_checkpoint_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("garbage\n")
    rc, _, err = run(capsys, "verify", "coj2", "--a-max", "3", "--b-max", "10", "--b-rule", "upto", "--resume", str(bad))
    assert rc == 4
    assert "error:" in err


def test_csv_out_threads_identical(tmp_path, capsys):
    one = tmp_path / "t1.csv"
    four = tmp_path / "t4.csv"
    rc1, _, _ = run(capsys, "verify", "coj2", "--a-max", "6", "--format", "csv", "--out", str(one))
    rc4, _, _ = run(capsys, "verify", "coj2", "--a-max", "6", "--format", "csv", "--out", str(four), "--threads", "4")
    assert rc1 == rc4 == 0
    assert one.read_bytes() == four.read_bytes()
    header = one.read_text().splitlines()[0]
    assert header == verify.CSV_HEADER
