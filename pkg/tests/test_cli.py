import json
import subprocess
import sys

import pytest

from quadf2 import cli
from quadf2.cospancat import epsilon, parse_cospan, sigma
from quadf2.quadform import H0, H1
from quadf2.spancat import identity_span


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_identifies_plane_plus_point(capsys):
    code, out, _ = run(capsys, "classify", "H0+x1", "H1+x1")
    assert code == 0
    classes = [ln.split(": ")[1].split()[0] for ln in out.splitlines()]
    assert classes == ["H0+x1", "H0+x1"]


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "H1+x0", "--format", "json-lines")
    rec = json.loads(out)
    assert code == 0 and rec["class"] == "H1+x0" and rec["rad_type"] == 0 and rec["arf"] == 1


def test_classify_from_file(tmp_path, capsys):
    p = tmp_path / "s.txt"
    p.write_text("2\n01\n10\n11\n")
    code, out, _ = run(capsys, "classify", str(p))
    assert code == 0 and ": H1 " in out


def test_enum_homs_and_group(capsys):
    code, out, _ = run(capsys, "enum-homs", "x0", "H0")
    assert code == 0 and out.splitlines()[0] == "|Hom(x0, H0)| = 2"
    code, out, _ = run(capsys, "orth-group", "H1+H0")
    assert out.strip() == "|O(H1+H0)| = 120"
    code, out, _ = run(capsys, "orth-group", "H1", "--elements", "--format", "json-lines")
    recs = [json.loads(ln) for ln in out.splitlines()]
    assert recs[0]["order"] == 6 and len(recs) == 7


def test_exit_codes(capsys):
    assert run(capsys, "orth-group", "H0^5")[0] == cli.EXIT_BOUND
    assert run(capsys, "classify", "H7")[0] == cli.EXIT_USAGE
    assert run(capsys, "frobnicate")[0] == cli.EXIT_USAGE
    assert run(capsys, "epsilon-lift", "H0", "H0", "--matrix", "1,0")[0] == cli.EXIT_USAGE
    assert run(capsys, "verify", "--suite", "nope")[0] == cli.EXIT_USAGE


def test_epsilon_lift_output_parses(capsys):
    code, out, _ = run(capsys, "epsilon-lift", "H0", "H1", "--matrix", "11,01")
    assert code == 0
    t = parse_cospan(out.splitlines())
    assert epsilon(t).to_strings() == ["11", "01"]


def test_sigma_lift_and_compose(tmp_path, capsys):
    span = tmp_path / "span.txt"
    span.write_text(cli.span_to_text(identity_span(H0)) + "\n")
    code, out, _ = run(capsys, "sigma-lift", str(span))
    assert code == 0
    t = parse_cospan(out.splitlines())
    assert sigma(t) == identity_span(H0)
    c = tmp_path / "c.txt"
    c.write_text(out)
    code, out, _ = run(capsys, "compose-cospan", str(c), str(c))
    assert code == 0 and sigma(parse_cospan(out.splitlines())) == identity_span(H0)
    code, out, _ = run(capsys, "compose-span", str(span), str(span))
    assert code == 0 and out.splitlines()[-2:] == ["10|10", "01|01"]


def test_iso_table(capsys):
    code, out, _ = run(capsys, "iso-table")
    assert code == 0
    lines = out.splitlines()
    i = lines.index("Hom(iso_V, iso_W)")
    diag = [int(ln.split()[k + 1]) for k, ln in enumerate(lines[i + 2 : i + 7])]
    assert diag == [1, 1, 1, 2, 6]


def test_verify_list_matches_suites(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0
    assert [int(ln.split()[0]) for ln in out.splitlines()] == list(range(1, 13))


def test_verify_single_suite_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "arf", "--format", "json-lines")
    recs = [json.loads(ln) for ln in out.splitlines()]
    assert code == 0
    assert all(set(r) == {"suite", "case", "expected", "actual", "status"} for r in recs)
    assert all(r["status"] == "pass" for r in recs)


def test_output_is_stable(capsys):
    first = run(capsys, "verify", "--suite", "classification", "--suite", "pushout")
    second = run(capsys, "verify", "--suite", "classification", "--suite", "pushout")
    assert first == second and first[0] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "quadf2", "classify", "H0"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("H0: H0")


@pytest.mark.parametrize("space", [H0, H1])
def test_space_text_roundtrip_via_cli(tmp_path, capsys, space):
    p = tmp_path / "s.txt"
    p.write_text(space.to_text())
    assert cli.load_space(str(p)) == space
