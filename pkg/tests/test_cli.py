import io
from pathlib import Path

import pytest

from artin_polyfree.cli import main

GRAPHS = Path(__file__).resolve().parent.parent / "graphs"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_equal_example():
    code, out = run("equal", GRAPHS / "triangle444.toml", "c b c a b a c b c b", "b c b c a b a c b c")
    assert code == 0 and out == "equal\n"
    code, out = run("equal", GRAPHS / "triangle444.toml", "a", "b")
    assert code == 1 and out == "not equal\n"


def test_normalize_example_and_fixpoint():
    code, out = run("normalize", GRAPHS / "dihedral4.txt", "b a b a")
    assert code == 0 and out == "a b a b\n"
    code, again = run("normalize", GRAPHS / "dihedral4.txt", out.strip())
    assert again == out


def test_order_override():
    code, out = run("normalize", GRAPHS / "dihedral4.txt", "a b a b", "--order", "b b^-1 a a^-1")
    assert out == "b a b a\n"
    code, _ = run("normalize", GRAPHS / "dihedral4.txt", "a", "--order", "b a")
    assert code == 2


def test_verify_example():
    code, out = run("verify", "L3.10", GRAPHS / "triangle444.toml", "--radius", 4)
    assert code == 0 and out.strip().endswith("violations 0")


def test_verify_reports_violations():
    code, out = run("verify", "L5.11", GRAPHS / "triangle444.toml", "--radius", 4, "--r", "c")
    assert code == 1 and "a b a^-1 b^-1 (b, -)" in out


def test_trace_replay(tmp_path):
    dump = tmp_path / "trace.txt"
    code, out = run("trace", GRAPHS / "triangle444.toml", "c b c a b a c b c b", "-o", dump)
    assert code == 0 and out == "normal form: b c b c a b a c b c\n"
    code, out = run("trace", GRAPHS / "triangle444.toml", "--replay", dump)
    assert code == 0 and "matches" in out
    text = dump.read_text().replace("result: b c b c a b a c b c", "result: a")
    dump.write_text(text)
    code, out = run("trace", GRAPHS / "triangle444.toml", "--replay", dump)
    assert code == 1


def test_geodesic_command():
    code, out = run("geodesic", GRAPHS / "dihedral4.txt", "a b a b")
    assert code == 0 and out.startswith("geodesic length 4") and out.strip().endswith("initials a b")
    code, out = run("geodesic", GRAPHS / "dihedral4.txt", "b a b a b^-1")
    assert code == 1 and out.startswith("not geodesic")


def test_kernel_commands(tmp_path):
    code, out = run("omega", GRAPHS / "triangle444.toml", "a^-1 b^-1 a^-1 b^-1", "--r", "c")
    assert code == 0 and out.splitlines() == ["omega: a- b-", "delta: a b^-1 a^-1 b, b a^-1 b^-1 a alpha 2"]
    dest = tmp_path / "basis.txt"
    code, _ = run("kernel-basis", GRAPHS / "triangle444.toml", "--r", "c", "--radius", 4, "-o", dest)
    assert code == 0 and "eliminated: b a^-1 b^-1 a via R(a^-1 b^-1 a^-1 b^-1) vertex a sign -" in dest.read_text()
    code, out = run("tower", GRAPHS / "triangle444.toml", "--radius", 2)
    assert code == 0 and len(out.splitlines()) == 3
    code, _ = run("tower", GRAPHS / "square2222.txt")
    assert code == 2


def test_ball_command():
    code, out = run("ball", GRAPHS / "dihedral4.txt", "--radius", 1)
    assert code == 0 and out.splitlines()[:2] == ["class 0: e", "    e"]


@pytest.mark.parametrize("argv", [
    ("normalize", GRAPHS / "dihedral4.txt", "a z"),
    ("normalize", GRAPHS / "missing.txt", "a"),
    ("frobnicate",),
    ("equal", GRAPHS / "dihedral4.txt", "a"),
])
def test_usage_errors(argv):
    code, _ = run(*argv)
    assert code == 2


def test_budget_exit_code():
    code, _ = run("normalize", GRAPHS / "triangle444.toml", "c b c a b a c b c b", "--budget", 1)
    assert code == 3
