import os
import subprocess
import sys

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "syzkit", *args],
        capture_output=True, text=True,
        cwd=os.path.dirname(FIXTURES) or ".",
    )
    return proc


def fx(name):
    return os.path.join(FIXTURES, name)


def test_resolve_residue_field_ci():
    out = run_cli("resolve", fx("ci2_k.module"), "--window", "10", "--machine")
    assert out.returncode == 0
    assert "betti = 1,2,3,4,5,6,7,8,9,10,11" in out.stdout
    assert "complexity = 2" in out.stdout


def test_resolve_free_module():
    out = run_cli("resolve", fx("ci2_free.module"), "--window", "6", "--machine")
    assert out.returncode == 0
    assert "betti = 1,0,0,0,0,0,0" in out.stdout
    assert "complexity = 0" in out.stdout
    assert "complexity_status = exact-finite-pd" in out.stdout


def test_resolve_golod_doubling():
    out = run_cli("resolve", fx("golod_k.module"), "--window", "10", "--machine")
    assert out.returncode == 0
    assert "betti = " + ",".join(str(2**i) for i in range(11)) in out.stdout


def test_depth_commands():
    assert "depth = 0" in run_cli("depth", fx("ci2_k.module"), "--machine").stdout
    assert "depth = 1" in run_cli("depth", fx("hyp_ax.module"), "--machine").stdout
    assert "depth = 2" in run_cli("depth", fx("s2_free.module"), "--machine").stdout


def test_tor_command():
    out = run_cli("tor", fx("hyp_axy.module"), fx("hyp_ax2.module"),
                  "--window", "6", "--machine")
    assert out.returncode == 0
    assert "q = 1" in out.stdout
    assert "q_rigor = finite-pd" in out.stdout
    assert "tor_1 = 2:1" in out.stdout


def test_depth_formula_q0():
    out = run_cli("depth-formula", fx("hyp_ax.module"), fx("hyp_axy.module"),
                  "--window", "8", "--machine")
    assert out.returncode == 0
    assert "lhs = 1" in out.stdout and "rhs = 1" in out.stdout
    assert "verdict = true" in out.stdout


def test_depth_formula_q1():
    out = run_cli("depth-formula", fx("hyp_axy.module"), fx("hyp_ax2.module"),
                  "--window", "8", "--machine")
    assert out.returncode == 0
    assert "q = 1" in out.stdout
    assert "verdict = true" in out.stdout


def test_reduce_command():
    out = run_cli("reduce", fx("ci2_k.module"), "--max-degree", "2",
                  "--window", "9", "--machine")
    assert out.returncode == 0
    assert "complexity_chain = 2,1,0" in out.stdout
    assert "all_ses_exact = true" in out.stdout


def test_construct_flagship_and_emit(tmp_path):
    emit = str(tmp_path / "out.module")
    out = run_cli("construct", fx("period1_x.complex"), fx("period1_y.complex"),
                  "--emit", emit, "--machine")
    assert out.returncode == 0
    assert "complexity_chain = 2,1,0" in out.stdout
    assert "ses_1_exact = true" in out.stdout and "ses_2_exact = true" in out.stdout
    assert "infinite_ci_witness = false" in out.stdout
    assert os.path.exists(emit) and os.path.exists(emit + ".ring")
    resolved = run_cli("resolve", emit, "--window", "8", "--machine")
    assert resolved.returncode == 0
    assert "betti = 1,2,3,4,5,6,7,8,9" in resolved.stdout


def test_construct_period_four_witness():
    out = run_cli("construct", fx("period1_x.complex"), fx("period4.complex"),
                  "--machine")
    assert out.returncode == 0
    assert "last_truncation_period = 4" in out.stdout
    assert "infinite_ci_witness = true" in out.stdout


def test_period_commands():
    one = run_cli("period", fx("period1_x.complex"), "--machine")
    assert "period = 1" in one.stdout
    two = run_cli("period", fx("period2.complex"), "--window", "10", "--machine")
    assert "period = 2" in two.stdout
    assert "below_1 = only-zero-map (rigorous=true)" in two.stdout
    none = run_cli("period", fx("acyclic.complex"), "--machine")
    assert "period = none" in none.stdout


def test_exit_code_parse_error(tmp_path):
    bad = tmp_path / "bad.module"
    bad.write_text("module { generators = [0]  oops }")
    out = run_cli("resolve", str(bad))
    assert out.returncode == 2


def test_exit_code_degree_bound():
    out = run_cli("resolve", fx("hyp_ax.module"), "--window", "12",
                  "--degree-bound", "8")
    assert out.returncode == 3


def test_exit_code_window():
    out = run_cli("resolve", fx("ci2_k.module"), "--window", "4")
    assert out.returncode == 4


def test_machine_mode_determinism():
    a = run_cli("resolve", fx("ci2_k.module"), "--window", "8", "--machine")
    b = run_cli("resolve", fx("ci2_k.module"), "--window", "8", "--machine")
    assert a.stdout == b.stdout and a.returncode == b.returncode == 0
    c = run_cli("depth-formula", fx("hyp_ax.module"), fx("hyp_axy.module"),
                "--window", "8", "--machine")
    d = run_cli("depth-formula", fx("hyp_ax.module"), fx("hyp_axy.module"),
                "--window", "8", "--machine")
    assert c.stdout == d.stdout
