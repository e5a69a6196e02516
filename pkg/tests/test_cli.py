import subprocess
import sys
import time

import pytest

from ifas.cli import RunConfig, main
from ifas.invalg import builtin, format_algebra
from ifas.exactlinalg import QQ


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_factorize_example(capsys):
    code, out, _ = run(capsys, "factorize", "1 -> 0 ; 0: 1- 0+")
    assert code == 0
    assert "g              : [1^+, 0^-]" in out
    assert "phi            : 0 0 -> [0]" in out
    assert out.rstrip().endswith("reconstruction : ok")


def test_factorize_identity_machine(capsys):
    code, out, _ = run(capsys, "--format", "machine", "factorize", "2 -> 2 ; 0: 0+ ; 1: 1+ ; 2: 2+")
    assert code == 0
    assert "g = [0^+, 1^+, 2^+]\nd = [0^+, 1^+, 2^+]\nh = [0^+, 1^+, 2^+]\n" in out


def test_factorize_based(capsys):
    code, out, _ = run(capsys, "factorize", "--based", "2 -> 1 ; 0: 2- 0+ ; 1: 1-")
    assert code == 0 and "rho" in out
    code, _, err = run(capsys, "factorize", "--based", "1 -> 1 ; 0: 1+ ; 1: 0+")
    assert code == 2 and "basepoint" in err


def test_factorize_reports_parse_position(capsys):
    code, _, err = run(capsys, "factorize", "1 -> 0 ; 0: 1- 0")
    assert code == 2
    assert "line 1, column 16" in err


def test_factorize_reads_stdin():
    text = "# two morphisms\n1 -> 0 ; 0: 1- 0+\n\n0 -> 1 ; 0: 0- ; 1: .\n"
    proc = subprocess.run([sys.executable, "-m", "ifas", "factorize"], input=text,
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.count("reconstruction : ok") == 2
    proc = subprocess.run([sys.executable, "-m", "ifas", "factorize"], input="0 -> 0\n0 -> x\n",
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "line 1" in proc.stderr


def test_verify_selectors(capsys):
    code, out, _ = run(capsys, "verify", "dihedral-subgroup", "--max-n", "6")
    assert code == 0 and "PASS dihedral-subgroup" in out and "seed 20240101" in out
    code, out, _ = run(capsys, "verify", "d-hplus", "--max-n", "4")
    assert code == 0 and "PASS d-hplus" in out


def test_verify_all_within_a_minute(capsys):
    t0 = time.perf_counter()
    code, out, _ = run(capsys, "verify", "all", "--max-n", "2")
    assert code == 0
    assert out.count("PASS") == 7
    assert time.perf_counter() - t0 < 60


def test_machine_output_is_deterministic(capsys):
    argv = ("--format", "machine", "verify", "delta-h", "--max-n", "1", "--samples", "200",
            "--seed", "5")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0
    assert "seed = 5" in first[1]


def test_homology_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "homology", "hochschild", "--degrees", "3")
    assert code == 0
    assert out.splitlines()[1:] == ["H_0 = Q^1", "H_1 = Q^0", "H_2 = Q^0", "H_3 = Q^0"]
    path = tmp_path / "c2.alg"
    path.write_text(format_algebra(builtin("group_c2", QQ)))
    code, out, _ = run(capsys, "--format", "machine", "homology", "hochschild",
                       "--algebra", str(path), "--degrees", "2")
    assert code == 0 and "free_rank = 2" in out


def test_homology_refusals(capsys):
    code, _, err = run(capsys, "homology", "dihedral", "--algebra", "dual_numbers_plus",
                       "--ring", "F2")
    assert code == 2 and "refused" in err
    code, _, err = run(capsys, "homology", "hochschild", "--algebra", "nonesuch")
    assert code == 2


def test_bar_command(capsys):
    code, out, _ = run(capsys, "bar", "1 -> 0 ; 0: 1- 0+", "--tensor", "2 2",
                       "--algebra", "mat2_transpose")
    assert code == 0 and out.strip() == "1 * E00"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "dihedral-subgroup", "--samples", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-check"])
    assert exc.value.code == 2
    with pytest.raises(ValueError):
        RunConfig("verify", sample_count=0)
