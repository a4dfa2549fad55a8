from ampfsi import cli
from ampfsi.harness import EXIT_BLOWUP, EXIT_CONFIG, EXIT_OK, EXIT_RATE


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSolve:
    def test_basic_run(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--problem", "MP-I1",
                               "--delta", "1", "--n", "10",
                               "--t-final", "0.05")
        assert code == EXIT_OK
        assert "max-norm error" in out

    def test_blowup_exit(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--problem", "MP-I1",
                               "--delta", "0.01", "--scheme", "traditional",
                               "--n", "20", "--d2", "0", "--dt", "0.025",
                               "--steps", "500")
        assert code == EXIT_BLOWUP
        assert "BLOW-UP" in out

    def test_bad_problem_exit(self, capsys):
        code, _, err = run_cli(capsys, "solve", "--problem", "MP-X9")
        assert code == EXIT_CONFIG
        assert "configuration error" in err

    def test_config_file(self, capsys, tmp_path):
        ini = tmp_path / "case.ini"
        ini.write_text("[physics]\ndelta = 1\n[grid]\nn = 10\n"
                       "[time]\nt_final = 0.05\n[solution]\nproblem = MP-I1\n")
        code, out, _ = run_cli(capsys, "solve", "--config", str(ini))
        assert code == EXIT_OK

    def test_missing_config_file(self, capsys):
        code, _, err = run_cli(capsys, "solve", "--config", "/nope/zzz.ini")
        assert code == EXIT_CONFIG


class TestConverge:
    def test_rates_pass(self, capsys, tmp_path):
        csv = tmp_path / "c.csv"
        code, out, _ = run_cli(capsys, "converge", "--problem", "MP-I1",
                               "--delta", "1", "--grids", "10,20,40",
                               "--t-final", "0.1", "--out-csv", str(csv))
        assert code == EXIT_OK
        assert "rate" in out
        assert csv.exists()

    def test_rate_window_failure(self, capsys):
        # an impossible rate window forces the rate-check exit code
        code, out, _ = run_cli(capsys, "converge", "--problem", "MP-I1",
                               "--delta", "1", "--grids", "10,20",
                               "--t-final", "0.1",
                               "--rate-min", "3.5", "--rate-max", "4.0")
        assert code == EXIT_RATE
        assert "rate check failed" in out


class TestModes:
    def test_stability_map(self, capsys):
        code, out, _ = run_cli(capsys, "modes", "--deltas", "0.01,1",
                               "--modes", "2", "--dts", "0.025")
        assert code == EXIT_OK
        assert "unconditionally unstable" in out
        assert "weakly stable" in out


class TestDispersion:
    def test_inviscid(self, capsys):
        code, out, _ = run_cli(capsys, "dispersion", "--deltas", "1")
        assert code == EXIT_OK
        assert "5.8359" in out

    def test_viscous(self, capsys):
        code, out, _ = run_cli(capsys, "dispersion", "--deltas", "1",
                               "--mu", "0.05")
        assert code == EXIT_OK
        assert "MP-V1" in out and "MP-V2" in out


class TestMmsCheck:
    def test_runs_and_converges(self, capsys):
        code, out, _ = run_cli(capsys, "mms-check", "--grids", "10,20",
                               "--t-final", "0.1", "--mu", "0.05")
        assert code == EXIT_OK
