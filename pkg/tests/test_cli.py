import math

import numpy as np
import pytest

from fockweyl.cli import main, parse_complex, parse_masses
from fockweyl.fock import BasisSpec, apply_exponent_to_vacuum, load_state
from fockweyl.states import EtaParam, eta_exponent


class TestParsers:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("0.5+0.3i", 0.5 + 0.3j),
            ("0.5-0.3i", 0.5 - 0.3j),
            ("-1.25", -1.25),
            ("0.7i", 0.7j),
            ("-0.7i", -0.7j),
        ],
    )
    def test_complex(self, text, expected):
        assert parse_complex(text) == expected

    def test_complex_rejects_garbage(self):
        from fockweyl.cli import UsageError

        with pytest.raises(UsageError):
            parse_complex("1 + 2i")

    def test_masses(self):
        assert parse_masses("1,2,3") == [1.0, 2.0, 3.0]


class TestBuildState:
    def test_eta_roundtrip(self, tmp_path):
        out = tmp_path / "s.txt"
        code = main(
            [
                "build-state",
                "--family",
                "eta",
                "--eta",
                "0.5+0.3i",
                "--cutoff",
                "16",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        loaded = load_state(str(out))
        direct = apply_exponent_to_vacuum(
            BasisSpec(2, 16), eta_exponent(EtaParam(0.5 + 0.3j))
        )
        assert np.array_equal(loaded.amplitudes, direct.amplitudes)

    def test_multipartite(self, tmp_path):
        out = tmp_path / "m.txt"
        code = main(
            [
                "build-state",
                "--family",
                "multipartite",
                "--masses",
                "1,2,3,4",
                "--q",
                "0.4",
                "--rho",
                "0.3,-0.2,0.5",
                "--cutoff",
                "4",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        assert load_state(str(out)).basis == BasisSpec(4, 4)

    def test_missing_flag_is_usage_error(self):
        assert main(["build-state", "--family", "eta", "--cutoff", "8"]) == 2

    def test_unknown_command_exits_2(self, capsys):
        assert main(["definitely-not-a-command"]) == 2


class TestResidualCommand:
    def test_pass_exit_zero(self, tmp_path, capsys):
        code = main(
            [
                "residual",
                "--family",
                "eta",
                "--eta",
                "0.5+0.3i",
                "--cutoff",
                "12",
            ]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "op=Q1-Q2" in out and "op=P1+P2" in out
        assert "verdict=pass" in out


class TestWignerCommand:
    def test_grid_and_figure(self, tmp_path):
        state_path = tmp_path / "c.txt"
        main(
            [
                "build-state",
                "--family",
                "coherent",
                "--z",
                "0.8+0.4i",
                "--cutoff",
                "10",
                "--out",
                str(state_path),
            ]
        )
        grid_path = tmp_path / "w.txt"
        code = main(
            [
                "wigner",
                "--state",
                str(state_path),
                "--radius",
                "4",
                "--points",
                "41",
                "--out",
                str(grid_path),
            ]
        )
        assert code == 0
        lines = grid_path.read_text().strip().split("\n")
        assert len(lines) == 1 + 41 * 41
        assert (tmp_path / "w.png").exists()

    def test_no_figure_flag(self, tmp_path):
        state_path = tmp_path / "c.txt"
        main(
            ["build-state", "--family", "coherent", "--z", "0.5", "--cutoff", "6",
             "--out", str(state_path)]
        )
        grid_path = tmp_path / "w.txt"
        main(
            ["wigner", "--state", str(state_path), "--radius", "3", "--points", "11",
             "--out", str(grid_path), "--no-figure"]
        )
        assert not (tmp_path / "w.png").exists()


class TestGaussIntegralCommand:
    def test_worked_example(self, capsys):
        code = main(["gauss-integral", "--b", "1", "--v", "0"])
        out = capsys.readouterr().out
        assert code == 0
        val = float(dict(ln.split("=", 1) for ln in out.strip().split("\n"))["closed_form"])
        assert val == pytest.approx(math.sqrt(math.pi))


class TestBmatrixCommand:
    def test_equal_masses(self, capsys):
        code = main(["bmatrix", "--masses", "1,1,1"])
        out = capsys.readouterr().out
        assert code == 0
        fields = dict(ln.split("=", 1) for ln in out.strip().split("\n"))
        assert fields["B"] == "2.0,1.0;1.0,2.0"
        assert float(fields["det_closed"]) == pytest.approx(3.0)
        assert fields["verdict"] == "pass"


class TestCompletenessCommand:
    def test_eta(self, capsys):
        code = main(
            ["completeness", "--family", "eta", "--cutoff", "8", "--radius", "5",
             "--points", "41", "--sector-bound", "2"]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "verdict=pass" in out


class TestVerifyAll:
    def test_single_check_report_and_figures(self, tmp_path):
        report = tmp_path / "report.txt"
        code = main(
            ["verify-all", "--level", "quick", "--checks", "bmatrix,completeness",
             "--report", str(report)]
        )
        assert code == 0
        text = report.read_text()
        assert text.startswith("check=suite")
        assert "check=completeness_eta" in text
        figs = list(tmp_path.glob("report_*.png"))
        assert figs, "expected convergence figures alongside the report"

    def test_deterministic_reports(self, tmp_path):
        r1, r2 = tmp_path / "r1.txt", tmp_path / "r2.txt"
        for path in (r1, r2):
            code = main(
                ["verify-all", "--level", "quick", "--checks", "bmatrix,gauss-integral",
                 "--report", str(path), "--no-figure"]
            )
            assert code == 0
        assert r1.read_bytes() == r2.read_bytes()

    def test_unknown_check_is_usage_error(self, capsys):
        assert main(["verify-all", "--checks", "nope"]) == 2
