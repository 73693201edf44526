import json
import subprocess
import sys

import numpy as np
import pytest

from phloewner import io
from phloewner.cli import main
from phloewner.errors import InvalidParameter
from phloewner.excitation import generate_record, select_interpolation_points
from phloewner.freqest import FrequencySample
from phloewner.lti import DescriptorSystem, PHForm, benchmark_ladder, build_rlc_ladder, ph_to_descriptor


class TestModelJSON:
    def test_ph_round_trip(self, tmp_path):
        ph = build_rlc_ladder(3, 0.7, 1.3, 0.2, "distributed")
        io.write_model(tmp_path / "m.json", ph)
        back = io.read_model(tmp_path / "m.json")
        assert isinstance(back, PHForm)
        for k in io.PH_KEYS:
            np.testing.assert_array_equal(getattr(back, k), getattr(ph, k))
        d = json.loads((tmp_path / "m.json").read_text())
        assert (d["kind"], d["clock"], d["n"], d["m"], d["p"]) == ("ph", "continuous", 6, 1, 1)

    def test_descriptor_round_trip(self, rng, tmp_path):
        sys = DescriptorSystem(rng.standard_normal((3, 3)), rng.standard_normal((3, 3)), rng.standard_normal((3, 1)),
                               rng.standard_normal((2, 3)), rng.standard_normal((2, 1)), Ts=1 / 3)
        io.write_model(tmp_path / "d.json", sys)
        back = io.read_model(tmp_path / "d.json")
        assert back.Ts == sys.Ts
        for k in "EABCD":
            np.testing.assert_array_equal(getattr(back, k), getattr(sys, k))

    def test_complex_rejected(self):
        sys = DescriptorSystem([[1.0]], [[-1j]], [[1.0]], [[1.0]], [[0.0]])
        with pytest.raises(InvalidParameter):
            io.model_to_dict(sys)

    def test_unknown_kind(self):
        with pytest.raises(InvalidParameter):
            io.model_from_dict({"kind": "tf", "n": 1, "m": 1, "p": 1})


class TestCSV:
    def test_signal_round_trip_is_exact(self, tmp_path):
        plan = select_interpolation_points(256, 8, Ts=0.01)
        rec = generate_record(ph_to_descriptor(benchmark_ladder(2)), plan, 1e-3, 4)
        io.write_signal_csv(tmp_path / "s.csv", rec)
        back = io.read_signal_csv(tmp_path / "s.csv")
        assert back.Ts == rec.Ts
        np.testing.assert_array_equal(back.u, rec.u)
        np.testing.assert_array_equal(back.y, rec.y)
        header = (tmp_path / "s.csv").read_text().splitlines()[0]
        assert header == "k,t,u_re,u_im,y_re,y_im"

    def test_freq_round_trip(self, tmp_path):
        samples = [FrequencySample(np.exp(0.1j), 0.1 / 3 - 2j), FrequencySample(np.exp(-0.1j), np.pi)]
        io.write_freq_csv(tmp_path / "f.csv", samples)
        assert io.read_freq_csv(tmp_path / "f.csv") == samples

    def test_bad_header(self, tmp_path):
        (tmp_path / "x.csv").write_text("a,b,c,d,e,f\n0,0,0,0,0,0\n1,1,1,1,1,1\n")
        with pytest.raises(InvalidParameter):
            io.read_signal_csv(tmp_path / "x.csv")


def run_chain(tmp_path, prefix="", sigma="0", disc="implicit-euler", svd_tol="1e-10"):
    p = lambda name: str(tmp_path / f"{prefix}{name}")  # noqa: E731
    assert main(["ladder", "--N", "3", "--r", "2", "--dissipation", "distributed", "--out", p("lad.json")]) == 0
    assert main(["simulate", "--model", p("lad.json"), "--K", "4096", "--Ts", "0.01", "--m", "16",
                 "--sigma", sigma, "--seed", "7", "--disc", disc, "--out", p("rec.csv")]) == 0
    assert main(["estimate", "--data", p("rec.csv"), "--K", "4096", "--m", "16", "--kmin", "1024",
                 "--out", p("freq.csv")]) == 0
    assert main(["identify", "--data", p("rec.csv"), "--Ts", "0.01", "--m", "16", "--svd-tol", svd_tol,
                 "--dreg", "1e-5", "--out-ph", p("ph.json"), "--out-ss", p("ss.json"), "--diag", p("diag.json")]) == 0
    assert main(["evaluate", "--ref", p("lad.json"), "--cand", p("ph.json"), "--wmin", "1e-3", "--wmax", "1e3",
                 "--wpts", "100", "--out", p("eval.json")]) == 0
    return p


class TestCLI:
    def test_full_chain(self, tmp_path):
        p = run_chain(tmp_path)
        diag = json.load(open(p("diag.json")))
        assert diag["intermediate_order"] == 6
        assert diag["passivity"]["verdict"] is True
        ev = json.load(open(p("eval.json")))
        assert ev["h2_rel"] < 1e-3
        assert len(ev["bode"]["w"]) == 100
        assert json.load(open(p("rec.csv.meta.json")))["rng"] == "PCG64"
        assert len(io.read_freq_csv(p("freq.csv"))) == 16

    def test_evaluate_csv(self, tmp_path):
        p = run_chain(tmp_path)
        assert main(["evaluate", "--ref", p("lad.json"), "--cand", p("ss.json"), "--wpts", "50",
                     "--out", p("bode.csv")]) == 0
        rows = np.loadtxt(p("bode.csv"), delimiter=",", skiprows=1)
        assert rows.shape == (50, 5)
        assert json.load(open(p("bode.csv.report.json")))["order"] == 6

    def test_deterministic(self, tmp_path):
        a = run_chain(tmp_path, "a_", sigma="1e-4", disc="zoh", svd_tol="3e-4")
        b = run_chain(tmp_path, "b_", sigma="1e-4", disc="zoh", svd_tol="3e-4")
        for name in ("rec.csv", "freq.csv", "ph.json", "ss.json", "diag.json", "eval.json"):
            assert open(a(name), "rb").read() == open(b(name), "rb").read(), name

    def test_stage_error_exit_code(self, tmp_path, capsys):
        p = run_chain(tmp_path)
        code = main(["identify", "--data", p("rec.csv"), "--Ts", "0.01", "--m", "16", "--svd-tol", "2",
                     "--out-ph", p("x.json"), "--out-ss", p("y.json"), "--diag", p("z.json")])
        assert code == 2
        assert capsys.readouterr().err.startswith("[loewner] DegenerateData")

    def test_non_stage_error_is_tagged_with_command(self, tmp_path, capsys):
        assert main(["ladder", "--N", "0", "--out", str(tmp_path / "l.json")]) == 2
        assert capsys.readouterr().err.startswith("[ladder] InvalidParameter")

    def test_console_entry(self, tmp_path):
        out = tmp_path / "lad.json"
        res = subprocess.run([sys.executable, "-m", "phloewner.cli", "ladder", "--N", "2", "--out", str(out)],
                             capture_output=True, text=True)
        assert res.returncode == 0, res.stderr
        assert io.read_model(out).n == 4
