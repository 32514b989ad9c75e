import json
import math

import pytest

from er_dirichlet.cli import main, parse_axis, parse_complex
from er_dirichlet.errors import DomainError
from er_dirichlet.identities import IdentityReport


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParsing:
    @pytest.mark.parametrize("text,z", [("-2.5+1.3i", -2.5 + 1.3j), ("0.5i", 0.5j), ("-1", -1),
                                        ("1.0+0i", 1)])
    def test_complex(self, text, z):
        assert parse_complex(text) == z

    def test_complex_rejects(self):
        with pytest.raises(DomainError):
            parse_complex("1+2k")
        with pytest.raises(DomainError):
            parse_complex("inf")

    def test_axis(self):
        assert parse_axis("-1:1:3") == ("grid", [-1.0, 0.0, 1.0])
        assert parse_axis("0.2:0.9") == ("range", (0.2, 0.9))
        assert parse_axis("0.3,0.5") == ("grid", [0.3, 0.5])


class TestVerify:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "prop1", "--x", "0.3", "--y", "0.5")
        assert code == 0
        d = json.loads(out)
        assert d["pass"] is True
        # the tail bound is rigorous, so even a short product passes
        code, out, _ = run(capsys, "verify", "prop1", "--x", "0.3", "--y", "0.5", "--terms", "10",
                           "--tol", "1e-12")
        assert code == 0 and json.loads(out)["abs_residual"] > 1e-3

    def test_round_trip(self, capsys):
        code, out, _ = run(capsys, "verify", "prop6", "--t", "0.5", "--terms", "1000",
                           "--tol", "1e-3")
        rep = IdentityReport.from_dict(json.loads(out))
        assert rep.rejudge() is True and code == 0

    def test_fail_exit(self, capsys):
        # below the accuracy of the quadrature the comparison has to fail
        code, out, _ = run(capsys, "verify", "funceq", "--s", "-2.5+1.3i", "--a", "0.9",
                           "--tol", "1e-20")
        assert code == 1 and json.loads(out)["pass"] is False

    def test_domain_error_object(self, capsys):
        code, out, _ = run(capsys, "verify", "prop2", "--zeta", "1.0+0i")
        assert code == 2
        d = json.loads(out)
        assert set(d) == {"code", "message", "offending_input"}

    def test_missing_param(self, capsys):
        code, out, _ = run(capsys, "verify", "prop3", "--x", "0.3", "--y", "0.5")
        assert code == 2 and json.loads(out)["offending_input"] == "theta"

    def test_bad_tolerance(self, capsys):
        code, _, _ = run(capsys, "verify", "prop4", "--t", "0.5", "--tol", "-1")
        assert code == 2

    def test_negative_values(self, capsys):
        code, out, _ = run(capsys, "verify", "funceq", "--s", "-1", "--a", "0.5")
        d = json.loads(out)
        assert code == 0 and abs(d["gamma_direct"]["re"] - 2 / 9) <= 1e-15

    def test_deterministic(self, capsys):
        argv = ("verify", "entry11", "--X", "1.0", "--A", "0.7", "--tol", "1e-4")
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


class TestSweep:
    def test_grid(self, capsys):
        code, out, _ = run(capsys, "sweep", "prop4", "--t", "-0.9:0.9:19", "--tol", "1e-12")
        rows = json.loads(out)
        assert code == 0 and len(rows) == 19

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "sweep", "prop3", "--x", "0.4", "--y", "0.2",
                           "--theta", "0.5236,0.7854,1.0472,1.5708", "--format", "csv")
        lines = out.split("\n")
        assert code == 0 and len(lines) == 6 and lines[-1] == ""
        assert "\r" not in out

    def test_seeded_random(self, capsys):
        argv = ("sweep", "prop2", "--r", "0:0.49", "--phi", "-3.14:3.14", "--random", "5",
                "--seed", "7", "--tol", "1e-4")
        a, b = run(capsys, *argv), run(capsys, *argv)
        assert a == b and len(json.loads(a[1])) == 5

    def test_invalid_points(self, capsys):
        argv = ("sweep", "prop1", "--x", "0.3,1.2", "--y", "0.1")
        code, out, _ = run(capsys, *argv)
        assert code == 2 and json.loads(out)["offending_input"] == {"x": 1.2, "y": 0.1}
        code, out, err = run(capsys, *argv, "--skip-invalid")
        assert code == 0 and len(json.loads(out)) == 1 and "skipped 1" in err

    def test_all_invalid(self, capsys):
        code, out, _ = run(capsys, "sweep", "prop1", "--x", "1.2,1.3", "--y", "0", "--skip-invalid")
        assert code == 2 and "every grid point" in json.loads(out)["message"]

    def test_range_needs_random(self, capsys):
        code, _, _ = run(capsys, "sweep", "prop4", "--t", "-0.5:0.5")
        assert code == 2

    def test_threads_env(self, capsys, monkeypatch):
        monkeypatch.setenv("ER_DIRICHLET_THREADS", "zero")
        code, out, _ = run(capsys, "sweep", "prop4", "--t", "0.1,0.2")
        assert code == 2 and json.loads(out)["offending_input"] == "zero"


class TestSurface:
    def test_obj(self, capsys, tmp_path):
        path = tmp_path / "m.obj"
        code, out, _ = run(capsys, "surface", "scherk-family", "--theta", "1.0472",
                           "--u", "-1:1", "--v", "-1:1", "--nu", "3", "--nv", "3",
                           "-o", str(path))
        assert code == 0
        raw = path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode().splitlines()
        verts = [l for l in lines if l.startswith("v ")]
        faces = [l for l in lines if l.startswith("f ")]
        assert len(verts) == 9 and len(faces) == 4
        idx = [int(i) for f in faces for i in f.split()[1:]]
        assert min(idx) == 1 and max(idx) == 9
        assert json.loads(out)["faces"] == 4

    def test_obj_sidecar(self, capsys, tmp_path):
        path = tmp_path / "h.obj"
        code, out, _ = run(capsys, "surface", "helicoid", "--u", "0.2:0.9", "--v", "0.6:2.5",
                           "--nu", "4", "--nv", "4", "--residual", "prop5", "-o", str(path))
        sidecar = tmp_path / "h.csv"
        assert code == 0 and sidecar.exists()
        rows = sidecar.read_text().splitlines()
        assert rows[0] == "u,v,x,y,z,residual,valid" and len(rows) == 17

    def test_csv_stdout(self, capsys):
        code, out, err = run(capsys, "surface", "scherk-we", "--r", "0.2", "--nu", "2", "--nv",
                             "2", "--format", "csv")
        assert code == 0 and out.splitlines()[0] == "u,v,x,y,z,residual,valid"
        assert json.loads(err)["vertices"] == 4

    def test_unwritable(self, capsys, tmp_path):
        code, out, _ = run(capsys, "surface", "scherk-family", "--nu", "2", "--nv", "2",
                           "-o", str(tmp_path / "missing" / "m.obj"))
        assert code == 3 and json.loads(out)["code"] == "io_error"

    def test_r_only_for_scherk_we(self, capsys):
        code, _, _ = run(capsys, "surface", "helicoid", "--r", "0.3", "--nu", "2", "--nv", "2")
        assert code == 2


class TestSeriesProbe:
    def test_series(self, capsys):
        code, out, _ = run(capsys, "series", "--family", "alt", "--s", "1", "--param", "0.5")
        d = json.loads(out)
        assert code == 0 and abs(d["value_re"] - math.log(1.5)) <= 1e-16

    def test_series_domain(self, capsys):
        code, _, _ = run(capsys, "series", "--family", "geo", "--s", "2", "--param", "1")
        assert code == 2

    def test_probe(self, capsys):
        code, out, _ = run(capsys, "probe", "sigma-limit", "--a", "0.9", "--sigma", "30,60")
        samples = json.loads(out)
        assert code == 0 and all(p["pass"] for p in samples)

    def test_probe_oscillation(self, capsys):
        code, out, _ = run(capsys, "probe", "oscillation", "--a", "0.5", "--sigma", "0.5",
                           "--t", "10,100")
        assert code == 0 and len(json.loads(out)) == 2

    def test_probe_domain(self, capsys):
        code, _, _ = run(capsys, "probe", "sigma-limit", "--a", "1", "--sigma", "30")
        assert code == 2
