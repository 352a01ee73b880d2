"""End-to-end checks of the smrt command-line tool.

Usage: test_cli.py /path/to/smrt
"""

import json
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

SMRT = None
MEAN = "1/8 x^2 y u^3 + 1/48 y u^5"


def run(*args, check=None):
    p = subprocess.run([SMRT, *map(str, args)], capture_output=True, text=True)
    if check is not None and p.returncode != check:
        raise AssertionError(f"{args}: exit {p.returncode}\n{p.stdout}\n{p.stderr}")
    return p


def report(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


class Pipeline(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def forward(self, name="mf.csv", *extra):
        out = self.dir / name
        run("forward", "--phantom", "monomial",
            "--grid", "x(-0.2,0.05,29) y(2.3,0.05,21) u(0,0.025,81)",
            "--polar-order", 16, "--azimuth", 32, "--out", out, *extra, check=0)
        return out

    def test_forward_invert_compare_against_oracle(self):
        mf = self.forward()
        vol = self.dir / "vol.csv"
        run("invert", "--field", mf, "--z-nodes", "1,1.5,2", "--out", vol, check=0)
        r = report(run("compare", "--volume", vol, "--reference", "oracle",
                       "--mf", MEAN, check=0).stdout)
        self.assertEqual(r["rel_l2_defined"], "true")
        self.assertLess(float(r["rel_l2"]), 1e-4)
        self.assertEqual(r["region_z"], "1,2")

        # Against the phantom itself the level-2 truncation dominates.
        r = report(run("compare", "--volume", vol, "--reference", "phantom",
                       "--phantom", "monomial", check=0).stdout)
        self.assertGreater(float(r["rel_l2"]), 1e-3)

    def test_oracle_command(self):
        out = run("oracle", "--mf", MEAN, "--at", "1,3,2", check=0).stdout.splitlines()
        self.assertEqual(out[0], "65/64 x^2 y z^3 + 3/128 y z^5")
        self.assertEqual(out[1], "value=213/8")
        self.assertEqual(out[2], "value_real=26.625")

    def test_determinism(self):
        a = self.forward("a.csv").read_bytes()
        b = self.forward("b.csv", "--workers", 3).read_bytes()
        self.assertEqual(a, b)
        v1, v2 = self.dir / "v1.csv", self.dir / "v2.csv"
        run("invert", "--field", self.dir / "a.csv", "--z-nodes", "0.5,1", "--out", v1, check=0)
        run("invert", "--field", self.dir / "a.csv", "--z-nodes", "0.5,1", "--workers", 0,
            "--out", v2, check=0)
        self.assertEqual(v1.read_bytes(), v2.read_bytes())

    def test_slice_export(self):
        mf = self.dir / "mf.csv"
        run("forward", "--phantom", "monomial", "--analytic",
            "--grid", "x(0,0.5,5) y(2,0.5,3) u(0,0.5,5)", "--out", mf, check=0)
        out, pgm = self.dir / "s.csv", self.dir / "s.pgm"
        run("slice", "--in", mf, "--axis", "y", "--value", 3, "--out", out, "--pgm", pgm,
            check=0)
        rows = out.read_text().splitlines()
        self.assertEqual(rows[0], "x\\u,0,0.5,1,1.5,2")
        self.assertEqual(len(rows), 6)
        self.assertTrue(pgm.read_bytes().startswith(b"P5\n5 5\n255\n"))
        p = run("slice", "--in", mf, "--axis", "y", "--value", 2.7, "--out", out)
        self.assertEqual(p.returncode, 2)
        self.assertEqual(json.loads(p.stderr)["errors"][0]["kind"], "contract")

    def test_config_precedence(self):
        mf = self.forward()
        cfg = self.dir / "run.cfg"
        cfg.write_text("# reconstruction\nz_nodes = 1\nworkers = 2\n")
        v_cfg, v_cli = self.dir / "cfg.csv", self.dir / "cli.csv"
        run("--config", cfg, "invert", "--field", mf, "--out", v_cfg, check=0)
        self.assertIn(" z(1,", v_cfg.read_text().splitlines()[0])
        run("--config", cfg, "invert", "--field", mf, "--z-nodes", "2", "--out", v_cli, check=0)
        self.assertIn(" z(2,", v_cli.read_text().splitlines()[0])

    def test_validation_errors_exit_2_with_json(self):
        bad = self.dir / "bad.q"
        bad.write_text("1 0 0 1 1\n1 0 1 1 1\n1 1 2 1 1\n1 1 5 1 1\n")
        p = run("qtable", "validate", bad)
        self.assertEqual(p.returncode, 2)
        errs = json.loads(p.stderr)["errors"]
        self.assertEqual(len(errs), 2)
        self.assertIn("bad.q:1", errs[0]["message"])
        self.assertIn("constant term forbidden", errs[0]["message"])

        mf = self.forward()
        p = run("invert", "--field", mf, "--z-nodes", "0.0125", "--out", self.dir / "v.csv")
        self.assertEqual(p.returncode, 2)
        p = run("invert", "--field", self.dir / "missing.csv", "--z-nodes", "1",
                "--out", self.dir / "v.csv")
        self.assertEqual(p.returncode, 2)
        p = run("forward", "--phantom", "ball", "--center", "0,0,0.5", "--out",
                self.dir / "x.csv")
        self.assertEqual(p.returncode, 2)
        self.assertFalse((self.dir / "x.csv").exists())

    def test_non_finite_input_exits_3(self):
        mf = self.dir / "mf.csv"
        run("forward", "--phantom", "monomial", "--analytic",
            "--grid", "x(0,0.1,7) y(0,0.1,7) u(0,0.1,11)", "--out", mf, check=0)
        lines = mf.read_text().splitlines()
        row = 1 + (3 * 7 + 3) * 11 + 2
        self.assertTrue(lines[row].startswith("3,3,2,"))
        lines[row] = "3,3,2,nan"
        mf.write_text("\n".join(lines) + "\n")
        p = run("invert", "--field", mf, "--z-nodes", "0.5", "--out", self.dir / "v.csv")
        self.assertEqual(p.returncode, 3)
        self.assertEqual(json.loads(p.stderr)["errors"][0]["kind"], "numeric")


if __name__ == "__main__":
    SMRT = sys.argv.pop(1)
    unittest.main(verbosity=2)
