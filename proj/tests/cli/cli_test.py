#!/usr/bin/env python3
# Copyright 2026 The surgec Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end tests of the surgec command-line tool."""

import argparse
import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

ARGS = None

QASM = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[3];
h q[0];
t q[0];
cx q[0],q[1];
h q[2];
crz(pi/2) q[2],q[1];
"""


def run(*argv, stdin=None, check=True):
    proc = subprocess.run([ARGS.bin, *argv], input=stdin, capture_output=True, text=True,
                          timeout=600)
    if check and proc.returncode != 0:
        raise AssertionError("%s exited %d: %s" % (argv, proc.returncode, proc.stderr))
    return proc


def layout(name):
    return os.path.join(ARGS.layouts, name)


def cache_args():
    return ["-e", "1e-10", "--cache", os.path.join(ARGS.data, "qft64_eps1e-10.cache"),
            "--cache-only"]


class Cli(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        with open(ARGS.schema) as f:
            cls.validator = jsonschema.Draft202012Validator(json.load(f))
        cls.tmp = tempfile.TemporaryDirectory()
        cls.qasm = os.path.join(cls.tmp.name, "c.qasm")
        with open(cls.qasm, "w") as f:
            f.write(QASM)

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    def assert_slice(self, s):
        errors = list(self.validator.iter_errors(s))
        self.assertEqual(errors, [], errors[:1])

    def test_version(self):
        out = run("--version").stdout
        self.assertTrue(out.startswith("surgec 0.3.0"), out)

    def test_qft_qasm(self):
        out = run("qft", "3").stdout
        self.assertIn("qreg q[3];", out)
        self.assertEqual(out.count("crz("), 3)

    def test_compile_stdin_and_stats(self):
        proc = run("compile", "--stats", "-", stdin=QASM.replace("crz(pi/2)", "cz"))
        lines = proc.stdout.splitlines()
        self.assertGreater(len(lines), 10)
        self.assertTrue(all(line.split()[0] in
                            {"INIT", "MEAS", "MBM", "PAULI", "H", "ROT", "S", "MAGIC", "IF"}
                            for line in lines))
        self.assertIn("lli", proc.stderr)

    def test_compile_parse_error(self):
        proc = run("compile", "-", stdin=QASM + "rz(pi/3) q[0];\n", check=False)
        self.assertEqual(proc.returncode, 1)
        self.assertIn("line 9", proc.stderr)

    def test_compile_cache_only_miss(self):
        proc = run("compile", "-e", "1e-3", "--cache-only", "-", stdin=QASM, check=False)
        self.assertEqual(proc.returncode, 1)
        self.assertIn("cache", proc.stderr)

    def test_slice_formats(self):
        lli = run("qft", "3", "--lli", *cache_args()).stdout
        arr = json.loads(run("slice", "-l", layout("example2.txt"), stdin=lli).stdout)
        nd = run("slice", "--ndjson", "-l", layout("example2.txt"), stdin=lli).stdout
        nd = [json.loads(line) for line in nd.splitlines()]
        self.assertEqual(arr, nd)
        for s in arr[:200]:
            self.assert_slice(s)
        self.assertEqual(len(arr[0]), 7)
        self.assertEqual(len(arr[0][0]), 10)
        stats = json.loads(run("slice", "-f", "stats", "-l", layout("example2.txt"),
                               stdin=lli).stdout)
        self.assertEqual(stats["slices"], len(arr))
        self.assertEqual(stats["lli"], len(lli.splitlines()))
        self.assertEqual(run("slice", "-f", "none", "-l", layout("example2.txt"),
                             stdin=lli).stdout, "")

    def test_slice_idle_nulls(self):
        out = json.loads(run("slice", "-l", layout("example1.txt"), stdin="PAULI 0 X\n").stdout)
        self.assertEqual(sum(c is None for s in out for row in s for c in row), 4)

    def test_slice_layout_dir(self):
        env = dict(os.environ, SURGEC_LAYOUT_DIR=ARGS.layouts)
        proc = subprocess.run([ARGS.bin, "slice", "-l", "example1.txt"], input="H 0\n",
                              capture_output=True, text=True, env=env, cwd=self.tmp.name)
        self.assertEqual(proc.returncode, 0, proc.stderr)

    def test_slice_errors(self):
        proc = run("slice", "-l", "/nonexistent/layout.txt", stdin="H 0\n", check=False)
        self.assertEqual(proc.returncode, 1)
        proc = run("slice", "-l", layout("example1.txt"), stdin="MBM Q9\n", check=False)
        self.assertEqual(proc.returncode, 1)
        self.assertIn("line 1", proc.stderr)
        proc = run("slice", "-l", layout("example1.txt"), stdin="MAGIC 4\n", check=False)
        self.assertEqual(proc.returncode, 1)
        self.assertIn("deadlock", proc.stderr)

    def test_verify(self):
        proc = run("verify", self.qasm, "-e", "1e-2")
        self.assertIn("PASS", proc.stdout)
        lli = run("compile", "-e", "1e-2", self.qasm).stdout
        stripped = "".join(line + "\n" for line in lli.splitlines()
                           if not line.startswith("IF"))
        path = os.path.join(self.tmp.name, "stripped.lli")
        with open(path, "w") as f:
            f.write(stripped)
        proc = run("verify", self.qasm, "-e", "1e-2", "--lli", path, check=False)
        self.assertEqual(proc.returncode, 1)
        self.assertIn("FAIL", proc.stdout)

    def test_verify_snapshots(self):
        path = os.path.join(self.tmp.name, "snap.jsonl")
        run("verify", self.qasm, "-e", "1e-2", "--snapshots", path, "--amplitudes")
        with open(path) as f:
            snaps = [json.loads(line) for line in f]
        self.assertGreater(len(snaps), 10)

    def test_estimate(self):
        lli = run("qft", "3", "--lli", *cache_args()).stdout
        stats = run("slice", "-f", "stats", "-l", layout("example2.txt"), stdin=lli).stdout
        est = json.loads(run("estimate", "--p", "1e-3", stdin=stats).stdout)
        self.assertEqual(est["volume"], json.loads(stats)["cells"] * json.loads(stats)["slices"])
        self.assertEqual(est["distance"] % 2, 1)
        proc = run("estimate", "--p", "0.02", stdin=stats, check=False)
        self.assertEqual(proc.returncode, 1)
        self.assertIn("threshold", proc.stderr)

    def test_sweep(self):
        out = run("sweep", "--widths", "3:4", "--depths", "2,5").stdout.splitlines()
        self.assertEqual(out[0].split(",")[0], "width")
        self.assertEqual(len(out), 5)

    def test_usage_error(self):
        self.assertNotEqual(run("frobnicate", check=False).returncode, 0)
        self.assertNotEqual(run("qft", check=False).returncode, 0)


def main():
    global ARGS
    ap = argparse.ArgumentParser()
    ap.add_argument("--bin", required=True)
    ap.add_argument("--schema", required=True)
    ap.add_argument("--layouts", required=True)
    ap.add_argument("--data", required=True)
    ARGS, rest = ap.parse_known_args()
    for key in ("bin", "schema", "layouts", "data"):
        setattr(ARGS, key, os.path.abspath(getattr(ARGS, key)))
    unittest.main(argv=[sys.argv[0], *rest], verbosity=2)


if __name__ == "__main__":
    main()
