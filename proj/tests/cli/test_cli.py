"""End-to-end checks of the commlab executable: exit codes, golden values,
stdout routing, environment precedence and output formats."""

import csv
import io
import json
import os
import subprocess
import sys
import tempfile
import unittest
import xml.etree.ElementTree as ET

CLI = os.environ.get("COMMLAB_CLI", "commlab")

BARBELL = "1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n3 4\n"
TRIANGLE = "0 1\n1 2\n2 0\n"
SPLIT = "1\t0\n2\t0\n3\t0\n4\t1\n5\t1\n6\t1\n"


def run(*args, env=None):
    full_env = {k: v for k, v in os.environ.items() if not k.startswith("COMMLAB_")}
    full_env.update(env or {})
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, text):
        path = os.path.join(self.dir, name)
        with open(path, "w") as f:
            f.write(text)
        return path

    def out(self, name):
        return os.path.join(self.dir, name)

    def read(self, *parts):
        with open(os.path.join(self.dir, *parts)) as f:
            return f.read()


class ModularityCommand(CliTest):
    def test_barbell_split(self):
        r = run("modularity", "-i", self.write("b.txt", BARBELL), "-p", self.write("p.tsv", SPLIT),
                "--output-dir", self.out("o"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(r.stdout, "0.357142857143\n")
        self.assertEqual(self.read("o", "modularity.txt"), "0.357142857143\n")

    def test_triangle(self):
        g = self.write("t.txt", TRIANGLE)
        one = run("modularity", "-i", g, "-p", self.write("one.tsv", "0\t0\n1\t0\n2\t0\n"), "--output", "-",
                  "--output-dir", self.out("o1"))
        singles = run("modularity", "-i", g, "-p", self.write("s.tsv", "0\t0\n1\t1\n2\t2\n"), "--output", "-",
                      "--output-dir", self.out("o2"))
        self.assertEqual(one.stdout, "0\n")
        self.assertEqual(singles.stdout, "-0.333333333333\n")

    def test_mismatched_nodes(self):
        r = run("modularity", "-i", self.write("b.txt", BARBELL), "-p", self.write("p.tsv", "1\t0\n"),
                "--output-dir", self.out("o"))
        self.assertEqual(r.returncode, 2)


class DetectCommand(CliTest):
    def test_triangle_one_community(self):
        r = run("detect", "-i", self.write("t.txt", TRIANGLE), "--output-dir", self.out("o"))
        self.assertEqual(r.returncode, 0, r.stderr)
        report = json.loads(self.read("o", "report.json"))
        self.assertEqual(report["communities"], 1)
        self.assertEqual(report["nodes"], 3)
        self.assertEqual(report["edges"], 3)
        self.assertNotIn("timings", report)

    def test_stdout_carries_partition(self):
        r = run("detect", "-i", self.write("b.txt", BARBELL), "--output", "-", "--output-dir", self.out("o"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(r.stdout, SPLIT)
        self.assertIn("communities 2", r.stderr)
        manifest = json.loads(self.read("o", "manifest.json"))
        self.assertTrue(manifest["primary_to_stdout"])
        self.assertIn("partition.tsv", manifest["outputs"])
        self.assertFalse(os.path.exists(self.out("o/partition.tsv")))

    def test_exit_codes(self):
        missing = run("detect", "-i", self.out("nope.txt"), "--output-dir", self.out("o"))
        self.assertEqual(missing.returncode, 1)
        self.assertIn("nope.txt", missing.stderr)
        bad = run("detect", "-i", self.write("bad.txt", "1 2 3 4\n"), "--output-dir", self.out("o"))
        self.assertEqual(bad.returncode, 2)
        negative = run("detect", "-i", self.write("neg.txt", "1 2 -1\n"), "--output-dir", self.out("o"))
        self.assertEqual(negative.returncode, 2)
        empty = run("detect", "-i", self.write("empty.txt", "# nothing\n"), "--output-dir", self.out("o"))
        self.assertEqual(empty.returncode, 3)
        usage = run("detect", "--seed", "abc", "-i", self.write("b.txt", BARBELL))
        self.assertEqual(usage.returncode, 2)
        bad_output = run("detect", "-i", self.write("b2.txt", BARBELL), "--output", "x.tsv")
        self.assertEqual(bad_output.returncode, 2)

    def test_environment_precedence(self):
        g = self.write("b.txt", BARBELL)
        run("detect", "-i", g, "--output-dir", self.out("env"), env={"COMMLAB_SEED": "5"})
        self.assertEqual(json.loads(self.read("env", "report.json"))["seed"], 5)
        run("detect", "-i", g, "--seed", "7", "--output-dir", self.out("flag"), env={"COMMLAB_SEED": "5"})
        self.assertEqual(json.loads(self.read("flag", "report.json"))["seed"], 7)
        run("detect", "-i", g, env={"COMMLAB_OUTPUT_DIR": self.out("viaenv")})
        self.assertTrue(os.path.exists(self.out("viaenv/manifest.json")))

    def test_simd_backends_agree(self):
        g = self.write("r.txt", "".join(f"{i} {(i * 7 + 3) % 40}\n{i} {(i + 1) % 40}\n" for i in range(40)))
        self.assertEqual(run("detect", "-i", g, "--simd", "scalar", "--output-dir", self.out("s")).returncode, 0)
        self.assertEqual(run("detect", "-i", g, "--output-dir", self.out("a"), env={"COMMLAB_SIMD": "auto"}).returncode, 0)
        self.assertEqual(run("--simd", "bogus", "detect", "-i", g, "--output-dir", self.out("x")).returncode, 2)
        self.assertEqual(self.read("s", "partition.tsv"), self.read("a", "partition.tsv"))
        self.assertEqual(self.read("s", "report.json"), self.read("a", "report.json"))


class OtherCommands(CliTest):
    def test_diagnose_barbell(self):
        r = run("diagnose", "-i", self.write("b.txt", BARBELL), "--seeds", "0..9", "--matrices",
                "--output-dir", self.out("o"))
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(self.read("o", "diagnostics.json"))
        self.assertEqual(len(doc["runs"]), 10)
        self.assertTrue(all(v == 1 for row in doc["pairwise"] for v in row))
        rows = list(csv.reader(io.StringIO(self.read("o", "coclassification.csv"))))
        self.assertEqual(rows[0], ["label", "1", "2", "3", "4", "5", "6"])
        self.assertEqual(rows[1], ["1", "1", "1", "1", "0", "0", "0"])

    def test_diagnose_rejects_bad_seeds(self):
        g = self.write("b.txt", BARBELL)
        self.assertEqual(run("diagnose", "-i", g, "--seeds", "4..2", "--output-dir", self.out("o")).returncode, 2)
        self.assertEqual(run("diagnose", "-i", g, "--seeds", "1", "--output-dir", self.out("o")).returncode, 2)

    def test_probe(self):
        r = run("probe-resolution", "-c", "30", "-k", "5", "--output-dir", self.out("o"))
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(self.read("o", "probe.json"))
        self.assertAlmostEqual(doc["q_singleton_cliques"], 10 / 11 - 1 / 30, places=12)
        self.assertAlmostEqual(doc["q_merged_pairs"], 21 / 22 - 2 / 30, places=12)
        self.assertTrue(doc["limit_manifested"])

    def test_layout_svg_well_formed(self):
        r = run("layout", "-i", self.write("b.txt", BARBELL), "--iterations", "50", "--seed", "1", "--coords",
                "--output-dir", self.out("o"))
        self.assertEqual(r.returncode, 0, r.stderr)
        root = ET.fromstring(self.read("o", "layout.svg").encode())
        ns = "{http://www.w3.org/2000/svg}"
        self.assertEqual(root.tag, ns + "svg")
        self.assertEqual(len(root.findall(f".//{ns}circle")), 6)
        self.assertEqual(len(root.findall(f".//{ns}line")), 7)
        self.assertEqual(len({c.get("fill") for c in root.iter(ns + "circle")}), 2)
        self.assertEqual(len(self.read("o", "coords.tsv").splitlines()), 6)

    def test_layout_rerun_identical(self):
        g = self.write("b.txt", BARBELL)
        a = run("layout", "-i", g, "--iterations", "50", "--seed", "1", "--output", "-", "--output-dir", self.out("a"))
        b = run("layout", "-i", g, "--iterations", "50", "--seed", "1", "--output", "-", "--output-dir", self.out("b"))
        self.assertEqual(a.stdout, b.stdout)
        self.assertTrue(a.stdout.startswith("<?xml"))

    def test_simulate_loop_zero_rounds(self):
        r = run("simulate-loop", "-i", self.write("b.txt", BARBELL), "--rounds", "0", "--output", "-",
                "--output-dir", self.out("o"))
        self.assertEqual(r.returncode, 0, r.stderr)
        lines = r.stdout.splitlines()
        self.assertEqual(lines[0], "round,q,communities,edges_added,mixing_ratio")
        self.assertEqual(len(lines), 2)

    def test_simulate_loop_path(self):
        r = run("simulate-loop", "-i", self.write("p.txt", "1 2\n2 3\n"), "--rounds", "1", "--final-graph",
                "--output-dir", self.out("o"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("1 3 1\n", self.read("o", "final_graph.txt"))
        self.assertEqual(self.read("o", "trajectory.csv").splitlines()[2], "1,0,1,1,0")

    def test_oracle(self):
        r = run("oracle", "-i", self.write("b.txt", BARBELL), "--output-dir", self.out("o"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(self.read("o", "partition.tsv"), SPLIT)
        self.assertEqual(json.loads(self.read("o", "oracle.json"))["partitions_evaluated"], 203)
        big = "".join(f"{i} {i + 1}\n" for i in range(13))
        self.assertEqual(run("oracle", "-i", self.write("big.txt", big), "--output-dir", self.out("x")).returncode, 2)


class Rerun(CliTest):
    def test_detects_changed_input(self):
        g = self.write("b.txt", BARBELL)
        run("detect", "-i", g, "--output-dir", self.out("o"))
        self.assertEqual(run("rerun", self.out("o/manifest.json"), "--output-dir", self.out("r")).returncode, 0)
        self.write("b.txt", BARBELL + "6 7\n")
        self.assertEqual(run("rerun", self.out("o/manifest.json"), "--output-dir", self.out("r2")).returncode, 2)

    def test_detects_tampered_manifest(self):
        run("detect", "-i", self.write("b.txt", BARBELL), "--output-dir", self.out("o"))
        manifest = json.loads(self.read("o", "manifest.json"))
        manifest["outputs"]["partition.tsv"] = "0" * 64
        self.write("m.json", json.dumps(manifest))
        r = run("rerun", self.out("m.json"), "--output-dir", self.out("r"))
        self.assertEqual(r.returncode, 2)
        self.assertIn("partition.tsv", r.stderr)

    def test_malformed_manifest(self):
        self.assertEqual(run("rerun", self.write("m.json", "{not json"), "--output-dir", self.out("r")).returncode, 2)


if __name__ == "__main__":
    unittest.main(argv=sys.argv[:1], verbosity=2)
