import json
import subprocess
import sys

import pytest

from celcs.cli import main, parse_level, run
from celcs.cube import Cube
from celcs.errors import SequenceFormatError

S = "1101 1001 1000 0000"


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBasics:
    def test_lc(self, capsys):
        assert call(capsys, "lc", "1111 0000 0000 0000") == (0, "13\n", "")

    def test_lc_oracle(self, capsys):
        assert call(capsys, "lc", "--oracle", S)[1] == "15\n"

    def test_count_example(self, capsys):
        code, out, _ = call(capsys, "count", "--t43", "-n", "4", "-i", "1", "-j", "3", "-L", "5")
        assert code == 0 and out.startswith("2^8")

    def test_count_mask_target(self, capsys):
        _, out, _ = call(capsys, "count", "--t53", "-n", "5", "-i", "2", "-j", "3", "--i0", "1", "-L", "0,4")
        assert out == "2^21 = 2097152\n"

    def test_verify_pass(self, capsys):
        code, out, _ = call(capsys, "verify", "T33", "-n", "3")
        assert code == 0 and out.startswith("PASS T33")

    def test_spectrum_and_witness(self, capsys):
        assert call(capsys, "celcs", S)[1] == "(0,15) (2,10) (4,3) (6,0)\n"
        assert call(capsys, "klc", "-k", "2", S)[1] == "10\n"
        assert call(capsys, "witness", "-k", "2", S)[1] == "0000 1100 0000 0000\n"
        assert call(capsys, "first-descent", S)[1] == "2\n"

    def test_sequence_helpers(self, capsys):
        assert call(capsys, "weight", S)[1] == "6\n"
        assert call(capsys, "phi", S)[1] == "0101 1001\n"
        assert call(capsys, "add", "1100", "1010")[1] == "0110\n"

    def test_descent_commands(self, capsys):
        assert call(capsys, "k2", "-n", "4", "16", "13")[1] == "3\n"
        assert call(capsys, "k3", "-n", "5", "0,2", "1,2,3", "0,2,3,4")[1].startswith("12")
        assert call(capsys, "prop31", "-n", "4", "0,1,2", "-k", "3")[1] == "5\n"

    def test_predicates(self, capsys):
        assert call(capsys, "predicate", "--t41", "-n", "4", "-L", "13")[1] == "true\n"
        assert call(capsys, "predicate", "--t51", "-n", "4", "-L", "13", "--i0", "2")[1] == "false\n"
        assert call(capsys, "predicate", "--t42", "-n", "4", "-i", "0", "-j", "1", "-L", "1,3")[1] == "false\n"
        assert call(capsys, "predicate", "--t52", "-n", "4", "-i", "0", "-j", "3", "--i0", "2",
                    "-L", "0,2,3")[1] == "false\n"

    def test_mask(self, capsys):
        assert call(capsys, "mask", "-n", "5", "-L", "13")[1] == "{0,1,4}  weight=3 min=0 max=4\n"
        assert call(capsys, "mask", "-n", "5", "-L", "0,2,3,4", "--above", "2")[1].startswith("{3,4}")
        assert call(capsys, "mask", "-n", "4", "-L", "16")[1] == "{}  weight=0\n"

    def test_cube_lc(self, capsys):
        assert call(capsys, "cube-lc", "-n", "4", "base=1; edges=2^1:5,2^2:1")[1] == "10\n"
        blob = json.dumps(Cube(4, 0, (3, 4, 8)).to_json())
        assert call(capsys, "cube-lc", blob)[1] == "3\n"

    def test_decompose(self, capsys):
        _, out, _ = call(capsys, "decompose", "--kerror", S)
        assert out.splitlines()[-1] == "cumulative weights: 2 4 6"
        _, out, _ = call(capsys, "decompose", "--standard", S)
        assert [line.split()[:4] for line in out.splitlines()][0] == ["0100", "1000", "0000", "0000"]

    def test_histogram_csv(self, capsys):
        assert call(capsys, "histogram", "-n", "1", "--csv")[1] == "L,count\n0,1\n1,1\n2,2\n"

    def test_rueppel(self, capsys):
        assert call(capsys, "count", "--rueppel", "-n", "4", "-L", "16")[1] == "2^15 = 32768\n"


class TestJson:
    def test_celcs_round_trip(self, capsys):
        _, out, _ = call(capsys, "celcs", "--format", "json", S)
        data = json.loads(out)
        assert data["points"] == [[0, 15], [2, 10], [4, 3], [6, 0]]

    def test_count_schema(self, capsys):
        _, out, _ = call(capsys, "count", "--t43", "-n", "4", "-i", "1", "-j", "3", "-L", "5", "--format", "json")
        data = json.loads(out)
        assert data["exponent"] == 8 and data["L"] == 5
        assert set(data["branch"]) == {"i0_eff", "gamma", "delta", "epsilon"}

    def test_decomposition_cubes_reparse(self, capsys):
        _, out, _ = call(capsys, "decompose", "--kerror", "--format", "json", S)
        data = json.loads(out)
        cubes = [Cube.from_json(c) for c in data["cubes"]]
        assert [c.lc() for c in cubes] == [15, 10, 3]

    def test_verify_json_deterministic(self, capsys):
        argv = ["verify", "T32", "-n", "4", "--samples", "200", "--seed", "5", "--format", "json", "--no-elapsed"]
        first = call(capsys, *argv)
        second = call(capsys, *argv)
        assert first == second and first[0] == 0
        assert json.loads(first[1])["seed"] == 5


class TestBatch:
    def test_at_file(self, tmp_path, capsys):
        f = tmp_path / "seqs.txt"
        f.write_text("# two periods\n1111 0000 0000 0000\n\n0xD980\n")
        assert call(capsys, "lc", f"@{f}")[1] == "13\n15\n"

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = call(capsys, "lc", f"@{tmp_path / 'nope'}")
        assert code == 2 and "cannot read" in err


class TestErrors:
    def test_bad_length(self, capsys):
        code, out, err = call(capsys, "lc", "101")
        assert code == 2 and out == "" and "power of two" in err

    def test_bad_flag_value_named(self, capsys):
        code, _, err = call(capsys, "klc", "-k", "two", S)
        assert code == 2 and "-k" in err

    def test_missing_required_flag(self, capsys):
        code, _, err = call(capsys, "count", "--t43", "-n", "4", "-L", "5")
        assert code == 2 and "-i" in err

    def test_unknown_flag(self, capsys):
        assert call(capsys, "lc", "--bogus", S)[0] == 2

    def test_no_subcommand(self, capsys):
        assert call(capsys)[0] == 2

    def test_capacity(self, capsys):
        code, _, err = call(capsys, "celcs", "--budget", "10", "0x" + "F" * 15 + "7")
        assert code == 2 and "budget" in err

    def test_above_cap(self, capsys):
        code, _, err = call(capsys, "verify", "T33", "-n", "5")
        assert code == 2 and "cap" in err

    def test_counterexample_exit_code(self, monkeypatch, capsys):
        from celcs import descent
        monkeypatch.setattr(descent, "k2_second_descent", lambda a, b: 0)
        code, out, _ = call(capsys, "verify", "T32", "-n", "3")
        assert code == 1 and "counterexample" in out

    def test_parse_level(self):
        assert parse_level("13", 5).indices == (0, 1, 4)
        assert parse_level("0", 5) is None
        assert parse_level("{2}", 5).indices == (2,)
        with pytest.raises(SequenceFormatError):
            parse_level("x", 5)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "celcs", "lc", "1111 0000 0000 0000"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "13\n"


def test_main_returns_code(capsys):
    assert main(["weight", "1"]) == 0
