import json

import pytest

from blockmatch import SetFamily, build_E, build_fig1
from blockmatch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestConstruct:
    def test_writes_family_file(self, tmp_path, capsys):
        path = tmp_path / "e.fam"
        code, out, _ = run(capsys, "construct", "E", "-k", "3", "-n", "12", "-b", "2", "-o", str(path))
        assert code == 0
        assert "size: 138" in out
        assert SetFamily.load(path) == build_E(3, 12, 2)

    def test_stdout_text(self, capsys):
        code, out, _ = run(capsys, "construct", "kleitman", "-k", "2", "-n", "6")
        assert code == 0
        assert out.startswith("6 2\n")
        assert SetFamily.from_text(out).n == 6

    def test_json_echo_with_spec(self, tmp_path, capsys):
        path = tmp_path / "e.json"
        code, out, _ = run(
            capsys, "construct", "E", "-k", "3", "-n", "12", "-b", "2",
            "-o", str(path), "--spec", "--json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["schema"] == 1
        assert report["data"]["spec"]["blocks"] == [[3, 4]]
        assert SetFamily.load(path) == build_E(3, 12, 2)

    def test_fixed_k_kinds(self, capsys):
        code, out, _ = run(capsys, "construct", "eprime3", "-n", "12", "-b", "3")
        assert code == 0 and out.startswith("12 3\n")
        code, _, err = run(capsys, "construct", "eprime3", "-k", "2", "-n", "12", "-b", "3")
        assert code == 2 and "error" in err

    def test_domain_error_exit_2(self, capsys):
        code, _, err = run(capsys, "construct", "E", "-k", "3", "-n", "7", "-b", "2")
        assert code == 2 and "error" in err

    def test_byte_identical_reruns(self, tmp_path, capsys):
        a, b = tmp_path / "a.fam", tmp_path / "b.fam"
        _, out1, _ = run(capsys, "construct", "E", "-k", "2", "-n", "10", "-b", "3", "-o", str(a), "--json")
        _, out2, _ = run(capsys, "construct", "E", "-k", "2", "-n", "10", "-b", "3", "-o", str(b), "--json")
        assert a.read_bytes() == b.read_bytes()
        assert out1.replace(str(a), "X") == out2.replace(str(b), "X")


class TestVerify:
    @pytest.fixture()
    def efam(self, tmp_path):
        path = tmp_path / "e.fam"
        build_E(3, 12, 2).save(path)
        return str(path)

    def test_perfect_matching_absent(self, efam, capsys):
        code, out, _ = run(capsys, "verify", "--perfect-matching", efam)
        assert code == 0
        assert "verdict: holds" in out and "absent" in out

    def test_perfect_matching_present_exits_1(self, tmp_path, capsys):
        path = tmp_path / "c.fam"
        SetFamily.from_iterable(4, 2, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).save(path)
        code, out, _ = run(capsys, "verify", "--perfect-matching", str(path))
        assert code == 1
        assert "verdict: fails" in out and "[[1,2],[3,4]]" in out

    def test_min_blocking(self, efam, capsys):
        code, out, _ = run(capsys, "verify", "--min-blocking", "3", efam)
        assert code == 0
        assert "min_blocking_size: 2" in out
        assert "witness blocking_set: [1,2]" in out

    def test_maximal(self, efam, capsys):
        code, out, _ = run(capsys, "verify", "--maximal", efam)
        assert code == 0 and "maximal: True" in out

    def test_not_maximal_exits_1(self, tmp_path, capsys):
        path = tmp_path / "e2.fam"
        build_E(2, 10, 3).save(path)
        code, out, _ = run(capsys, "verify", "--maximal", str(path))
        assert code == 1 and "addable_set: [1,5]" in out

    def test_malformed_file_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.fam"
        path.write_text("4 2\n3 4\n1 2\n")
        code, _, err = run(capsys, "verify", "--perfect-matching", str(path))
        assert code == 2 and "error" in err

    def test_json_report_shape(self, efam, capsys):
        code, out, _ = run(capsys, "verify", "--min-blocking", "2", efam, "--json")
        report = json.loads(out)
        assert report["schema"] == 1
        assert report["verdict"] == "holds"
        assert report["data"]["min_blocking_size"] == 2
        assert report["witnesses"]["blocking_set"] == [1, 2]


class TestShift:
    def test_single_shift_stdout(self, tmp_path, capsys):
        path = tmp_path / "f.fam"
        SetFamily.from_iterable(4, 2, [(1, 3), (2, 4)]).save(path)
        code, out, _ = run(capsys, "shift", str(path), "--x", "1", "--y", "2")
        assert code == 0
        assert SetFamily.from_text(out).sets == ((1, 3), (1, 4))

    def test_closure_report(self, tmp_path, capsys):
        path = tmp_path / "e.fam"
        build_E(3, 12, 2).save(path)
        trace_path = tmp_path / "trace.json"
        code, out, _ = run(capsys, "shift", str(path), "--closure", "-b", "2", "-o", str(trace_path))
        assert code == 0
        trace = json.loads(trace_path.read_text())
        assert set(trace) == {"steps", "permutation", "shifted_region", "final"}

    def test_inadmissible_shift_exit_2(self, tmp_path, capsys):
        path = tmp_path / "f.fam"
        SetFamily.from_iterable(4, 2, [(2, 3), (2, 4)]).save(path)
        code, _, err = run(capsys, "shift", str(path), "--x", "1", "--y", "2")
        assert code == 2 and "deg" in err


class TestProp:
    def test_build_and_check_fig1(self, tmp_path, capsys):
        path = tmp_path / "f.inst"
        code, _, _ = run(capsys, "prop", "build-fig1", "-b", "2", "-k", "4", "-o", str(path))
        assert code == 0
        code, out, _ = run(capsys, "prop", "check", str(path))
        assert code == 0
        assert "coverable: False" in out and "edges: 3" in out and "bound: 3" in out

    def test_check_invalid_instance_exits_1(self, tmp_path, capsys):
        path = tmp_path / "bad.inst"
        path.write_text("6 4 2 2\n1 5\n2 6\n5 6\n")
        code, out, _ = run(capsys, "prop", "check", str(path))
        assert code == 1 and "edge misses [b]" in out

    def test_build_fig2_stdout(self, capsys):
        code, out, _ = run(capsys, "prop", "build-fig2", "-b", "2")
        assert code == 0 and out.startswith("4 2 3 1\n")

    def test_exhaust_json(self, capsys):
        code, out, _ = run(
            capsys, "prop", "exhaust", "-b", "2", "-k", "4", "--exterior", "1", "--json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["verdict"] == "holds"
        assert report["data"]["equality_classes"] == {"fig1": 1}
        assert report["data"]["violations"] == []

    def test_exhaust_sampled(self, capsys):
        code, out, _ = run(
            capsys, "prop", "exhaust", "-b", "4", "-k", "4", "--exterior", "1",
            "--sample", "150", "--seed", "7", "--json",
        )
        assert code == 0
        assert json.loads(out)["command"] == "prop exhaust --sample"

    def test_exhaust_tier_exit_2(self, capsys):
        code, _, err = run(capsys, "prop", "exhaust", "-b", "4", "-k", "4", "--exterior", "1")
        assert code == 2 and "sampled_verify" in err


class TestHall:
    def test_witness(self, tmp_path, capsys):
        path = tmp_path / "g.fam"
        SetFamily.from_iterable(3, 2, [(1, 3), (2, 3)]).save(path)
        code, out, _ = run(capsys, "hall", "--target", "1,2", str(path))
        assert code == 0
        assert "witness witness: [1,2]" in out

    def test_coverable_exits_1(self, tmp_path, capsys):
        path = tmp_path / "g.fam"
        SetFamily.from_iterable(4, 2, [(1, 3), (2, 4)]).save(path)
        code, out, _ = run(capsys, "hall", "--target", "1,2", str(path))
        assert code == 1
        assert "covering_matching" in out


class TestSearch:
    def test_exhaustive(self, capsys):
        code, out, _ = run(
            capsys, "search", "--extremal", "-k", "2", "-n", "6", "-b", "1", "--json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["verdict"] == "holds"
        assert report["data"]["max_size"] == 10
        assert report["data"]["exact"] is True

    def test_randomized_indeterminate(self, capsys):
        code, out, _ = run(
            capsys, "search", "--extremal", "-k", "2", "-n", "10", "-b", "3",
            "--mode", "randomized", "--seed", "5", "--node-cap", "1500", "--json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["verdict"] == "indeterminate"
        assert report["data"]["max_size"] >= 26

    def test_usage_error_exit_2(self, capsys):
        assert run(capsys, "search", "--extremal", "-k", "2")[0] == 2
        assert run(capsys, "nonsense")[0] == 2


def test_fig1_instance_file_round_trip(tmp_path, capsys):
    path = tmp_path / "f.inst"
    run(capsys, "prop", "build-fig1", "-b", "3", "-k", "3", "-o", str(path))
    from blockmatch import PropInstance

    assert PropInstance.from_text(path.read_text()) == build_fig1(3, 3)
