import io
import json

import pytest

from conftest import FIXTURES
from mockalex import cli
from mockalex.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, _pairs, main
from mockalex.models import SkeinReport


def run(capsys, *argv: str) -> tuple[int, str]:
    status = main(list(argv))
    return status, capsys.readouterr().out


def test_mock_of_a_file(capsys):
    status, out = run(capsys, "mock", str(FIXTURES / "trefoil.json"), "--stars-regions", "f0,f1")
    assert status == EXIT_OK
    assert out == "W^2 - 1 + W^-2\n"


def test_json_output_records_the_engine(capsys):
    status, out = run(capsys, "mock", "trefoil", "--stars-regions", "f0,f1", "--engine", "states", "--format", "json")
    assert status == EXIT_OK
    doc = json.loads(out)
    assert doc["text"] == "W^2 - 1 + W^-2"
    assert doc["engine"] == "states"
    assert doc["variables"] == ["W"]


def test_config_file_sets_defaults(capsys, tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("engine: ryser\noutput_format: json\n")
    status, out = run(capsys, "mock", "trefoil", "--config", str(config), "--stars-regions", "f0,f1")
    assert status == EXIT_OK
    assert json.loads(out)["engine"] == "ryser"


def test_sharp_and_potential(capsys):
    assert run(capsys, "sharp", "simple-knotoid") == (EXIT_OK, "W^2 + W - W^-1\n")
    assert run(capsys, "potential", str(FIXTURES / "simple_knotoid.json")) == (EXIT_OK, "W^2 + W - B\n")


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO((FIXTURES / "simple_knotoid.json").read_text()))
    assert run(capsys, "mock", "-") == (EXIT_OK, "W^2 + W - W^-1\n")


def test_census(capsys):
    status, out = run(capsys, "census", "torus-knot", "--format", "json")
    assert status == EXIT_OK
    report = json.loads(out)
    assert report["genus"] == 1
    assert report["admissible"] is True


def test_matrix(capsys):
    status, out = run(capsys, "matrix", "simple-knotoid", "--stars-regions", "t:0", "--labels", "mock")
    assert status == EXIT_OK
    assert out == "   f1  f2\na  W   1\nb  -B  W + 1\n"


def test_skein(capsys):
    status, out = run(capsys, "skein", "skeinhold", "--crossing", "v")
    assert status == EXIT_OK
    assert "case: split linkoid" in out
    assert "verdict: True" in out


def test_closure(capsys):
    status, out = run(capsys, "closure", "simple-knotoid")
    assert status == EXIT_OK
    assert out.splitlines()[0] == "virtual: W^2 + 2*W - 2*W^-1 + W^-2"
    assert "witness: none" not in out


def test_trident_and_handle(capsys):
    status, out = run(capsys, "trident", "trefoil", "--faces", "t1:2,t1:1,t2:1")
    assert (status, out) == (EXIT_OK, "2*W^2 + 2*W - 2 - 2*W^-1 + 2*W^-2\n")
    status, out = run(capsys, "handle", "trefoil", "--pairs", "t1:0,t1:1:t1:2,t2:1")
    assert (status, out) == (EXIT_OK, "W^3 + 2*W^2 + 2*W - 2 - 2*W^-1 + 2*W^-2 - W^-3\n")


def test_pairs_syntax():
    assert _pairs("f0,f1:f2,f3") == [("f0", "f1"), ("f2", "f3")]
    assert _pairs("t1:0,f1:t1:2,f3") == [("t1:0", "f1"), ("t1:2", "f3")]
    assert _pairs("f0,t1:1:f2,f3") == [("f0", "t1:1"), ("f2", "f3")]
    assert _pairs("f0,f1;f2,f3") == [("f0", "f1"), ("f2", "f3")]


def test_planar(capsys):
    knotoid = str(FIXTURES / "simple_knotoid.json")
    assert run(capsys, "planar", knotoid) == (EXIT_OK, "W^2 + W*D - W^-1*D\n")
    assert run(capsys, "planar", knotoid, "--kbang") == (EXIT_OK, "W^2 + W*D^-1 - W^-1*D^-1\n")


def test_alexander(capsys):
    status, out = run(capsys, "alexander", "trefoil", "--edge", "t1:1")
    assert status == EXIT_OK
    assert out == "determinant: x^2 - x + 1\nstate sum: x^2 - x + 1\nagree: true\n"


def test_family_round_trip(capsys, tmp_path):
    path = tmp_path / "twist3.json"
    assert run(capsys, "family", "--kind", "twist", "--n", "3", "--output", str(path)) == (EXIT_OK, "")
    assert json.loads(path.read_text())["name"] == "twist-3"
    assert run(capsys, "mock", str(path)) == (EXIT_OK, "W^3 - W^-3\n")


def test_verify_perm(capsys, tmp_path):
    status, out = run(
        capsys, "verify", "--suite", "perm", "--iters", "4", "--seed", "2", "--size-bound", "4",
        "--artifacts-dir", str(tmp_path),
    )
    assert status == EXIT_OK
    assert out.startswith("suite perm: 8 passed, 0 failed")
    assert not list(tmp_path.iterdir())


@pytest.mark.parametrize(
    "argv",
    [
        ["mock", str(FIXTURES / "unpaired_port.json")],
        ["mock", str(FIXTURES / "bad_slot.json")],
        ["mock", "no-such-diagram"],
        ["mock", "trefoil", "--stars-regions", "f0,f9"],
        ["mock", "trefoil"],
        ["family", "--kind", "twist", "--n", "0"],
        ["family", "--kind", "spiral", "--n", "1"],
    ],
)
def test_input_errors(capsys, argv):
    status, _ = run(capsys, *argv)
    assert status == EXIT_INPUT


def test_invalid_config_value(capsys, tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("iterations: -1\n")
    status, _ = run(capsys, "verify", "--suite", "perm", "--config", str(config))
    assert status == EXIT_INPUT


def test_failed_skein_exits_one(capsys, monkeypatch):
    def broken(triple, engine="states"):
        return SkeinReport(identity="skein", case="iii", site="t1", nabla_plus="1", nabla_minus="0", verdict=False)

    monkeypatch.setattr(cli, "verify_skein", broken)
    status, _ = run(capsys, "skein", "trefoil", "--stars-regions", "f0,f1", "--crossing", "t1")
    assert status == EXIT_FAILED
