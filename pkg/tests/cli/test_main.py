"""
Integration tests for the symext-qkd command line.
"""

import csv
import io
import json

import numpy as np
import pytest

from symext_qkd import __version__
from symext_qkd.bell.distribution import isotropic
from symext_qkd.cli import commands
from symext_qkd.cli.main import build_parser, main
from symext_qkd.codes.equivalence import enumerate_classes, row_label
from symext_qkd.config import config
from symext_qkd.symext.tables import TableRow

pytestmark = pytest.mark.integration


def body(text: str) -> list[dict[str, str]]:
    """CSV rows below the '#' header."""
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def header(text: str) -> dict[str, str]:
    pairs = [line[2:].split(": ", 1) for line in text.splitlines() if line.startswith("# ")]
    return {key: value for key, value in pairs}


@pytest.fixture
def write_input(tmp_path):
    def write(document: dict, name: str = "input.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)

    return write


def generic_state() -> dict:
    """Full-rank two-qubit state outside every proven class."""
    re = np.eye(4) / 4
    im = np.zeros((4, 4))
    re[0, 1] = re[1, 0] = 0.05
    re[1, 2] = re[2, 1] = 0.03
    im[0, 2], im[2, 0] = 0.04, -0.04
    return {"type": "density_matrix", "dims": [2, 2], "re": re.tolist(), "im": im.tolist()}


class TestParser:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
        assert __version__ in capsys.readouterr().out

    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_unknown_method(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["decide", "--input", "x.json", "--method", "guess"])


class TestThreshold:
    def test_closed_forms(self, capsys):
        assert main(["threshold"]) == 0
        out = capsys.readouterr().out
        meta = header(out)
        assert meta["command"] == "threshold"
        assert meta["version"] == __version__
        assert meta["protocol"] == "six-state"
        rows = body(out)
        assert rows == [
            {
                "protocol": "six-state",
                "closed_form": "0.276393202250",
                "bisected": "0.276393202250",
                "symext_oneway": "0.166666666667",
            }
        ]

    def test_blocksize_json(self, capsys):
        assert main(["threshold", "--blocksize", "2", "--format", "json"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert document["metadata"]["command"] == "threshold"
        data = document["data"]
        assert [row["n"] for row in data] == [1, 2]
        assert data[0]["qber_threshold"] == pytest.approx(1 / 6, abs=1e-9)
        assert data[1]["qber_threshold"] > data[0]["qber_threshold"]

    def test_bb84_blocksize(self, capsys):
        assert main(["threshold", "--protocol", "bb84", "--blocksize", "1"]) == 0
        (row,) = body(capsys.readouterr().out)
        assert row["p_threshold"] == ""
        assert 0.15 < float(row["qber_threshold"]) < 0.2
        assert "symext_oneway" not in row

    def test_unknown_protocol(self):
        assert main(["threshold", "--protocol", "b92"]) == 2

    def test_tol_override_is_recorded_and_restored(self, capsys):
        before = config.sdp_tol
        assert main(["threshold", "--tol", "1e-6"]) == 0
        assert header(capsys.readouterr().out)["sdp_tol"] == "1e-06"
        assert config.sdp_tol == before


class TestStatespace:
    def test_writes_file(self, tmp_path):
        out = tmp_path / "nested" / "curves.csv"
        assert main(["statespace", "--out", str(out)]) == 0
        text = out.read_text(encoding="utf-8")
        rows = body(text)
        assert list(rows[0]) == ["curve", "index", "alpha1", "alpha2"]
        assert {row["curve"] for row in rows} >= {"outer_ellipse", "inner_ellipse", "tetrahedron", "dc_0"}

    def test_output_is_reproducible(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["statespace", "--out", str(first)])
        main(["statespace", "--out", str(second)])
        assert first.read_bytes() == second.read_bytes()


class TestDecide:
    def test_bell_diagonal(self, capsys, write_input):
        path = write_input({"type": "bell_diagonal", "pairs": 1, "weights": [0.7, 0.1, 0.1, 0.1]})
        assert main(["decide", "--input", path]) == 0
        (row,) = body(capsys.readouterr().out)
        assert row["verdict"] == "YES"
        assert row["rule"].startswith("bell_diagonal")

    def test_density_matrix_json(self, capsys, write_input):
        phi = np.zeros((4, 4))
        phi[0, 0] = phi[0, 3] = phi[3, 0] = phi[3, 3] = 0.5
        path = write_input({"type": "density_matrix", "dims": [2, 2], "re": phi.tolist()})
        assert main(["decide", "--input", path, "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)["data"]
        assert data["verdict"] == "NO"
        assert data["margin"] < 0

    def test_generic_state_undecided(self, write_input):
        assert main(["decide", "--input", write_input(generic_state())]) == 4

    def test_generic_state_conjecture(self, capsys, write_input):
        path = write_input(generic_state())
        assert main(["decide", "--input", path, "--method", "conjecture"]) == 0
        (row,) = body(capsys.readouterr().out)
        assert row["verdict"].startswith("CONJECTURED_")
        assert row["rule"] == "conjecture"

    def test_channel(self, capsys, write_input):
        path = write_input({"type": "channel", "family": "dephasing", "q": 0.3})
        assert main(["decide", "--input", path, "--method", "channel", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)["data"]
        assert data["verdict"] == "NO"
        assert data["details"]["degradable"] == "YES"

    def test_sdp_two_pairs(self, capsys, write_input):
        weights = isotropic(0.15).power(2).weights.tolist()
        path = write_input({"type": "bell_diagonal", "pairs": 2, "weights": weights})
        assert main(["decide", "--input", path, "--method", "sdp"]) == 0
        (row,) = body(capsys.readouterr().out)
        assert row["verdict"] == "YES"
        assert row["rule"] == "sdp.min_t"

    def test_analytic_rejects_two_pairs(self, write_input):
        weights = isotropic(0.15).power(2).weights.tolist()
        path = write_input({"type": "bell_diagonal", "pairs": 2, "weights": weights})
        assert main(["decide", "--input", path]) == 2

    def test_malformed_input(self, write_input):
        path = write_input({"type": "bell_diagonal", "pairs": 1, "weights": [0.5, 0.5]})
        assert main(["decide", "--input", path]) == 2

    def test_missing_file(self, tmp_path):
        assert main(["decide", "--input", str(tmp_path / "absent.json")]) == 2

    def test_channel_route_rejects_states(self, write_input):
        path = write_input({"type": "bell_diagonal", "pairs": 1, "weights": [0.7, 0.1, 0.1, 0.1]})
        assert main(["decide", "--input", path, "--method", "channel"]) == 2


class TestEnumerate:
    def test_k3_n4(self, capsys):
        assert main(["enumerate", "--k", "3", "--n", "4"]) == 0
        out = capsys.readouterr().out
        rows = body(out)
        assert list(rows[0]) == ["n", "100", "010", "001", "111", "110", "101", "011", "rows"]
        assert sorted(row["rows"] for row in rows) == ["100", "110", "111"]
        assert header(out)["k"] == "3"

    def test_irreducible_only(self, capsys):
        assert main(["enumerate", "--k", "4", "--n", "5", "--irreducible-only"]) == 0
        (row,) = body(capsys.readouterr().out)
        assert row["rows"] == "1111"

    def test_blocksize_not_above_k(self):
        assert main(["enumerate", "--k", "3", "--n", "3"]) == 2


class TestTables:
    def test_unsupported_k(self):
        assert main(["tables", "--k", "5", "--n", "6"]) == 2

    @pytest.mark.slow
    def test_k3_n4(self, capsys):
        assert main(["tables", "--k", "3", "--n", "4"]) == 0
        out = capsys.readouterr().out
        rows = body(out)
        assert len(rows) == 3
        ts = [float(row["t"]) for row in rows]
        assert ts == sorted(ts)
        assert header(out)["classes_n4"] == "3"

    def test_class_count_against_published(self, capsys, monkeypatch):
        def fake_table(k, n, jobs):
            return [
                TableRow(label=row_label(P), parity=P, t=-0.01 * (i + 1))
                for i, P in enumerate(enumerate_classes(n, k))
            ]

        monkeypatch.setattr(commands, "reproduce_table", fake_table)
        assert main(["tables", "--k", "3", "--n", "5", "6"]) == 0
        out = capsys.readouterr().out
        assert header(out)["classes_n5"] == "6"
        assert header(out)["classes_n6"] == "12 (published 11)"
        assert len(body(out)) == 18
