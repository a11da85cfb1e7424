"""Text formats and the command line."""

import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homsphere import io
from homsphere.cli import main
from homsphere.complex import betti, random_stellated_sphere, simplex_boundary
from homsphere.dualcodec import missing_function
from homsphere.errors import ParseError
from homsphere.graphkit import Graph, complete_graph

BD3_TEXT = "1 2 3\n1 2 4\n1 3 4\n2 3 4\n"
K4_TEXT = "4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


class TestFormats:
    def test_sc_canonical_round_trip(self):
        assert io.emit_sc(io.parse_sc("1 2 3\n1 2 4\n")) == "1 2 3\n1 2 4\n"
        assert io.emit_sc(io.parse_sc("# comment\n4 2 1\n\n3 2 1\n")) == "1 2 3\n1 2 4\n"

    def test_sc_antichain(self):
        with pytest.raises(ParseError) as info:
            io.parse_sc("1 2\n1 2 3")
        assert info.value.line == 1

    def test_sc_duplicate_reports_line(self):
        with pytest.raises(ParseError) as info:
            io.parse_sc("1 2 3\n2 3 4\n3 2 1\n")
        assert info.value.line == 3

    def test_sc_garbage(self):
        with pytest.raises(ParseError):
            io.parse_sc("1 2 x\n")

    def test_g_duplicate_edge(self):
        with pytest.raises(ParseError) as info:
            io.parse_g("3\n0 1\n1 2\n1 0\n")
        assert info.value.line == 4

    def test_g_out_of_range(self):
        with pytest.raises(ParseError):
            io.parse_g("2\n0 2\n")

    def test_g_round_trip(self):
        g = io.parse_g(K4_TEXT)
        assert g.edges == complete_graph(4).edges
        assert io.emit_g(g) == K4_TEXT

    def test_csc_round_trip(self):
        text = "1 2 3 | 2\n1 2 4 | 1\n1 3 4 | 1\n2 3 4 | 3\n"
        x = io.parse_csc(text)
        assert x.colors[(2, 3, 4)] == 3
        assert io.emit_csc(x) == text

    def test_csc_missing_colour(self):
        with pytest.raises(ParseError):
            io.parse_csc("1 2 3\n")

    def test_cycles_round_trip(self):
        cycles = io.parse_cycles("0 1 2 0\n0 2 3\n")
        assert [c.vertices for c in cycles] == [(0, 1, 2), (0, 2, 3)]
        assert io.emit_cycles(cycles) == "0 1 2\n0 2 3\n"

    def test_cycle_not_in_graph(self):
        with pytest.raises(ParseError):
            io.check_cycles_in(Graph(3, [(0, 1), (1, 2)]), io.parse_cycles("0 1 2\n"))

    def test_mf_round_trip(self):
        m = simplex_boundary(3)
        _, mf = missing_function(m)
        text = io.emit_mf(2, mf, dict(enumerate(m.facets)))
        f = io.parse_mf(text)
        assert f.d == 2 and f.mf.entries == mf.entries
        assert io.emit_mf(f.d, f.mf, f.legend) == text

    def test_mf_needs_dim(self):
        with pytest.raises(ParseError):
            io.parse_mf("0 1 3\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            io.read_sc(tmp_path / "nope.sc")

    def test_run_config_checks_field(self):
        with pytest.raises(ValueError):
            io.RunConfig(p=6)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 3), st.integers(0, 6), st.integers(0, 2**32 - 1))
    def test_sc_parse_emit_is_identity(self, d, n, seed):
        c = random_stellated_sphere(d, n, seed)
        assert io.parse_sc(io.emit_sc(c)) == c


@pytest.fixture
def files(tmp_path):
    (tmp_path / "bd3.sc").write_text(BD3_TEXT)
    (tmp_path / "k4.g").write_text(K4_TEXT)
    (tmp_path / "tri.cyc").write_text("0 1 2\n0 1 3\n0 2 3\n")
    return tmp_path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestCli:
    def test_betti(self, files, capsys):
        assert run(["betti", files / "bd3.sc"], capsys)[:2] == (0, "1 0 1\n")

    def test_validate(self, files, capsys):
        code, out, _ = run(["validate", files / "bd3.sc"], capsys)
        assert code == 0 and "closed_pseudomanifold: True" in out

    def test_missing_file_exits_nonzero(self, files, capsys):
        code, _, err = run(["betti", files / "missing.sc"], capsys)
        assert code != 0 and "ParseError" in err

    def test_cheeger_and_lambda2(self, files, capsys):
        assert run(["cheeger", files / "k4.g"], capsys)[1] == "2\n"
        assert run(["lambda2", files / "k4.g"], capsys)[1] == "1.333333333333\n"

    def test_fill_and_recover(self, files, capsys):
        out_sc = files / "fill.sc"
        code, _, _ = run(["fill-cycles", files / "k4.g", files / "tri.cyc", "--degmax", 3, "--k", 2,
                          "--out", out_sc, "--report", files / "fill.txt"], capsys)
        assert code == 0
        assert betti(io.read_sc(out_sc), 2) == (1, 0, 0)
        code, out, _ = run(["recover-graph", out_sc, "--threshold", 39], capsys)
        assert out == K4_TEXT

    def test_graph_to_sphere_codec(self, files, capsys):
        out_sc = files / "k4.sc"
        run(["graph-to-sphere-codec", files / "k4.g", "--out", out_sc, "--report", files / "r.txt"], capsys)
        assert betti(io.read_sc(out_sc), 2) == (1, 0, 0)

    def test_sphere_to_graph_codec_round_trip(self, files, capsys):
        g_path = files / "bd3.g"
        run(["sphere-to-graph-codec", files / "bd3.sc", "--out", g_path], capsys)
        g = io.read_g(g_path)
        assert g.max_degree() < g.n
        code, out, _ = run(["sphere-to-graph-codec", g_path, "--decode", "--d", 2], capsys)
        back = io.parse_sc(out)
        assert len(back) == 4 and betti(back, 2) == (1, 0, 1)

    def test_dual_encode_decode(self, files, capsys):
        mf_path = files / "bd3.mf"
        run(["dual-encode", files / "bd3.sc", "--out", mf_path], capsys)
        code, out, _ = run(["dual-decode", mf_path], capsys)
        assert out == "0 1 2\n0 1 3\n0 2 3\n1 2 3\n"

    def test_colour_codec(self, files, capsys):
        (files / "bd3.csc").write_text("1 2 3 | 1\n1 2 4 | 2\n1 3 4 | 1\n2 3 4 | 1\n")
        run(["encode-colors", files / "bd3.csc", "--d", 2, "--r", 2, "--out", files / "enc.sc"], capsys)
        code, out, _ = run(["decode-colors", files / "enc.sc", "--d", 2, "--r", 2], capsys)
        x = io.parse_csc(out)
        assert sorted(x.colors.values()) == [1, 1, 1, 2]

    def test_handle_plan(self, files, capsys):
        (files / "tri.sc").write_text("1 2 3\n")
        code, out, _ = run(["handle-plan", files / "tri.sc", "--k", 4, "--incidence", files / "inc.g"], capsys)
        assert out.startswith("k 4\n")
        assert io.read_g(files / "inc.g").m == 15

    def test_collapse(self, files, capsys):
        assert run(["collapse", files / "bd3.sc"], capsys)[0] == 1
        (files / "tri.sc").write_text("1 2 3\n")
        assert run(["collapse", files / "tri.sc"], capsys)[0] == 0

    def test_four_to_three_rejects_k4(self, files, capsys):
        code, _, err = run(["four-to-three", files / "k4.g"], capsys)
        assert code != 0 and "NotFourRegular" in err

    def test_telescope_is_deterministic(self, files, capsys):
        args = ["telescope", "build", "--base", files / "k4.g", "--levels", 2, "--trials", 20, "--seed", 5]
        run(args + ["--out", files / "a.sc", "--report", files / "a.txt"], capsys)
        run(args + ["--out", files / "b.sc", "--report", files / "b.txt"], capsys)
        assert (files / "a.sc").read_bytes() == (files / "b.sc").read_bytes()
        assert (files / "a.txt").read_bytes() == (files / "b.txt").read_bytes()
        assert "scheduled_collapse: True" in (files / "a.txt").read_text()


def test_console_script_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "homsphere.cli", "betti", str(files / "bd3.sc"), "--field", "3"],
                         capture_output=True, text=True, check=True)
    assert res.stdout == "1 0 1\n"
