import pytest

from dpchroma import cli
from dpchroma.cli import Xorshift64Star, main, run_report
from dpchroma.core_graph import write_graph
from dpchroma.dp_cover import write_cover


def test_xorshift_pinned_stream():
    r = Xorshift64Star(1)
    assert [r.next64() for _ in range(3)] == [
        5180492295206395165, 12380297144915551517, 13389498078930870103]
    r = Xorshift64Star(9)
    assert [r.randrange(10) for _ in range(6)] == [7, 5, 0, 9, 9, 7]
    assert Xorshift64Star(5).shuffle(list(range(8))) == [0, 5, 3, 6, 7, 1, 2, 4]
    assert Xorshift64Star(0).x != 0  # zero seed is remapped, not a fixed point


def test_run_report_text():
    out = run_report([("alpha", True), ("beta", True, "42 cases")])
    assert out.splitlines() == ["ok alpha", "ok beta 42 cases", "PASS"]
    out = run_report([("alpha", True), ("beta", False, "boom")])
    assert out.splitlines()[-1] == "FAIL (1 of 2 checks)"
    assert "FAIL beta boom" in out
    assert run_report([]).strip() == "PASS (0 checks)"


def test_gen_files_deterministic(tmp_path, capsys):
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert main(["gen", "--hubs", "2", "--rim", "24", "--seed", "7",
                 "--out", str(a)]) == 0
    head = capsys.readouterr().out
    assert head.startswith("c seed 7 hubs 2 rim 24")
    assert main(["gen", "--hubs", "2", "--rim", "24", "--seed", "7",
                 "--out", str(b)]) == 0
    for ext in (".plane", ".cover"):
        ta = (tmp_path / ("a" + ext)).read_bytes()
        assert ta == (tmp_path / ("b" + ext)).read_bytes()
        assert ta.startswith(b"c seed 7 hubs 2 rim 24\n")
    assert main(["gen", "--hubs", "2", "--rim", "24", "--seed", "8",
                 "--out", str(a)]) == 0
    assert (tmp_path / "a.cover").read_bytes() != (tmp_path / "b.cover").read_bytes()


def test_gen_then_color_planar(tmp_path, capsys):
    pre = tmp_path / "inst"
    assert main(["gen", "--hubs", "1", "--rim", "20", "--seed", "3",
                 "--out", str(pre)]) == 0
    capsys.readouterr()
    argv = ["color-planar", "--embed", str(pre) + ".plane",
            "--cover", str(pre) + ".cover", "--trace", str(tmp_path / "t")]
    assert main(argv) == 0
    first = capsys.readouterr().out
    lines = [ln for ln in first.splitlines() if ln.startswith("v ")]
    assert len(lines) == 21
    trace = (tmp_path / "t").read_text().splitlines()
    assert trace and all(ln.split()[0] in ("R1", "R2") for ln in trace)
    assert sum(1 for ln in trace if ln.startswith("R2")) == 1
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_solve_cover_and_lists(tmp_path, capsys):
    gp = tmp_path / "g"
    gp.write_text("v 2\ne 0 1\n")
    (tmp_path / "c").write_text("L 0 1\nL 1 1\n")
    assert main(["solve", "--graph", str(gp), "--cover", str(tmp_path / "c")]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["v 0 0", "v 1 0"]  # empty matching, same index is fine
    (tmp_path / "l").write_text("A 0 x\nA 1 y\n")
    assert main(["solve", "--graph", str(gp), "--lists", str(tmp_path / "l")]) == 0
    assert capsys.readouterr().out.splitlines() == ["v 0 x", "v 1 y"]


def test_build_then_solve_negative(tmp_path, capsys):
    pre = tmp_path / "w"
    assert main(["build", "--family", "k2k2", "--k", "2", "--out", str(pre)]) == 0
    capsys.readouterr()
    rc = main(["solve", "--graph", str(pre) + ".graph",
               "--lists", str(pre) + ".lists"])
    assert rc == 10
    assert capsys.readouterr().out.strip() == "UNCOLORABLE"


def test_build_h_and_nice(tmp_path, capsys):
    pre = tmp_path / "h"
    assert main(["build", "--family", "H", "--out", str(pre)]) == 0
    for ext in (".graph", ".lists", ".plane"):
        assert (tmp_path / ("h" + ext)).exists()
    capsys.readouterr()
    assert main(["nice", "--embed", str(pre) + ".plane"]) == 0
    first = capsys.readouterr().out
    assert first and all(ln.startswith("h v ") for ln in first.splitlines())
    assert main(["nice", "--embed", str(pre) + ".plane"]) == 0
    assert capsys.readouterr().out == first


def test_color_minor_cli(tmp_path, capsys):
    from test_minor_truncated import two_c5_instance

    g, cov = two_c5_instance()
    gp = tmp_path / "g"
    cp = tmp_path / "c"
    gp.write_text(write_graph(g))
    cp.write_text(write_cover(cov))
    rc = main(["color-minor", "--graph", str(gp), "--cover", str(cp),
               "--s", "2", "--t", "2", "--override", "q=7,k=10,peel=2,degen=1",
               "--trace", str(tmp_path / "t")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "v 11 0" in out.splitlines()
    assert (tmp_path / "t").read_text() == "R2 11 11.0\nR2 10 10.4 protects 0 5\n"


def test_verify_smoke_and_report_wiring(capsys, monkeypatch):
    assert main(["verify", "--family", "k2k2", "--k", "1"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[-1] == "PASS"
    monkeypatch.setattr(cli, "verify_counterexample",
                        lambda *a, **k: [("good", True), ("bad", False, "boom")])
    assert main(["verify", "--family", "k2k2", "--k", "1"]) == 10
    out = capsys.readouterr().out
    assert "FAIL bad boom" in out


def test_input_errors_exit_2(tmp_path, capsys):
    assert main(["solve", "--graph", str(tmp_path / "nope"),
                 "--lists", str(tmp_path / "nope2")]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["build", "--family", "ks", "--k", "2",
                 "--out", str(tmp_path / "x")]) == 2
    assert main(["gen", "--hubs", "3", "--rim", "20", "--seed", "1",
                 "--out", str(tmp_path / "x")]) == 2
    assert main(["gen", "--hubs", "5", "--rim", "40", "--seed", "1",
                 "--out", str(tmp_path / "x")]) == 2
    g, cov = __import__("test_minor_truncated").two_c5_instance()
    (tmp_path / "g").write_text(write_graph(g))
    (tmp_path / "c").write_text(write_cover(cov))
    assert main(["color-minor", "--graph", str(tmp_path / "g"),
                 "--cover", str(tmp_path / "c"), "--s", "2", "--t", "2",
                 "--override", "frob=1"]) == 2
    capsys.readouterr()


def test_diagnostics_exit_3(tmp_path, capsys):
    from test_minor_truncated import two_c5_instance

    g, cov = two_c5_instance()
    (tmp_path / "g").write_text(write_graph(g))
    (tmp_path / "c").write_text(write_cover(cov))
    rc = main(["color-minor", "--graph", str(tmp_path / "g"),
               "--cover", str(tmp_path / "c"), "--s", "2", "--t", "2",
               "--override", "q=7,k=10,peel=0,degen=1"])
    assert rc == 3
    assert "diagnostic:" in capsys.readouterr().err


def test_usage_error_raises_systemexit():
    with pytest.raises(SystemExit):
        main([])
    with pytest.raises(SystemExit):
        main(["solve", "--graph", "x"])  # neither --lists nor --cover
