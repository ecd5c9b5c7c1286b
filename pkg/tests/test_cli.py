"""The thin-client CLI: scriptability contract, exit codes, file round trips."""

from realset.cli import main


def run_cli(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as stop:
        code = stop.code if isinstance(stop.code, int) else 2
    out, err = capsys.readouterr()
    return code, out, err


def test_compile_member_classify(tmp_path, capsys):
    target = tmp_path / "a.rna"
    code, out, _ = run_cli(["compile", "--base", "2", "x <= 1/2", "-o", str(target)], capsys)
    assert code == 0 and target.exists()

    code, out, _ = run_cli(["member", str(target), "1/3"], capsys)
    assert code == 0 and out == "true\n"

    code, out, _ = run_cli(["member", str(target), "2/3"], capsys)
    assert code == 0 and out == "false\n"

    code, out, _ = run_cli(["classify", str(target)], capsys)
    assert code == 0 and out == "WEAK\n"


def test_member_malformed_rational_exit_2(tmp_path, capsys):
    target = tmp_path / "a.rna"
    run_cli(["compile", "--base", "2", "x <= 1/2", "-o", str(target)], capsys)
    code, _, err = run_cli(["member", str(target), "1/0"], capsys)
    assert code == 2 and "malformed rational" in err


def test_syntax_error_exit_2(capsys):
    code, _, err = run_cli(["compile", "--base", "2", "x <"], capsys)
    assert code == 2
    assert "column 4" in err


def test_written_automaton_reloads_equivalent(tmp_path, capsys):
    path = tmp_path / "b.rna"
    run_cli(["compile", "--base", "3", "x < 1/3 | x >= 2/3", "-o", str(path)], capsys)
    from realset.automata import equivalent, load_automaton
    from realset.arith import compile_formula

    reloaded = load_automaton(path.read_text())
    assert equivalent(reloaded, compile_formula("x < 1/3 | x >= 2/3", 3).automaton)[0]


def test_intervals_not_finite_exit_1(tmp_path, capsys):
    dual = tmp_path / "d.rna"
    clipped = tmp_path / "c.rna"
    run_cli(["dualset", "--base", "6", "-o", str(dual)], capsys)
    run_cli(["clip", str(dual), "0", "1", "-o", str(clipped)], capsys)
    code, out, _ = run_cli(["intervals", str(clipped)], capsys)
    assert code == 1 and out == "NOT_INTERVAL_FINITE\n"


def test_intervals_success(tmp_path, capsys):
    path = tmp_path / "iv.rna"
    run_cli(["compile", "--base", "2", "0 <= x & x < 1/2", "-o", str(path)], capsys)
    code, out, _ = run_cli(["intervals", str(path)], capsys)
    assert code == 0 and "class 0 0 : [0,1/2)" in out


def test_stability_flags(tmp_path, capsys):
    dual = tmp_path / "d.rna"
    run_cli(["dualset", "--base", "6", "-o", str(dual)], capsys)
    code, out, _ = run_cli(["stability", str(dual), "6", "--domain", "0..1"], capsys)
    assert code == 0 and out == "true\n"
    code, out, _ = run_cli(["stability", str(dual), "6", "--domain", "bad"], capsys)
    assert code == 2


def test_pipeline_and_compare(tmp_path, capsys):
    d6 = tmp_path / "d6.rna"
    d12 = tmp_path / "d12.rna"
    run_cli(["dualset", "--base", "6", "-o", str(d6)], capsys)
    run_cli(["dualset", "--base", "12", "-o", str(d12)], capsys)
    code, out, _ = run_cli(["pipeline", str(d6), str(d12)], capsys)
    assert code == 0 and "verified_r: True" in out
    code, out, _ = run_cli(
        ["compare", str(d6), str(d12), "--samples", "50", "--seed", "9"], capsys
    )
    assert code == 0 and "agreements: 50" in out


def test_compare_requires_seed(tmp_path, capsys):
    d6 = tmp_path / "d6.rna"
    run_cli(["dualset", "--base", "6", "-o", str(d6)], capsys)
    code, _, err = run_cli(["compare", str(d6), str(d6), "--samples", "10"], capsys)
    assert code == 2


def test_oscillate_and_dot(tmp_path, capsys):
    d6 = tmp_path / "d6.rna"
    run_cli(["dualset", "--base", "6", "-o", str(d6)], capsys)
    code, out, _ = run_cli(["oscillate", str(d6), "--depth", "4"], capsys)
    assert code == 0 and out.count("eps") == 4
    code, out, _ = run_cli(["dot", str(d6)], capsys)
    assert code == 0 and out.startswith("digraph")


def test_unknown_verb_rejected(capsys):
    code, _, err = run_cli(["frobnicate"], capsys)
    assert code == 2


def test_missing_file_exit_2(capsys):
    code, _, err = run_cli(["classify", "/nonexistent/path.rna"], capsys)
    assert code == 2


def test_suite_writes_csv(tmp_path, capsys):
    csv_path = tmp_path / "report.csv"
    code, out, _ = run_cli(
        ["suite", "6", "12", "--seed", "1", "--csv", str(csv_path)], capsys
    )
    assert code == 0
    assert "overall: pass" in out
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "experiment,base_r,base_s,verdict,witness"
    assert any(row.startswith("pipeline") for row in lines)


def test_affine_basepow_stardelay_wiring(tmp_path, capsys):
    box = tmp_path / "box.rna"
    run_cli(["compile", "--base", "2", "0 <= x & x <= 1", "-o", str(box)], capsys)

    scaled = tmp_path / "scaled.rna"
    code, _, _ = run_cli(["affine", str(box), "1/2", "1/4", "-o", str(scaled)], capsys)
    assert code == 0
    code, out, _ = run_cli(["member", str(scaled), "3/4"], capsys)
    assert code == 0 and out == "true\n"

    up = tmp_path / "up.rna"
    code, _, _ = run_cli(["basepow", str(scaled), "up", "2", "-o", str(up)], capsys)
    assert code == 0
    code, out, _ = run_cli(["member", str(up), "1/4"], capsys)
    assert code == 0 and out == "true\n"
    down = tmp_path / "down.rna"
    code, _, _ = run_cli(["basepow", str(up), "down", "2", "-o", str(down)], capsys)
    assert code == 0

    half = tmp_path / "half.rna"
    run_cli(["compile", "--base", "2", "1/2 <= x & x <= 1", "-o", str(half)], capsys)
    delayed = tmp_path / "delayed.rna"
    code, _, _ = run_cli(["stardelay", str(half), "-o", str(delayed)], capsys)
    assert code == 0
    code, out, _ = run_cli(["member", str(delayed), "3"], capsys)
    assert code == 0 and out == "true\n"

    code, out, _ = run_cli(["sumstability", str(box), "1", "--domain", "0..4"], capsys)
    assert code == 0 and out == "false\n"


def test_boundary_and_serve_parser(tmp_path, capsys):
    box = tmp_path / "box.rna"
    run_cli(["compile", "--base", "2", "0 <= x & x <= 1", "-o", str(box)], capsys)
    edge = tmp_path / "edge.rna"
    code, _, _ = run_cli(["boundary", str(box), "-o", str(edge)], capsys)
    assert code == 0
    code, out, _ = run_cli(["intervals", str(edge)], capsys)
    assert code == 0 and "[0,0]" in out and "[1,1]" in out
