import pytest

from logacm.cli import ProblemSpec, main
from logacm.errors import InputError


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_problem_spec_roundtrip():
    spec = ProblemSpec.from_dict(
        {"variety": {"kind": "hirzebruch", "e": 2}, "polarization": [1, 3], "cap": 5}
    )
    again = ProblemSpec.from_dict(
        {k: v for k, v in spec.to_dict().items() if v not in (None,)}
    )
    assert again == spec


def test_unknown_fields_rejected():
    with pytest.raises(InputError):
        ProblemSpec.from_dict({"variety": {"kind": "quadric"}, "bogus": 1})
    with pytest.raises(InputError):
        ProblemSpec.from_dict({"variety": {"kind": "quadric", "oops": 2}})
    with pytest.raises(InputError):
        ProblemSpec.from_dict({"variety": {"kind": "quadric"}, "sheaf": "mystery"})


def test_parse_error_exit_code(tmp_path, capsys):
    p = write(tmp_path, "bad.yaml", "variety: {kind: quadric}\nbogus: 1\n")
    code, _ = run(capsys, "classify", str(p))
    assert code == 2


def test_cohom_rows(tmp_path, capsys):
    p = write(
        tmp_path,
        "f2.yaml",
        "variety: {kind: hirzebruch, e: 2}\npolarization: [1, 3]\nsheaf: tangent\nwindow: [-1, 1]\n",
    )
    code, out = run(capsys, "cohom", str(p), "--no-header")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["t", "h0", "h1", "h2"]
    row0 = dict(zip(("t", "h0", "h1", "h2"), lines[2].split()))
    assert row0 == {"t": "0", "h0": "7", "h1": "1", "h2": "0"}


def test_classify_exit_codes(tmp_path, capsys):
    yes = write(
        tmp_path,
        "yes.yaml",
        "variety: {kind: projective_space, n: 3}\npolarization: 1\n"
        "arrangement: {components: [[1],[1],[1],[1]]}\n",
    )
    no = write(
        tmp_path,
        "no.yaml",
        "variety: {kind: quadric}\npolarization: [1, 1]\n"
        "arrangement: {components: [[1,0],[1,0],[1,0],[1,0],[0,1]]}\n",
    )
    code, out = run(capsys, "classify", str(yes))
    assert code == 0 and "verdict: Yes" in out
    code, out = run(capsys, "classify", str(no))
    assert code == 1 and "verdict: No" in out and "witness" in out


def test_classify_unknown_exit(tmp_path, capsys):
    # steep polarization beyond the cap: Unknown, exit 3
    p = write(
        tmp_path,
        "unk.yaml",
        "variety: {kind: hirzebruch, e: 6}\npolarization: [1, 7]\n"
        "arrangement: {components: [[0, 1]]}\ncap: 1\n",
    )
    code, out = run(capsys, "classify", str(p))
    assert code in (1, 3)
    if code == 3:
        assert "Unknown" in out


def test_search_rows(tmp_path, capsys):
    p = write(
        tmp_path,
        "s.yaml",
        "variety: {kind: quadric}\npolarization: [1, 1]\nclass_bound: 4\nm_bound: 6\n",
    )
    code, out = run(capsys, "search", str(p), "--format", "csv", "--no-header")
    assert code == 0
    yes_rows = [ln for ln in out.splitlines() if ",Yes," in ln]
    assert len(yes_rows) == 9


def test_deficiency_certificate(tmp_path, capsys):
    p = write(
        tmp_path,
        "ab.yaml",
        "variety: {kind: abelian, polarization_square: 2}\npolarization: 1\ndegree: 1\n",
    )
    code, out = run(capsys, "deficiency", str(p))
    assert code == 0
    assert "1-Buchsbaum (one-degree rule)" in out
    assert any(ln.split() == ["0", "4"] for ln in out.splitlines())


def test_deficiency_uncertified_scan(tmp_path, capsys):
    p = write(
        tmp_path,
        "p3m6.yaml",
        "variety: {kind: projective_space, n: 3}\npolarization: 1\ndegree: 2\n"
        "arrangement: {components: [[1],[1],[1],[1],[1],[1]]}\nwindow: [-4, 0]\n",
    )
    code, out = run(capsys, "deficiency", str(p))
    assert code == 0
    assert "not certified" in out
    assert any(ln.split()[:2] == ["-3", "2"] for ln in out.splitlines() if ln.strip())


def test_ledger_output(tmp_path, capsys):
    p = write(tmp_path, "led.yaml", "ledger: dp4\n")
    code, out = run(capsys, "ledger", str(p))
    assert code == 0
    assert "values: (60, 10, 12)" in out
    assert "contradiction: yes" in out


def test_directory_mode_deterministic(tmp_path, capsys):
    write(
        tmp_path,
        "a.yaml",
        "variety: {kind: projective_space, n: 2}\npolarization: 1\n"
        "arrangement: {components: [[1],[1]]}\n",
    )
    write(
        tmp_path,
        "b.yaml",
        "variety: {kind: quadric}\npolarization: [1, 1]\n"
        "arrangement: {components: [[1,0],[0,1]]}\n",
    )
    code1, out1 = run(capsys, "classify", str(tmp_path), "--no-header")
    code2, out2 = run(capsys, "classify", str(tmp_path), "--no-header", "--jobs", "2")
    assert code1 == code2 == 0
    assert out1 == out2
    lines = out1.splitlines()
    assert lines[0].startswith("file,")
    assert lines[1].startswith("a.yaml,Yes")


def test_header_banner(tmp_path, capsys):
    p = write(tmp_path, "led.yaml", "ledger: cubic_surface\n")
    _, with_header = run(capsys, "ledger", str(p))
    _, without = run(capsys, "ledger", str(p), "--no-header")
    assert with_header.splitlines()[0].startswith("# logacm ")
    assert not without.splitlines()[0].startswith("# logacm")


def test_missing_file_exit(capsys):
    code, _ = run(capsys, "classify", "/nonexistent/prob.yaml")
    assert code == 2
