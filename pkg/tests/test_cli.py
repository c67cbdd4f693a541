import json
import textwrap

import pytest

from matpi.cli import main, parse_ring_flag
from matpi.errors import MatpiError
from matpi.rings import GF, QQ, Zmod


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def spec_file(tmp_path, text, name="alg.yaml"):
    p = tmp_path / name
    p.write_text(textwrap.dedent(text))
    return str(p)


def test_parse_ring_flag():
    assert parse_ring_flag("gf:101") == GF(101)
    assert parse_ring_flag("q") == QQ
    assert parse_ring_flag("zmod:4") == Zmod(4)
    with pytest.raises(MatpiError):
        parse_ring_flag("gf:nope")
    with pytest.raises(MatpiError):
        parse_ring_flag("weird")


def test_verify_al_n2(capsys):
    code, out, err = run(capsys, "verify-al", "--n", "2")
    assert code == 0
    assert out.count("[PASS]") == 4
    assert "al-identity" in out
    assert "staircase-value" in out


def test_verify_al_structured_byte_stable(capsys):
    code1, out1, _ = run(capsys, "verify-al", "--n", "2", "--out", "structured")
    code2, out2, _ = run(capsys, "verify-al", "--n", "2", "--out", "structured")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["artifact"]["name"] == "matpi"
    assert doc["wall_time_ms"] is None
    assert all(c["status"] == "pass" for c in doc["checks"])


def test_verify_al_timings_flag(capsys):
    code, out, _ = run(capsys, "verify-al", "--n", "2", "--out", "structured", "--timings")
    doc = json.loads(out)
    assert doc["wall_time_ms"] is not None


def test_verify_al_qq(capsys):
    code, out, _ = run(capsys, "verify-al", "--n", "2", "--ring", "q")
    assert code == 0
    assert out.count("[PASS]") == 4


def test_verify_al_exhaustive_guard(capsys):
    code, out, err = run(capsys, "verify-al", "--n", "5", "--mode", "exhaustive")
    assert code == 1
    assert "randomized" in err


def test_classify_full_block(tmp_path, capsys):
    path = spec_file(tmp_path, """
        ring: {kind: gf, p: 101}
        n: 3
        shape: [1, 2]
        source:
          construction: {kind: full_block}
    """)
    code, out, _ = run(capsys, "classify", "--spec", path)
    assert code == 0
    assert "full-block-triangular(1,2)" in out
    assert "[PASS] identity-cross-check" in out


def test_classify_repetition(tmp_path, capsys):
    path = spec_file(tmp_path, """
        ring: {kind: gf, p: 101}
        n: 4
        shape: [2, 2]
        source:
          construction: {kind: diagonal_embedding, k: 2, copies: 2}
    """)
    code, out, _ = run(capsys, "classify", "--spec", path)
    assert code == 0
    assert "repetition" in out
    assert "consistent" in out


def test_classify_not_canonical_skips_cross_check(tmp_path, capsys):
    path = spec_file(tmp_path, """
        ring: {kind: gf, p: 101}
        n: 2
        shape: [1, 1]
        source:
          construction: {kind: full_matrix}
    """)
    code, out, _ = run(capsys, "classify", "--spec", path)
    assert code == 0
    assert "not-canonical" in out or "NotCanonical" in out or "not block upper" in out


def test_classify_requires_shape(tmp_path, capsys):
    path = spec_file(tmp_path, """
        ring: {kind: gf, p: 101}
        n: 2
        source:
          construction: {kind: full_matrix}
    """)
    code, out, err = run(capsys, "classify", "--spec", path)
    assert code == 1
    assert "shape" in err


def test_min_degree_m2(tmp_path, capsys):
    path = spec_file(tmp_path, """
        ring: {kind: gf, p: 101}
        n: 2
        source:
          construction: {kind: full_matrix}
    """)
    code, out, _ = run(capsys, "min-degree", "--spec", path)
    assert code == 0
    assert "minimal standard degree 4" in out


def test_identity_space_m2(capsys):
    code, out, _ = run(capsys, "identity-space", "--n", "2", "--t", "4")
    assert code == 0
    assert "dimension 1" in out
    assert "permutation-sign vector" in out


def test_identity_space_structured(capsys):
    code, out, _ = run(capsys, "identity-space", "--n", "2", "--t", "3",
                       "--out", "structured")
    doc = json.loads(out)
    assert doc["checks"][0]["detail"]["dimension"] == 0


def test_lemma_suite(capsys):
    code, out, _ = run(capsys, "lemma-suite", "--trials", "50")
    assert code == 0
    assert "[FAIL]" not in out
    assert "mod-ring-witness(n=3)" in out


def test_bench_runs(capsys):
    code, out, _ = run(capsys, "bench", "--t", "4", "--n", "2")
    assert code == 0
    assert "evals/s" in out


def test_missing_spec_file_exits_1(capsys):
    code, out, err = run(capsys, "classify", "--spec", "/no/such/file.yaml")
    assert code == 1
    assert "error" in err


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["verify-al"])  # missing required --n
    assert ei.value.code == 1


def test_unknown_subcommand_exits_1(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["frobnicate"])
    assert ei.value.code == 1
