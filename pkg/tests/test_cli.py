"""Command behaviors and the exit-code contract."""

import json

import pytest

from efalg.catalog import make_chain, named_catalog
from efalg.cli import main
from efalg.fileformat import parse, parse_generalized, serialize


@pytest.fixture()
def chain3_file(tmp_path):
    path = tmp_path / "chain3.efa"
    path.write_text(serialize(make_chain(2)))
    return str(path)


@pytest.fixture()
def broken_file(tmp_path):
    # missing orthosupplement for element 1
    path = tmp_path / "broken.efa"
    path.write_text(
        "efa 1\norder 3\nzero 0\none 2\nsum 0 0 0\nsum 0 1 1\nsum 0 2 2\n"
    )
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_ok(capsys, chain3_file):
    code, out, _ = run(capsys, "verify", chain3_file)
    assert code == 0 and "ok" in out


def test_verify_reports_violations(capsys, broken_file):
    code, out, _ = run(capsys, "verify", broken_file)
    assert code == 1
    assert "Eiii" in out


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "verify", "/nonexistent/foo.efa")
    assert code == 3 and "error" in err


def test_parse_error_is_input_error(capsys, tmp_path):
    p = tmp_path / "bad.efa"
    p.write_text("efa 1\norder 2\nzero 0\none 1\nsum 1 1\n")
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 3 and "line 5" in err


def test_analyze_json_schema(capsys, chain3_file):
    code, out, _ = run(capsys, "analyze", chain3_file, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["sharp"] == [0, 2]
    assert doc["flags"]["homogeneous"]["value"] is True


def test_analyze_plain(capsys, chain3_file):
    code, out, _ = run(capsys, "analyze", chain3_file)
    assert code == 0 and "sharp" in out


def test_triple_writes_artifacts(capsys, tmp_path, chain3_file):
    out_dir = tmp_path / "trip"
    code, out, _ = run(capsys, "triple", chain3_file, "--out", str(out_dir))
    assert code == 0
    sharp = parse((out_dir / "sharp.efa").read_text())
    assert sharp.order == 2
    mea = parse_generalized((out_dir / "meager.gefa").read_text())
    assert mea.order == 2
    h = json.loads((out_dir / "h.json").read_text())
    assert h == {"0": [0], "1": [0, 1]}
    back = json.loads((out_dir / "backmaps.json").read_text())
    assert back["sharp_to_source"] == [0, 2]


def test_triple_hypothesis_exit(capsys, tmp_path, enumerated_6):
    from efalg.structure import is_homogeneous

    non_hom = next(a for a in enumerated_6 if not is_homogeneous(a))
    p = tmp_path / "nh.efa"
    p.write_text(serialize(non_hom))
    code, _, err = run(capsys, "triple", str(p), "--out", str(tmp_path / "t"))
    assert code == 2
    assert "homogeneous" in err


def test_roundtrip_pass(capsys, chain3_file):
    code, out, _ = run(capsys, "roundtrip", chain3_file)
    assert code == 0 and "isomorphism" in out


def test_iso_with_permuted_copy(capsys, tmp_path):
    import random

    from test_iso import permuted_copy

    alg = make_chain(3)
    a = tmp_path / "a.efa"
    b = tmp_path / "b.efa"
    a.write_text(serialize(alg))
    b.write_text(serialize(permuted_copy(alg, random.Random(5))))
    code, out, _ = run(capsys, "iso", str(a), str(b))
    assert code == 0 and "isomorphic" in out


def test_iso_negative(capsys, tmp_path):
    from efalg.catalog import make_boolean

    a = tmp_path / "a.efa"
    b = tmp_path / "b.efa"
    a.write_text(serialize(make_chain(3)))
    b.write_text(serialize(make_boolean(2)))
    code, out, _ = run(capsys, "iso", str(a), str(b))
    assert code == 1 and "not isomorphic" in out


def test_gen_chain_and_product(capsys, tmp_path):
    chain_file = tmp_path / "c4.efa"
    code, _, _ = run(capsys, "gen", "--kind", "chain", "--n", "3", "--out", str(chain_file))
    assert code == 0
    assert parse(chain_file.read_text()).order == 4

    code, out, _ = run(capsys, "gen", "--kind", "boolean", "--n", "2")
    assert code == 0 and "order 4" in out

    prod = tmp_path / "p.efa"
    code, _, _ = run(
        capsys, "gen", "--kind", "product",
        "--files", str(chain_file), str(chain_file), "--out", str(prod),
    )
    assert code == 0
    assert parse(prod.read_text()).order == 16


def test_gen_hsum(capsys, tmp_path):
    c = tmp_path / "c3.efa"
    c.write_text(serialize(make_chain(2)))
    code, out, _ = run(capsys, "gen", "--kind", "hsum", "--files", str(c), str(c))
    assert code == 0
    assert "order 4" in out


def test_gen_bad_params_input_error(capsys):
    code, _, err = run(capsys, "gen", "--kind", "chain", "--n", "0")
    assert code == 3


def test_enumerate_writes_files(capsys, tmp_path):
    out_dir = tmp_path / "enum"
    code, out, _ = run(capsys, "enumerate", "--max-order", "4", "--out", str(out_dir))
    assert code == 0
    assert "order 4: 3 algebras" in out
    files = sorted(out_dir.glob("*.efa"))
    assert len(files) == 5
    for f in files:
        parse(f.read_text())


def test_enumerate_bound_refusal(capsys, tmp_path):
    code, _, err = run(capsys, "enumerate", "--max-order", "9", "--out", str(tmp_path / "x"))
    assert code == 3 and "bound" in err


def test_suite_small(capsys):
    code, out, _ = run(capsys, "suite", "--max-order", "3")
    assert code == 0
    assert "tripletheor" in out
    assert "FAIL" not in out
    assert "failing: 0" in out


def test_module_entry_point_subprocess(tmp_path):
    import subprocess
    import sys

    path = tmp_path / "c.efa"
    path.write_text(serialize(make_chain(2)))
    proc = subprocess.run(
        [sys.executable, "-m", "efalg", "roundtrip", str(path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "isomorphism" in proc.stdout
