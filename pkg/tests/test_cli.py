import json
import os
import subprocess
import sys

import pytest

from alderkp import __version__
from alderkp.cli import CACHE_ENV, SeriesCache, default_cache_dir, main
from alderkp.qseries import gf_gap, gf_Q


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- count ------------------------------------------------------------------------------


def test_count_examples(capsys):
    assert run(capsys, "count", "--kind", "gap", "--d", "2", "--a", "1", "--n", "9")[:2] == (0, "5\n")
    code, out, _ = run(capsys, "count", "--kind", "residue", "--d", "2", "--b", "2", "--variant", "dash", "--n", "7")
    assert (code, out) == (0, "1\n")


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--kind", "gap", "--d", "0", "--a", "1", "--n", "5"],
        ["count", "--kind", "gap", "--d", "2", "--a", "0", "--n", "5"],
        ["count", "--kind", "gap", "--d", "2", "--n", "-1"],
        ["count", "--kind", "residue", "--d", "2", "--n", "5"],
        ["count", "--kind", "residue", "--d", "2", "--b", "9", "--n", "5"],
    ],
)
def test_count_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_count_big_value_is_exact(capsys):
    code, out, _ = run(capsys, "count", "--kind", "gap", "--d", "1", "--n", "1000")
    assert code == 0 and int(out) == gf_gap(1, 1, 1000)[1000]


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["count", "--kind", "nope", "--d", "1", "--n", "1"])
    assert info.value.code == 2


# -- sweep -------------------------------------------------------------------------------------


def test_sweep_kp_grid(capsys, tmp_path):
    out_file = tmp_path / "kp.csv"
    code, out, _ = run(capsys, "sweep", "--variant", "dash", "--a", "2", "--b", "2", "--d-from", "62", "--d-to", "64", "--n-max", "200", "--out", str(out_file))
    assert code == 0
    assert out.strip() == "min=0 at (d=62,n=1)"
    lines = out_file.read_text().splitlines()
    assert lines[0] == "d,n,q_count,Q_count,delta"
    assert len(lines) == 1 + 3 * 200


def test_sweep_negative_cell(capsys, tmp_path):
    out_file = tmp_path / "neg.json"
    code, out, _ = run(capsys, "sweep", "--variant", "plain", "--a", "4", "--b", "4", "--d-from", "2", "--d-to", "2", "--n-max", "20", "--out", str(out_file), "--format", "json")
    assert code == 0 and out.startswith("min=-")
    rec = json.loads(out_file.read_text())
    assert rec["first_negative"]["d"] == "2"
    q, Q = gf_gap(2, 4, 20), gf_Q("plain", 2, 4, 20)
    assert q[9] == 1 and Q[9] == 5
    csv_file = tmp_path / "neg.csv"
    run(capsys, "sweep", "--variant", "plain", "--a", "4", "--d-from", "2", "--d-to", "2", "--n-max", "20", "--out", str(csv_file))
    assert "2,9,1,5,-4" in csv_file.read_text().splitlines()


@pytest.mark.parametrize(
    "argv",
    [
        ["--d-from", "5", "--d-to", "4", "--n-max", "10"],
        ["--d-from", "1", "--d-to", "4", "--n-min", "11", "--n-max", "10"],
        ["--d-from", "1", "--d-to", "4", "--n-max", "10", "--jobs", "0"],
        ["--d-from", "0", "--d-to", "4", "--n-max", "10"],
    ],
)
def test_sweep_usage_errors(capsys, argv):
    assert run(capsys, "sweep", "--variant", "plain", "--a", "1", *argv)[0] == 2


def test_sweep_b_out_of_range(capsys):
    assert run(capsys, "sweep", "--variant", "plain", "--a", "4", "--d-from", "1", "--d-to", "3", "--n-max", "10")[0] == 2


def test_sweep_io_failure(capsys, tmp_path):
    bad = tmp_path / "missing-dir" / "x.csv"
    code, _, err = run(capsys, "sweep", "--variant", "plain", "--a", "1", "--d-from", "1", "--d-to", "2", "--n-max", "10", "--out", str(bad))
    assert code == 4 and "cannot write" in err


def test_sweep_engine_disagreement(capsys, isolated_cache):
    # poison a cached Q column; the DP cross-check must catch it
    cache = SeriesCache(isolated_cache)
    good = gf_Q("plain", 3, 1, 10)
    c = list(good.coefficients)
    c[7] += 1
    from alderkp.qseries import TruncatedSeries

    cache.store(cache_key_residue("plain", 3, 1, 10), TruncatedSeries(10, tuple(c)))
    code, _, err = run(capsys, "sweep", "--variant", "plain", "--a", "1", "--d-from", "3", "--d-to", "3", "--n-min", "7", "--n-max", "10", "--cross-check", "1.0")
    assert code == 3 and "d=3 n=7" in err


def cache_key_residue(variant, d, b, N):
    from alderkp.partitions import residue_spec

    return {"kind": "residue", "variant": variant, "d": d, "b": b, "excluded": sorted(residue_spec(variant, d, b).excluded), "N": N}


def test_sweep_deterministic_and_cache_sound(capsys, tmp_path, isolated_cache):
    argv = ["sweep", "--variant", "dashdash", "--a", "3", "--d-from", "1", "--d-to", "6", "--n-max", "80", "--format", "json"]
    outs = []
    for extra in ([], [], ["--no-cache"], ["--jobs", "3"]):
        f = tmp_path / f"r{len(outs)}.json"
        assert run(capsys, *argv, "--out", str(f), *extra)[0] == 0
        outs.append(f.read_bytes())
    assert len(set(outs)) == 1
    assert len(list(isolated_cache.glob("*.json"))) == 12


def test_cache_dir_flag(capsys, tmp_path):
    target = tmp_path / "explicit"
    run(capsys, "sweep", "--variant", "plain", "--a", "1", "--d-from", "2", "--d-to", "2", "--n-max", "30", "--cache-dir", str(target))
    names = sorted(p.name for p in target.iterdir())
    assert len(names) == 2 and names[0].startswith("gap-") and names[1].startswith("residue-")


# -- cache ---------------------------------------------------------------------------------------


def test_default_cache_dir(monkeypatch, tmp_path):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert default_cache_dir() == tmp_path
    monkeypatch.delenv(CACHE_ENV)
    assert default_cache_dir().name == "alderkp"


def test_cache_round_trip_and_header(tmp_path):
    cache = SeriesCache(tmp_path)
    s = cache.gap(3, 2, 50)
    assert s == gf_gap(3, 2, 50)
    (path,) = tmp_path.glob("gap-*.json")
    header = json.loads(path.read_text().splitlines()[0])
    assert header["version"] == __version__
    assert header["key"] == {"kind": "gap", "d": 3, "a": 2, "N": 50}
    assert header["engine"] == "series" and "created" in header
    assert cache.gap(3, 2, 50) == s
    assert not list(tmp_path.glob(".tmp-*"))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda text: text[: len(text) // 2],
        lambda text: "garbage\n" + text,
        lambda text: text.replace(__version__, "0.0.0-old", 1),
        lambda text: text.replace('"N": 50', '"N": 51', 1),
        lambda text: text.split("\n", 1)[0] + "\n" + json.dumps({"degree_bound": 3, "coefficients": ["1", "0", "0", "0"]}),
    ],
    ids=["truncated", "bad-header", "stale-version", "key-mismatch", "degree-mismatch"],
)
def test_cache_evicts_bad_entries(tmp_path, mutate):
    cache = SeriesCache(tmp_path)
    good = cache.gap(4, 1, 50)
    (path,) = tmp_path.glob("gap-*.json")
    path.write_text(mutate(path.read_text()))
    key = {"kind": "gap", "d": 4, "a": 1, "N": 50}
    assert cache.load(key) is None
    assert not path.exists()
    assert cache.gap(4, 1, 50) == good
    assert path.exists()


def test_cache_keys_distinguish_variants(tmp_path):
    cache = SeriesCache(tmp_path)
    a = cache.residue("dash", 5, 2, 40)
    b = cache.residue("dashdash", 5, 2, 40)
    assert a == gf_Q("dash", 5, 2, 40) and b == gf_Q("dashdash", 5, 2, 40)
    assert len(list(tmp_path.glob("residue-*.json"))) == 2


def test_cache_store_is_atomic(tmp_path, monkeypatch):
    cache = SeriesCache(tmp_path)
    s = gf_gap(2, 1, 20)

    def boom(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", boom)
    with pytest.raises(OSError):
        cache.store({"kind": "gap", "d": 2, "a": 1, "N": 20}, s)
    assert list(tmp_path.iterdir()) == []


# -- verify ------------------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["--check", "rr2", "--n-max", "300"],
        ["--check", "de-duality", "--d", "15", "--k", "0", "--l", "4", "--n-max", "120"],
        ["--check", "involution", "--a", "3", "--d", "16", "--n-max", "120"],
        ["--check", "psi-map", "--a", "3", "--d", "32", "--n-max", "120"],
        ["--check", "fk-nonneg", "--a", "4", "--d", "72", "--N", "200"],
    ],
)
def test_verify_pass(capsys, argv):
    code, out, _ = run(capsys, "verify", *argv)
    assert code == 0 and out.startswith("pass")


def test_verify_report_file(capsys, tmp_path):
    f = tmp_path / "rep.json"
    assert run(capsys, "verify", "--check", "case3-constants", "--d", "31", "--report", str(f))[0] == 0
    rep = json.loads(f.read_text())
    assert rep["passed"] is True and rep["details"]["Q_dash_5d"] == "20"
    assert run(capsys, "verify", "--check", "euler", "--report", str(tmp_path / "no" / "x.json"))[0] == 4


def test_verify_failure_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--check", "involution", "--a", "1", "--d", "16", "--n-max", "80", "--reading", "literal")
    assert code == 1 and "witness" in out
    code, out, _ = run(capsys, "verify", "--check", "involution", "--a", "1", "--d", "16", "--n-max", "80", "--reading", "repaired")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["--check", "kp-theorem", "--d-min", "10", "--d-max", "12"],
        ["--check", "prop31", "--d", "20"],
        ["--check", "euler", "--d", "3"],
    ],
)
def test_verify_usage_errors(capsys, argv):
    assert run(capsys, "verify", *argv)[0] == 2


# -- asymptotic -------------------------------------------------------------------------------------------


def test_asymptotic_records(capsys):
    code, out, _ = run(capsys, "asymptotic", "--d", "1", "--a", "1")
    rec = json.loads(out)
    assert code == 0 and rec["alpha"] == "0.5"
    assert rec["A"].startswith("0.822467033424113218236")
    code, out, _ = run(capsys, "asymptotic", "--d", "2", "--a", "1")
    assert json.loads(out)["alpha"].startswith("0.6180339887")


def test_asymptotic_crossover(capsys):
    code, out, _ = run(capsys, "asymptotic", "--d", "10", "--a", "2", "--find-crossover")
    rec = json.loads(out)
    assert code == 0 and rec["n_d"] >= 1 and rec["heuristic"] is True


@pytest.mark.parametrize(
    "argv",
    [["--d", "4", "--a", "5", "--find-crossover"], ["--d", "0"], ["--d", "4", "--precision", "10"]],
)
def test_asymptotic_usage_errors(capsys, argv):
    assert run(capsys, "asymptotic", *argv)[0] == 2


def test_console_script(tmp_path):
    env = dict(os.environ, **{CACHE_ENV: str(tmp_path)})
    proc = subprocess.run(
        [sys.executable, "-m", "alderkp.cli", "count", "--kind", "gap", "--d", "2", "--a", "1", "--n", "9"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 0 and proc.stdout == "5\n"
