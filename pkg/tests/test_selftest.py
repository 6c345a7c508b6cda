import json

import pytest

from utk.model import fixtures as FX
from utk.model import selftest as ST


@pytest.fixture(scope="module")
def full_report():
    return ST.run(max_dim=2)


def test_selftest_passes(full_report):
    assert full_report.ok, full_report.summary()


def test_selftest_covers_every_axiom(full_report):
    names = [e.name for e in full_report.entries]
    for marker in ("axiom-1-unit", "axiom-2-flip", "axiom-3-contract",
                   "axiom-4-unit-beta", "axiom-5-flip-beta"):
        assert any(marker in n for n in names), marker


def test_selftest_never_aborts_early(full_report):
    # the battery aggregates; a report exists for every registered check
    assert len(full_report.entries) > 40


def test_selftest_rejects_bad_dimension():
    report = ST.run(max_dim=5)
    assert not report.ok


def test_report_json_stable(full_report):
    a = full_report.to_json()
    b = full_report.to_json()
    assert a == b
    parsed = json.loads(a)
    assert parsed["pass"] is True
    assert {"name", "status", "error"} <= set(parsed["declarations"][0].keys())


def test_fixture_file_loading(tmp_path):
    path = tmp_path / "fixtures.txt"
    path.write_text(
        "# a discrete square\n"
        "cset base\n"
        "  cells: p q\n"
        "\n"
        "family F over base\n"
        "  fiber p: u v\n"
        "  fiber q: w\n"
    )
    loaded = FX.load_fixture_file(path)
    assert len(loaded) == 1
    fx = loaded[0]
    assert fx.name == "loaded/F"
    assert sorted(fx.fib.family.fiber(frozenset(), "p")) == ["u", "v"]
    assert fx.fib.comp is not None


def test_fixture_file_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("family F over missing\n  fiber p: u\n")
    with pytest.raises(FX.FixtureFormatError):
        FX.load_fixture_file(path)


def test_selftest_with_loaded_fixtures(tmp_path):
    path = tmp_path / "fixtures.txt"
    path.write_text(
        "cset base\n"
        "  cells: p\n"
        "\n"
        "family F over base\n"
        "  fiber p: u v w\n"
    )
    report = ST.run(max_dim=2, fixtures_path=str(path))
    assert report.ok
    assert any("loaded/F" in e.name for e in report.entries)
