import shutil

import pytest

from oracles import euler_genus
from planaria import fixtures as F
from planaria.codec import ParseError, canonical_key
from planaria.core import genus, validate
from planaria.transforms import DOUBLE_BIGON


def test_every_name_is_bundled(fx):
    assert set(F.NAMES) <= set(fx)


def test_curves_are_valid(fx):
    for name, d in fx.items():
        if name.startswith("tangle."):
            continue
        assert validate(d) is None, name
        if not d.is_bare:
            assert genus(d) == euler_genus(d.alpha)


def test_expected_sizes(fx):
    assert fx["fig3.main"].n == 16
    assert fx["fig4.expanded"].n == 9
    assert fx["small.seed"].n == 3
    assert fx["torus.right"].n == 2
    assert fx["torus.left"].is_bare and fx["torus.left"].bare_genus == 1
    assert genus(fx["fig3.main"]) == 0


def test_tangle_round_trip():
    text = F.emit_tangle(DOUBLE_BIGON)
    assert F.parse_tangle(text) == DOUBLE_BIGON


@pytest.mark.parametrize("text, msg", [
    ("X 0: B0 B1 B2\n", "edge ends"),
    ("X 0: B0 B1 B2 B2\n", "used twice"),
    ("X 0: B0 B1 1 2\n", "boundary slots"),
    ("X 0: B0 B1 B2 B3\nX 1: 1 1 2 3\n", "dangling"),
    ("Y 0: 1 2 3 4\n", "bad tangle line"),
])
def test_tangle_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        F.parse_tangle(text)


def test_bundle_matches_fresh_build(fx):
    built, seqs = F.build()
    for name, obj in built.items():
        if name.startswith("tangle."):
            assert obj == fx[name]
        else:
            assert canonical_key(obj, colors=True) == canonical_key(fx[name], colors=True), name
    assert set(seqs) == set(F.SEQUENCE_NAMES)


def test_env_override(tmp_path, monkeypatch, fx):
    src = F.fixtures_path()
    shutil.copy(src, tmp_path / "fixtures.quad")
    shutil.copy(F.sequences_path(), tmp_path / "sequences.txt")
    with open(tmp_path / "fixtures.quad", "a") as fh:
        fh.write("\n@ extra.kink\nX 0: 1 2 2 1\n")
    monkeypatch.setenv(F.ENV, str(tmp_path))
    got = F.load_fixtures()
    assert "extra.kink" in got and got["extra.kink"].n == 1
    assert F.sequences_path() == tmp_path / "sequences.txt"
    start, seq, goal = F.sequence("lemma6", got)
    assert len(seq) == 5


def test_unknown_fixture_name():
    with pytest.raises(KeyError, match="unknown fixture"):
        F.fixture("fig99")


def test_duplicate_names_rejected(tmp_path):
    p = tmp_path / "dup.quad"
    p.write_text("@ a\nX 0: 1 2 2 1\n@ a\nX 0: 1 2 2 1\n")
    with pytest.raises(ParseError, match="duplicate"):
        F.load_fixtures(p)


def test_sequence_text_round_trip():
    start, seq, _ = F.sequence("theorem3.sub3")
    lines = F.format_sequence(start, seq)
    assert F.parse_sequence(start, lines) == seq
