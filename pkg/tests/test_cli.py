import io
import subprocess
import sys

import pytest

from pregroup_lab import demo
from pregroup_lab.cli import main
from pregroup_lab.grammar import bundled_path


def run(*argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_parse_she_sleeps():
    code, out = run("parse", "--show-links", "she sleeps .")
    assert code == 0
    assert "1 parse\n" in out and "parse 1 <= s1" in out
    assert "1-2 : pi3 pi3^r" in out and "* 3 : s1 <= s1" in out


def test_parse_words_as_separate_arguments():
    assert run("parse", "she", "sleeps", ".")[0] == 0


def test_parse_no_result():
    code, out = run("parse", "she sleep .")
    assert code == 1 and "0 parses" in out


def test_parse_unknown_word(capsys):
    code, _ = run("parse", "she xyzzy .")
    assert code == 2
    assert "xyzzy" in capsys.readouterr().err


def test_parse_stdin_batch(monkeypatch):
    code, out = run("parse", "--format", "tsv", stdin="she sleeps .\nmay she sleep ?\n",
                    monkeypatch=monkeypatch)
    assert code == 0
    rows = out.splitlines()
    assert rows[0].startswith("sentence\tparse")
    assert rows[1].split("\t")[:4] == ["1", "1", "she sleeps", "s1"]
    assert all(r.split("\t")[3] == "q1" for r in rows[2:])


def test_parse_svg():
    code, out = run("parse", "--format", "svg", "When may she see him?")
    assert code == 0 and out.startswith("<svg") and out.count("<path") == 10


def test_parse_output_is_deterministic():
    assert run("parse", "--show-links", "What did the old man eat?") == \
        run("parse", "--show-links", "What did the old man eat?")


def test_parse_limit_exceeded(capsys):
    code, _ = run("parse", "--limit", "1", "may she sleep ?")
    assert code == 2 and "limit" in capsys.readouterr().err


def test_parse_targets_flag():
    code, out = run("parse", "--targets", "noun_phrase", "men whom john saw")
    assert code == 0 and "<= nbar" in out


def test_grammar_from_environment(monkeypatch):
    monkeypatch.setenv("PREGROUP_LAB_GRAMMAR", str(bundled_path("lumberjack.grammar")))
    assert run("parse", "lumberjacks drink .")[0] == 0
    monkeypatch.delenv("PREGROUP_LAB_GRAMMAR")
    assert run("parse", "lumberjacks drink .")[0] == 2


def test_missing_grammar_file(capsys):
    assert run("parse", "--grammar", "/nonexistent.grammar", "she sleeps .")[0] == 2


def test_meaning_graded():
    assert run("meaning", "lumberjacks drink .") == (0, "shape 2\n0.8 0.2\n")


def test_meaning_question_matches_declarative():
    assert run("meaning", "may lumberjacks drink ?")[1] == run("meaning", "lumberjacks may drink .")[1]


def test_meaning_strict():
    code, out = run("meaning", "--model", "strict", "red lumberjacks drink .")
    assert code == 0
    values = [float(x) for x in out.splitlines()[1].split()]
    assert values == pytest.approx([0, 1], abs=1e-12)


def test_meaning_no_parse():
    assert run("meaning", "drink lumberjacks .") == (1, "")


def test_meaning_all():
    code, out = run("meaning", "--all", "lumberjacks drink .")
    assert code == 0 and out.startswith("parse 1 <= s\n")


def test_meaning_model_directory():
    path = demo.MODELS.joinpath("graded")
    assert run("meaning", "--model", str(path), "lumberjacks drink .")[0] == 0


def test_similarity():
    assert run("similarity", "red lumberjack", "red lumberjack") == (0, "1\n")
    code, out = run("similarity", "red lumberjack", "fashion")
    assert code == 0 and float(out) == pytest.approx(0.9768, abs=1e-4)


def test_similarity_zero_vector(capsys):
    assert run("similarity", "red bank", "fashion")[0] == 2
    assert "zero" in capsys.readouterr().err


def test_audit():
    code, out = run("audit", "2", "3", "4")
    assert code == 0
    assert out == "tensor\t24\t24\tequal\ndirect_sum\t20\t14\tunequal\n"
    assert run("audit", "1", "1", "1")[1].endswith("direct_sum\t2\t2\tequal\n")


def test_audit_usage_error(capsys):
    assert run("audit", "1", "2")[0] == 2
    assert "usage" in capsys.readouterr().err


def test_demo(tmp_path, capsys):
    code, out = run("demo", "--strict-lombard", "--out", str(tmp_path))
    assert code == 0
    assert sum(line.startswith("PASS A") for line in out.splitlines()) == 5
    assert "FAIL" not in out
    assert "lombard" in capsys.readouterr().err
    for name in ("clustered.tsv", "truth.tsv", "word_space.png", "truth_plane.png"):
        assert (tmp_path / name).stat().st_size > 0


def test_demo_missing_fixtures(tmp_path):
    assert run("demo", "--data", str(tmp_path / "none"))[0] == 2


def test_cooccur(tmp_path):
    (tmp_path / "c.txt").write_text("the lumberjack saw the tree\n")
    code, out = run("cooccur", str(tmp_path / "c.txt"), "--words", "lumberjack",
                    "--contexts", "saw,tree", "--window", "5")
    assert code == 0 and out == "word\tsaw\ttree\nlumberjack\t1\t1\n"


def test_cooccur_clustered_ppmi():
    d = bundled_path("lumberjack")
    code, out = run("cooccur", str(d / "corpus.txt"), "--words", "lumberjack,lombard",
                    "--contexts", "pawn,bank,furniture,log,wood,saw,tree,shirt,boot,beard",
                    "--clusters", str(d / "clusters.tsv"), "--ppmi")
    assert code == 0 and out.startswith("word\tbank\twood\tfashion\n")


def test_grammar_dump_reloads(tmp_path):
    code, out = run("grammar")
    assert code == 0
    (tmp_path / "g.grammar").write_text(out)
    assert run("parse", "--grammar", str(tmp_path / "g.grammar"), "she sleeps .")[0] == 0


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "pregroup_lab", "parse", "she sleep ."],
                       capture_output=True, text=True)
    assert r.returncode == 1
