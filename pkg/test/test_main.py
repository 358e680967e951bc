import pytest
import json
import pathlib
import argparse
import logging

from unittest.mock import patch, Mock
from collections import Counter

from main import main

cur_dir = pathlib.Path(__file__).parent

corpus_path = str(cur_dir.joinpath("fixture", "corpus.jsonl"))
config_path = str(cur_dir.joinpath("fixture", "config.json"))


def _verify_args(**kwargs):
    values = dict(command="verify", suite="th1", corpus=corpus_path, config=config_path,
                  debug_level=0, max_order=None, opt_in_large=False, report=None,
                  format="text", timing=False, workers=None)
    values.update(kwargs)
    return Mock(return_value=argparse.Namespace(**values))


def _group_args(command, **kwargs):
    values = dict(command=command, config=config_path, debug_level=0, degree=None,
                  corpus=corpus_path)
    values.update(kwargs)
    return Mock(return_value=argparse.Namespace(**values))


def test_run_main_failed(capsys):
    args = _verify_args(config=str(cur_dir.joinpath("fixture", "NON-EXISTENT")))

    with patch("main.parse_cli_args", args):
        with pytest.raises(SystemExit, match="2"):
            main()

    captured = capsys.readouterr()
    assert captured.out == ""
    assert "file does not exist" in captured.err


def test_run_main_missing_corpus(capsys):
    args = _verify_args(corpus=str(cur_dir.joinpath("fixture", "NON-EXISTENT")))

    with patch("main.parse_cli_args", args):
        with pytest.raises(SystemExit, match="2"):
            main()

    assert "load_corpus" in capsys.readouterr().err


def test_run_main_verify(capsys):
    with patch("main.parse_cli_args", _verify_args(format="machine")):
        main()

    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "verified"
    assert report["groups_checked"] == 9


def test_run_main_report_file(tmp_path, capsys):
    path = tmp_path.joinpath("report.txt")
    with patch("main.parse_cli_args", _verify_args(suite="lem3", report=str(path))):
        main()

    assert capsys.readouterr().out == ""
    assert path.read_text().startswith("suite lem3: verified")


def test_run_main_debug(caplog):
    with patch("main.parse_cli_args", _verify_args(debug_level=2)):
        try:
            caplog.set_level(logging.DEBUG)
            main()
            c = Counter([r.levelname for r in caplog.records])
            assert c["WARNING"] >= 2  # start, stop
            assert c["INFO"] > 0
            assert c["DEBUG"] > 0
            assert c["ERROR"] == 0

        except SystemExit as e:
            assert e == None  # will fail if exception was raised by sys.exit()


def test_run_main_check_nr(capsys):
    args = _group_args("check-nr", group="A5", subgroup="(1 2)(3 4),(1 3)(2 4)")
    with patch("main.parse_cli_args", args):
        main()

    out = capsys.readouterr().out
    assert out.startswith("not NR: witness K = ")
    assert '"order": 4' in out


def test_run_main_check_nr_generators(capsys):
    args = _group_args("check-nr", group="(1 2),(1 2 3 4)", subgroup="(1 2),(1 2 3)")
    with patch("main.parse_cli_args", args):
        main()

    assert capsys.readouterr().out.startswith("NR: subgroup of order 6 is NR")


def test_run_main_check_triple(capsys):
    args = _group_args("check-triple", G="S4", H="(1 2),(1 2 3)", K="(1 2 3)")
    with patch("main.parse_cli_args", args):
        main()

    out = capsys.readouterr().out
    assert out.startswith("special: ")
    assert json.loads(out[len("special: "):])["closure"]["order"] == 12


def test_run_main_check_triple_not_normal(capsys):
    args = _group_args("check-triple", G="S4", H="(1 2),(1 2 3)", K="(1 2)")
    with patch("main.parse_cli_args", args):
        with pytest.raises(SystemExit, match="2"):
            main()

    assert "check-triple: " in capsys.readouterr().err


def test_run_main_unknown_group(capsys):
    args = _group_args("lattice", group="M11", gens=None, emit=None)
    with patch("main.parse_cli_args", args):
        with pytest.raises(SystemExit, match="2"):
            main()

    assert "no group named 'M11'" in capsys.readouterr().err


def test_run_main_lattice(tmp_path, capsys):
    path = tmp_path.joinpath("lattice.json")
    args = _group_args("lattice", group="S4", gens=None, emit=str(path))
    with patch("main.parse_cli_args", args):
        main()

    assert "S4: 30 subgroups" in capsys.readouterr().out
    assert len(json.loads(path.read_text())) == 30


def test_run_main_lattice_gens(tmp_path, capsys):
    path = tmp_path.joinpath("lattice.json")
    args = _group_args("lattice", group=None, gens="(1 2),(1 2 3 4)", emit=str(path))
    with patch("main.parse_cli_args", args):
        main()

    assert capsys.readouterr().out == f"(1 2),(1 2 3 4): 30 subgroups written to {path}\n"
    assert len(json.loads(path.read_text())) == 30


def test_lattice_group_and_gens_exclusive(capsys):
    with patch("sys.argv", ["main.py", "lattice", "--group", "S4", "--gens", "(1 2)"]):
        with pytest.raises(SystemExit, match="2"):
            main()

    assert "not allowed with argument" in capsys.readouterr().err

    with patch("sys.argv", ["main.py", "lattice"]):
        with pytest.raises(SystemExit, match="2"):
            main()

    assert "one of the arguments --group --gens is required" in capsys.readouterr().err


def test_run_main_numscan(capsys):
    args = Mock(return_value=argparse.Namespace(
        command="numscan", scan="lemma3", config=config_path, debug_level=0,
        t_max=None, q_max=None, n_max=None))
    with patch("main.parse_cli_args", args):
        main()

    assert capsys.readouterr().out == "lemma3(a) t <= 20: [3]\nlemma3(b) t <= 20: [0, 1, 2, 3]\n"


def test_run_main_zsigmondy(capsys):
    args = Mock(return_value=argparse.Namespace(
        command="numscan", scan="zsigmondy", config=config_path, debug_level=0,
        t_max=None, q_max=2, n_max=6))
    with patch("main.parse_cli_args", args):
        main()

    out = capsys.readouterr().out.splitlines()
    assert out[0] == "q=2 n=3: [7]"
    assert out[-1] == "exceptions: [(2, 6)]"
