"""Command-line driver: replay, menu, seed, exit codes."""

import pytest

from eqproof.cli import main
from eqproof.seed import INTSCT_COMM_SCRIPT


@pytest.fixture
def seed_files(fixtures_dir):
    return fixtures_dir / "seed.stack", fixtures_dir / "intsct-comm.script"


class TestReplay:
    def test_golden_bytes_and_exit_zero(self, seed_files, golden_transcript, capsys):
        stack, script = seed_files
        assert main(["replay", str(stack), str(script)]) == 0
        assert capsys.readouterr().out == golden_transcript

    def test_out_file(self, seed_files, golden_transcript, tmp_path):
        stack, script = seed_files
        out = tmp_path / "t.txt"
        assert main(["replay", str(stack), str(script), "--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8") == golden_transcript

    def test_wrong_path_exit_one_names_step(self, seed_files, tmp_path, capsys):
        stack, _ = seed_files
        bad = tmp_path / "bad.script"
        bad.write_text(
            INTSCT_COMM_SCRIPT.replace(
                "in-intersect (L-to-R) @1.1", "in-intersect (L-to-R) @2.1"
            ),
            encoding="utf-8",
        )
        assert main(["replay", str(stack), str(bad)]) == 1
        err = capsys.readouterr().err
        assert "step 2" in err

    def test_promote_writes_theorem(self, seed_files, tmp_path):
        from eqproof.theory import load_stack

        stack, script = seed_files
        out_stack = tmp_path / "after.stack"
        assert (
            main(
                [
                    "replay",
                    str(stack),
                    str(script),
                    "--promote",
                    str(out_stack),
                ]
            )
            == 0
        )
        promoted = load_stack(out_stack)
        assert [t.name for t in promoted.theory("Sets").theorems] == ["intsct-comm"]

    def test_missing_file_exit_one(self, seed_files, capsys):
        stack, _ = seed_files
        assert main(["replay", str(stack), "/no/such.script"]) == 1
        assert "error:" in capsys.readouterr().err


class TestMenu:
    def test_initial_goal_menu(self, seed_files, capsys):
        stack, _ = seed_files
        rc = main(
            ["menu", str(stack), "Sets", "e1 intsct e2 = e2 intsct e1"]
        )
        assert rc == 0
        out = capsys.readouterr().out
        lines = [l for l in out.splitlines() if l.strip()]
        assert 0 < len(lines) <= 20
        ext = next(l for l in lines if "set-extensionality" in l)
        assert "(L-to-R)" in ext
        assert (
            "forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))" in ext
        )
        assert "needs ?x" in ext

    def test_menu_at_path(self, seed_files, capsys):
        stack, _ = seed_files
        rc = main(
            [
                "menu",
                str(stack),
                "Sets",
                "forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))",
                "@1.1",
            ]
        )
        assert rc == 0
        assert "in-intersect (L-to-R)" in capsys.readouterr().out

    def test_bad_goal_exit_one(self, seed_files, capsys):
        stack, _ = seed_files
        assert main(["menu", str(stack), "Sets", "e1 intsct"]) == 1
        assert "error:" in capsys.readouterr().err


class TestSeedAndUsage:
    def test_seed_round_trips(self, tmp_path, capsys):
        from eqproof.seed import seed_stack
        from eqproof.theory import load_stack

        out = tmp_path / "s.stack"
        assert main(["seed", "--out", str(out), "--with-script"]) == 0
        assert load_stack(out) == seed_stack()
        script = (tmp_path / "intsct-comm.script").read_text(encoding="utf-8")
        assert script == INTSCT_COMM_SCRIPT

    def test_usage_error_exit_two(self):
        with pytest.raises(SystemExit) as e:
            main(["replay"])  # no stack/script given
        assert e.value.code == 2

    def test_unknown_command_exit_two(self):
        with pytest.raises(SystemExit) as e:
            main(["frobnicate"])
        assert e.value.code == 2
