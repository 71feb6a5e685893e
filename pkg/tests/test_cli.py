import json
import os

import pytest

from treechains.cli import main


@pytest.fixture(scope="module")
def generated(tmp_path_factory):
    out = tmp_path_factory.mktemp("gen")
    code = main(["generate", "--l", "1", "--out", str(out)])
    assert code == 0
    return out


class TestGenerate:
    def test_emits_all_artifacts(self, generated):
        names = sorted(os.listdir(generated))
        assert names == ["covers.svg", "enlargement.json", "instance.json",
                         "regions.json", "system.json"]
        for name in names:
            if name.endswith(".json"):
                payload = json.loads((generated / name).read_text())
                assert payload["schema"] == 1

    def test_determinism(self, generated, tmp_path):
        again = tmp_path / "again"
        assert main(["generate", "--l", "1", "--out", str(again)]) == 0
        for name in os.listdir(generated):
            assert (again / name).read_bytes() == (generated / name).read_bytes()

    def test_eps_override(self, tmp_path, capsys):
        out = tmp_path / "o"
        code = main(["generate", "--l", "1", "--eps", "4/5,7/10",
                     "--out", str(out)])
        assert code == 0
        payload = json.loads((out / "instance.json").read_text())
        assert payload["epsilon"] == ["4/5", "7/10"]


class TestVerify:
    def test_pass_exit_zero(self, generated, capsys):
        assert main(["verify", str(generated / "instance.json")]) == 0
        text = capsys.readouterr().out
        assert "overall                PASS" in text
        assert text.count("PASS") >= 17

    def test_garbage_fails_at_schema(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schema": 1, "epsilon": ["3/4", "1/2"], "diagram": {}}')
        assert main(["verify", str(bad)]) == 1
        assert "schema" in capsys.readouterr().out


class TestOther:
    def test_generate_family(self, tmp_path):
        out = tmp_path / "fam.json"
        assert main(["generate-family", "--k", "3", "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert len(payload["diagram"]["levels"]) == 3

    def test_render(self, generated, tmp_path, capsys):
        svg = tmp_path / "pic.svg"
        assert main(["render", str(generated / "instance.json"),
                     "--out", str(svg), "--level", "1"]) == 0
        text = svg.read_text()
        assert '<g id="level-1"' in text
        assert '<g id="level-0"' not in text

    def test_example1(self, capsys):
        assert main(["example1"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_oracle(self, generated, capsys):
        assert main(["oracle", str(generated / "instance.json"),
                     "--trials", "500", "--seed", "3"]) == 0
        out = capsys.readouterr().out
        assert "membership_agree     500" in out
