import json

from knotquiver.cli import main

from .conftest import FIG8_PD, TREFOIL_PD


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestQuiverCmd:
    def test_json(self, capsys):
        code, out, _ = run(capsys, "quiver", FIG8_PD)
        assert code == 0
        data = json.loads(out)
        assert len(data["vertices"]) == 8 and len(data["arrows"]) == 16
        assert len(data["potential"]["plus"]) == 4

    def test_dot(self, capsys):
        code, out, _ = run(capsys, "quiver", "figure-eight", "--format", "dot")
        assert code == 0 and out.count("->") == 16

    def test_reduced(self, capsys):
        code, out, _ = run(capsys, "quiver", FIG8_PD, "--reduced")
        assert code == 0
        data = json.loads(out)
        assert len(data["arrows"]) == 12
        assert len(data["substitutions"]) == 4

    def test_corpus_name_conway(self, capsys):
        code, out, _ = run(capsys, "quiver", "conway")
        data = json.loads(out)
        assert code == 0 and len(data["vertices"]) == 22 and len(data["arrows"]) == 44

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "quiver", "X(1,2,3)")
        assert code == 2 and "error" in err

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "quiver", FIG8_PD)
        _, out2, _ = run(capsys, "quiver", FIG8_PD)
        assert out1 == out2


class TestStatesCmd:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "states", FIG8_PD, "--segment", "1")
        assert code == 0 and "5 states" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "states", FIG8_PD, "--segment", "1", "--format", "json")
        data = json.loads(out)
        assert code == 0 and len(data["states"]) == 5


class TestFpolyCmd:
    def test_single_segment(self, capsys):
        code, out, _ = run(capsys, "fpoly", FIG8_PD, "--segment", "1")
        assert code == 0
        assert "5 terms" in out
        assert "y2*y5*y8" in out

    def test_all_segments_json(self, capsys):
        code, out, _ = run(capsys, "fpoly", TREFOIL_PD, "--all", "--format", "json")
        data = json.loads(out)
        assert code == 0 and len(data) == 6
        assert all(row["terms"] == 3 for row in data)

    def test_requires_segment(self, capsys):
        code, _, err = run(capsys, "fpoly", FIG8_PD)
        assert code == 2

    def test_cache_round_trip(self, capsys, tmp_path):
        cache_dir = str(tmp_path / "cache")
        code1, out1, _ = run(capsys, "fpoly", "10_66", "--segment", "1",
                             "--format", "json", "--cache-dir", cache_dir)
        code2, out2, _ = run(capsys, "fpoly", "10_66", "--segment", "1",
                             "--format", "json", "--cache-dir", cache_dir)
        assert code1 == code2 == 0
        assert out1 == out2
        files = list((tmp_path / "cache").glob("*.json"))
        assert len(files) == 1

    def test_cache_hit_skips_computation(self, tmp_path, monkeypatch):
        from knotquiver.cache import RunCache
        from knotquiver.corpus import entry_by_name
        from knotquiver.quiver import build_quiver
        from knotquiver.verify import segment_pipeline

        d = entry_by_name("10_66").diagram()
        q = build_quiver(d)
        cache = RunCache(tmp_path / "c")
        first = segment_pipeline(d, q, 1, cache)

        import knotquiver.verify as verify_mod

        def boom(*args, **kwargs):
            raise AssertionError("lattice rebuilt despite warm cache")

        monkeypatch.setattr(verify_mod, "build_lattice", boom)
        second = segment_pipeline(d, q, 1, cache)
        assert first[0] == second[0] and first[1] == second[1]
        assert cache.hits == 1


class TestAlexanderCmd:
    def test_all_methods_agree(self, capsys):
        code, out, _ = run(capsys, "alexander", FIG8_PD)
        assert code == 0
        assert out.count("1 - 3*t + t^2") == 3

    def test_single_method(self, capsys):
        code, out, _ = run(capsys, "alexander", "conway", "--method", "det")
        assert code == 0 and out.strip() == "det: 1"

    def test_10_66(self, capsys):
        code, out, _ = run(capsys, "alexander", "10_66", "--method", "spec")
        assert code == 0 and "16*t^2" in out


class TestVerifyCmd:
    def test_bundled_corpus_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--fast")
        assert code == 0
        assert out.count("PASS") == 5 and "FAIL" not in out

    def test_corrupted_expectation_fails(self, capsys, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text(
            json.dumps(
                {"name": "trefoil", "pd": TREFOIL_PD, "prime": True,
                 "components": 1, "alexander": [1, -5, 1]}
            )
            + "\n"
        )
        code, out, _ = run(capsys, "verify", str(bad), "--fast")
        assert code == 1 and "FAIL" in out
        assert "expected polynomial: False" in out

    def test_empty_corpus_warns(self, capsys, tmp_path):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        code, out, _ = run(capsys, "verify", str(empty))
        assert code == 0 and "warning" in out

    def test_workers_match_serial(self, capsys):
        code1, out1, _ = run(capsys, "verify", "--fast")
        code2, out2, _ = run(capsys, "verify", "--fast", "--workers", "4")
        assert (code1, out1) == (code2, out2)


class TestTwoBridgeCmd:
    def test_2123(self, capsys):
        code, out, _ = run(capsys, "two-bridge", "2,1,2,3", "--report-theorem3")
        assert code == 0
        assert "8 crossings" in out and "27/10" in out and "knot" in out
        assert "lattice size: 27 (odd)" in out
        assert "PASS" in out

    def test_link_case(self, capsys):
        code, out, _ = run(capsys, "two-bridge", "2,2,2", "--report-theorem3")
        assert code == 0
        assert "link (2 components)" in out
        assert "alternating height sum: 0" in out

    def test_invalid_cf(self, capsys):
        code, _, err = run(capsys, "two-bridge", "2,x")
        assert code == 2
        code, _, err = run(capsys, "two-bridge", "0,2")
        assert code == 2
