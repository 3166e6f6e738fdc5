import json

import pytest

from fqgeom import cli


def report_of(argv):
    code, report, text, _ = cli.run(argv)
    return code, report, text


def test_verify_line_exhaustive_q2_n2_k2():
    code, rep, _ = report_of(["verify-line", "--q", "2", "--n", "2", "--k", "2", "--exhaustive"])
    assert code == 0
    s = rep["summary"]
    assert s["instances"] == 16 and s["failed"] == 0
    assert s["min_size_weight_one"] == 3
    # the zero map gives a single point of weight two
    assert s["min_size"] == 1


def test_verify_line_random_500():
    code, rep, _ = report_of(["verify-line", "--q", "2", "--n", "3", "--k", "3", "--random", "500", "--seed", "42"])
    assert code == 0
    assert rep["summary"]["passed"] == 500


def test_verify_line_single_point_sets():
    code, rep, _ = report_of(["verify-line", "--q", "2", "--n", "1", "--k", "1"])
    assert code == 0
    assert {row["size"] for row in rep["instances"]} == {1}


def test_verify_line_trace():
    code, rep, _ = report_of(["verify-line", "--q", "3", "--n", "3", "--trace"])
    assert code == 0
    assert [row["size"] for row in rep["instances"]] == [1, 4, 10]


def test_redei_examples():
    code, rep, _ = report_of(["redei", "--q", "2", "--n", "2", "--k", "2", "--trace"])
    assert code == 0 and rep["instances"][0]["degX_H"] == 2
    code, rep, _ = report_of(["redei", "--q", "3", "--n", "2", "--k", "2", "--trace"])
    assert code == 0 and rep["instances"][0]["degX_H"] == 3
    code, rep, _ = report_of(["redei", "--q", "2", "--n", "3", "--k", "3", "--map", "0"])
    row = rep["instances"][0]
    assert code == 0
    assert row["points"] == [{"point": [1, 0], "weight": 3}]
    assert row["identity"] and row["ledger"] and row["ore_mismatches"] == 0
    assert "R" in row["division"] and "degree_ledger" in row


def test_redei_needs_map_or_trace():
    code, rep, text = report_of(["redei", "--q", "2", "--n", "2", "--k", "2"])
    assert code == 2 and rep is None and "error" in text


def test_redei_basis_dimension_checked():
    code, _, _ = report_of(["redei", "--q", "2", "--n", "3", "--k", "2", "--map", "1", "--basis", "1,1"])
    assert code == 2


@pytest.mark.parametrize(
    "argv,size,e",
    [
        (["--construct", "vbvlak", "--q", "2", "--n", "3", "--k", "3"], 7, 1),
        (["--construct", "subplane", "--q", "2"], 21, 2),
        (["--construct", "ambetant", "--q", "2"], 41, 2),
    ],
)
def test_verify_plane_constructions(argv, size, e):
    code, rep, _ = report_of(["verify-plane"] + argv)
    row = rep["instances"][0]
    assert code == 0
    assert row["size"] == size and row["e_modulus"] == e
    assert ("3" in row["spectrum"]) is (argv[1] == "vbvlak")


def test_verify_plane_vbvlak_tight_and_replayed():
    _, rep, _ = report_of(["verify-plane", "--construct", "vbvlak", "--q", "2", "--n", "3", "--k", "3"])
    row = rep["instances"][0]
    assert row["bound"] == row["size"] == 7
    assert row["projection"]["split_ok"]
    assert row["blocking"]["blocking"] is False


def test_verify_plane_random_sweep():
    code, rep, _ = report_of(["verify-plane", "--q", "2", "--n", "3", "--k", "3,4", "--random", "10", "--seed", "1"])
    assert code == 0 and rep["summary"]["instances"] == 20
    assert all(("blocking" in row) is (row["k"] == 3) for row in rep["instances"])


def test_verify_plane_rejects_other_r():
    code, _, _ = report_of(["verify-plane", "--q", "2", "--n", "2", "--r", "4", "--exhaustive"])
    assert code == 2


def test_random_needs_seed():
    code, _, text = report_of(["verify-line", "--q", "2", "--n", "2", "--random", "5"])
    assert code == 2 and "seed" in text


def test_random_and_exhaustive_exclusive():
    code, _, _ = report_of(["verify-line", "--q", "2", "--n", "2", "--random", "5", "--seed", "1", "--exhaustive"])
    assert code == 2


def test_cap_exceeded(monkeypatch):
    monkeypatch.setenv("LINSET_CAP", "10")
    code, _, text = report_of(["verify-line", "--q", "2", "--n", "2", "--k", "2", "--exhaustive"])
    assert code == 2 and "cap" in text


def test_missing_n_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.run(["verify-line", "--q", "2"])
    assert exc.value.code == 2


def test_invariant_violation_exit_code(monkeypatch):
    real = cli.line_instance

    def broken(spec, **kw):
        row = real(spec, **kw)
        row["passed"] = False
        return row

    monkeypatch.setattr(cli, "line_instance", broken)
    code, rep, _ = report_of(["verify-line", "--q", "2", "--n", "2", "--k", "1"])
    assert code == 1 and rep["summary"]["failed"] == rep["summary"]["instances"]


def test_determinism_apart_from_wall_clock():
    argv = ["verify-line", "--q", "3", "--n", "3", "--random", "20", "--seed", "7"]
    _, a, _ = report_of(argv)
    _, b, _ = report_of(argv)
    a.pop("wall_clock")
    b.pop("wall_clock")
    assert cli.to_json(a) == cli.to_json(b)
    _, c, _ = report_of(["verify-line", "--q", "3", "--n", "3", "--random", "20", "--seed", "8"])
    assert c["instances"] != a["instances"]


def test_cells_use_independent_streams():
    _, one, _ = report_of(["verify-line", "--q", "2", "--n", "4", "--k", "3", "--random", "5", "--seed", "3"])
    _, many, _ = report_of(["verify-line", "--q", "2", "--n", "4", "--k", "2,3", "--random", "5", "--seed", "3"])
    assert one["instances"] == [row for row in many["instances"] if row["k"] == 3]


def test_tsv_output():
    code, _, text = report_of(["verify-line", "--q", "2", "--n", "2", "--k", "2", "--exhaustive", "--format", "tsv"])
    lines = text.strip().split("\n")
    assert code == 0 and len(lines) == 17
    header = lines[0].split("\t")
    assert header[0] == "index" and "size" in header and "weights" in header
    assert all(len(line.split("\t")) == len(header) for line in lines)


def test_json_is_parseable_and_echoes_params():
    _, _, text = report_of(["verify-line", "--q", "4", "--n", "2", "--k", "2", "--random", "3", "--seed", "0"])
    rep = json.loads(text)
    assert rep["command"] == "verify-line"
    assert rep["params"]["p"] == 2 and rep["params"]["h"] == 2
    assert rep["params"]["seed"] == 0


def test_output_file(tmp_path):
    out = tmp_path / "r.json"
    code = cli.main(["fields-info", "--q", "2", "--n", "3", "-o", str(out)])
    rep = json.loads(out.read_text())
    assert code == 0
    assert rep["instances"][0]["modulus"] == [1, 0, 1, 1]
    assert rep["instances"][0]["order"] == 8


def test_modulus_override():
    code, rep, _ = report_of(["fields-info", "--q", "2", "--n", "3", "--modulus", "1,1,0,1"])
    assert code == 0 and rep["instances"][0]["modulus"] == [1, 1, 0, 1]
    code, _, _ = report_of(["fields-info", "--q", "2", "--n", "2", "--modulus", "1,0,1"])
    assert code == 2


def test_construct_command():
    code, rep, _ = report_of(["construct", "vbtrace", "--q", "3", "--n", "3", "--k", "3"])
    row = rep["instances"][0]
    assert code == 0 and row["size"] == 10 and row["arity"] == 2
    code, rep, _ = report_of(["construct", "hyperplane", "--q", "2", "--n", "4", "--k", "4", "--r", "4"])
    assert code == 0 and rep["instances"][0]["size"] == 15 and rep["instances"][0]["bound_ok"]
    code, _, _ = report_of(["construct", "vbvlak", "--q", "2"])
    assert code == 2
    code, _, _ = report_of(["construct", "ambetant", "--q", "3"])
    assert code == 2


def test_explore_trivial_grid_is_vacuous():
    code, rep, _ = report_of(["explore", "--search", "weights-ge-2", "--q", "2", "--n", "3", "--k", "1", "--exhaustive"])
    assert code == 0
    assert rep["instances"] == []
    assert rep["search"]["verdict"] == "none found in search space"


def test_explore_weights_small():
    code, rep, _ = report_of(["explore", "--search", "weights-ge-2", "--q", "2", "--n", "2", "--exhaustive"])
    assert code == 0
    # on F_4 every all-heavy set is the full F_4-point, which is F_4-linear
    assert rep["search"]["matching_hypothesis"] > 0 and rep["search"]["candidates"] == 0


def test_explore_secants():
    code, rep, _ = report_of(["explore", "--search", "secants-without-q1", "--q", "2", "--n", "3", "--k", "3", "--random", "40", "--seed", "5"])
    assert code == 0
    assert rep["search"]["examined"] > 0
    assert rep["search"]["verdict"] in ("none found in search space", "candidates found")
