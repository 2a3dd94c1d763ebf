import json

import pytest

from flatobs.cli import (
    CliError,
    SchemaError,
    bundled_scenario,
    load_scenario,
    main,
    run,
    validate_scenario,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_scenario(tmp_path, data, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


# -- schema validation ---------------------------------------------------

def test_bundled_scenarios_validate():
    for name in ("segre", "degenerate_quadric", "smooth_cubic3fold"):
        data = bundled_scenario(name)
        assert validate_scenario(data) is data


def test_unknown_kind_rejected():
    with pytest.raises(SchemaError, match="unknown scenario kind"):
        validate_scenario({"schema_version": 1, "name": "x", "kind": "mystery"})


def test_missing_hypotheses_rejected():
    data = bundled_scenario("smooth_cubic3fold")
    del data["hypotheses"]
    with pytest.raises(SchemaError, match="hypotheses"):
        validate_scenario(data)


def test_hypotheses_must_be_boolean():
    data = bundled_scenario("smooth_cubic3fold")
    data["hypotheses"]["abelian_scheme"] = "yes"
    with pytest.raises(SchemaError, match="boolean"):
        validate_scenario(data)


def test_bad_schema_version():
    with pytest.raises(SchemaError, match="schema_version"):
        validate_scenario({"schema_version": 2, "name": "x", "kind": "smooth_ci"})


def test_candidate_point_length_checked():
    data = bundled_scenario("segre")
    data["candidate_singular_points"] = [["1", "2"]]
    with pytest.raises(SchemaError, match="coordinates"):
        validate_scenario(data)


# -- golden scenarios -----------------------------------------------------

def test_segre_golden_report():
    report = run(bundled_scenario("segre"))
    pipeline = report["pipeline"]
    assert pipeline["singularities"]["locus_dimension"] == 0
    assert pipeline["singularities"]["complete"] is True
    assert len(pipeline["singularities"]["points"]) == 10
    assert all(
        p["classification"] == "node" for p in pipeline["singularities"]["points"]
    )
    assert pipeline["defect"] == {
        "t": 1,
        "node_count": 10,
        "imposed_rank": 5,
        "defect": 5,
        "b_above_middle": 6,
    }
    assert pipeline["betti_vector"] == [1, 0, 1, None, 6, 0, 1]
    assert pipeline["fiber_dimension"] == 5
    assert pipeline["ih_profile"]["dims"] == [None, 5, 0, 0]
    assert pipeline["corob"]["flat_excluded"] is False
    assert pipeline["corob"]["irreducible_excluded"] is True
    assert report["verdict"]["verdict"] == "NO_IRREDUCIBLE_FIBER_COMPACTIFICATION"
    assert report["verdict"]["witnesses"] == [{"k": 1, "b_plus": 6, "b_minus": 1}]


def test_degenerate_quadric_golden_report():
    report = run(bundled_scenario("degenerate_quadric"))
    pipeline = report["pipeline"]
    assert pipeline["quadric"]["rank"] == 2
    assert pipeline["quadric"]["components_of_section"] == 2
    assert pipeline["betti_vector"][6] == 2
    assert pipeline["fiber_dimension"] == 20
    assert pipeline["corob"]["flat_excluded"] is True
    assert report["verdict"]["verdict"] == "NO_FLAT_COMPACTIFICATION"
    assert {"k": 3, "b_plus": 2, "b_minus": 1} in report["verdict"]["witnesses"]


def test_smooth_golden_report():
    report = run(bundled_scenario("smooth_cubic3fold"))
    assert report["pipeline"]["betti_vector"] == [1, 0, 1, 10, 1, 0, 1]
    assert report["verdict"]["verdict"] == "NO_OBSTRUCTION_FOUND"
    assert report["verdict"]["witnesses"] == []
    assert "does not assert" in report["verdict"]["disclaimer"]


def test_reports_are_deterministic():
    one = run(bundled_scenario("segre"))
    two = run(bundled_scenario("segre"))
    one.pop("timing_seconds")
    two.pop("timing_seconds")
    assert json.dumps(one) == json.dumps(two)


# -- pipeline edge cases ------------------------------------------------------

def test_smooth_section_takes_smooth_path(tmp_path):
    data = {
        "schema_version": 1,
        "name": "fermat-section",
        "kind": "hypersurface_section",
        "ambient_arity": 6,
        "variety": "x0^3+x1^3+x2^3+x3^3+x4^3+x5^3",
        "hyperplane": "x5",
        "eliminate": 5,
        "candidate_singular_points": [],
        "hypotheses": {"H_nonconstant": True, "abelian_scheme": True},
    }
    report = run(data)
    assert report["pipeline"]["singularities"]["locus_dimension"] == -1
    assert report["pipeline"]["betti_vector"] == [1, 0, 1, 10, 1, 0, 1]
    assert report["verdict"]["verdict"] == "NO_OBSTRUCTION_FOUND"


def test_non_isolated_section_annotated_without_verdict():
    data = {
        "schema_version": 1,
        "name": "cone-section",
        "kind": "hypersurface_section",
        "ambient_arity": 6,
        "variety": "x0^3+x1^3+x2^3",
        "hyperplane": "x5",
        "eliminate": 5,
        "candidate_singular_points": [],
        "hypotheses": {"H_nonconstant": True, "abelian_scheme": True},
    }
    report = run(data)
    assert report["pipeline"]["extendable"] is False
    assert report["verdict"] is None
    assert any("verdict unavailable" in note for note in report["annotations"])


def test_incomplete_certificate_blocks_defect():
    data = bundled_scenario("segre")
    data["candidate_singular_points"] = data["candidate_singular_points"][:9]
    report = run(data)
    assert report["pipeline"]["singularities"]["complete"] is False
    assert "defect" not in report["pipeline"]
    assert report["verdict"] is None


def test_candidate_off_hyperplane_rejected():
    data = bundled_scenario("segre")
    data["candidate_singular_points"] = [["1", "1", "1", "1", "1", "1"]]
    with pytest.raises(CliError, match="hyperplane"):
        run(data)


def test_false_hypothesis_refuses_verdict_with_annotation():
    data = bundled_scenario("smooth_cubic3fold")
    data["hypotheses"]["abelian_scheme"] = False
    report = run(data)
    assert report["verdict"] is None
    assert any("verdict refused" in note for note in report["annotations"])


def test_irreducible_quadric_has_no_verdict():
    data = bundled_scenario("degenerate_quadric")
    data["quadric"] = "x0^2+x1^2+x2^2+x3^2+x4^2+x5^2"
    report = run(data)
    assert report["pipeline"]["quadric"]["components_of_section"] == "irreducible"
    assert report["verdict"] is None


def test_rank_two_quadric_needs_assertion():
    data = bundled_scenario("degenerate_quadric")
    data["section_smooth_flags"]["components_smooth_and_distinct"] = False
    report = run(data)
    assert report["verdict"] is None
    assert any("assertion is missing" in note for note in report["annotations"])


# -- command line surface --------------------------------------------------------

def test_analyze_json_output_round_trips(tmp_path, capsys):
    path = write_scenario(tmp_path, bundled_scenario("degenerate_quadric"))
    code, out, err = run_cli(capsys, "analyze", path, "--format", "json")
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["verdict"]["verdict"] == "NO_FLAT_COMPACTIFICATION"


def test_analyze_text_output(tmp_path, capsys):
    path = write_scenario(tmp_path, bundled_scenario("segre"))
    code, out, err = run_cli(capsys, "analyze", path)
    assert code == 0
    assert "verdict: NO_IRREDUCIBLE_FIBER_COMPACTIFICATION" in out
    assert "delta=5" in out


def test_analyze_dump_matrix(tmp_path, capsys):
    path = write_scenario(tmp_path, bundled_scenario("segre"))
    dump = tmp_path / "matrix.csv"
    code, out, _ = run_cli(capsys, "analyze", path, "--dump-matrix", str(dump))
    assert code == 0
    rows = dump.read_text().strip().splitlines()
    assert len(rows) == 10 and all(len(r.split(",")) == 5 for r in rows)


def test_hodge_subcommand(capsys):
    code, out, _ = run_cli(capsys, "hodge", "--n", "3", "--degrees", "2,3")
    assert code == 0
    assert "1 0 1 40 1 0 1" in out
    assert "hodge level: 1" in out


def test_hodge_subcommand_json(capsys):
    code, out, _ = run_cli(capsys, "hodge", "--n", "3", "--degrees", "3", "--format", "json")
    payload = json.loads(out)
    assert payload["betti"] == [1, 0, 1, 10, 1, 0, 1]
    assert payload["level"] == 1


def test_scan_subcommand(capsys):
    code, out, _ = run_cli(
        capsys, "scan-level1", "--n-max", "3", "--d-max", "3", "--k-max", "1"
    )
    assert code == 0
    assert "V_3(3)" in out
    assert "box-relative" in out


def test_extendability_subcommand(tmp_path, capsys):
    poly = tmp_path / "segre_cubic.poly"
    from flatobs.polyring import parse_poly, restrict_to_hyperplane

    f = restrict_to_hyperplane(
        parse_poly("x0^3+x1^3+x2^3+x3^3+x4^3+x5^3", 6),
        parse_poly("x0+x1+x2+x3+x4+x5", 6),
        5,
    )
    poly.write_text(str(f) + "\n")
    code, out, _ = run_cli(capsys, "extendability", str(poly), "--arity", "5")
    assert code == 0
    assert "extendable: yes (isolated singularities)" in out

    cone = tmp_path / "cone.poly"
    cone.write_text("x0^3+x1^3+x2^3\n")
    code, out, _ = run_cli(capsys, "extendability", str(cone), "--arity", "5")
    assert code == 0
    assert "extendable: no" in out


def test_selftest_subcommand(capsys):
    code, out, _ = run_cli(capsys, "selftest")
    assert code == 0
    lines = [line for line in out.splitlines() if line.startswith("selftest ")]
    assert len(lines) == 5
    assert all("PASS" in line for line in lines)


def test_exit_code_one_on_computation_error(tmp_path, capsys):
    path = write_scenario(
        tmp_path,
        {
            "schema_version": 1,
            "name": "bad-poly",
            "kind": "extendability",
            "arity": 2,
            "polynomial": "x0 $ x1",
        },
    )
    code, out, err = run_cli(capsys, "analyze", path)
    assert code == 1
    assert "error [polyring.parse]" in err


def test_exit_code_one_on_missing_file(capsys):
    code, _, err = run_cli(capsys, "analyze", "/nonexistent.json")
    assert code == 1
    assert "error [cli.invalid]" in err


def test_exit_code_one_on_schema_error(tmp_path, capsys):
    path = write_scenario(tmp_path, {"schema_version": 1, "name": "x", "kind": "mystery"})
    code, _, err = run_cli(capsys, "analyze", path)
    assert code == 1
    assert "error [cli.schema]" in err


def test_hodge_rejects_degree_one(capsys):
    code, _, err = run_cli(capsys, "hodge", "--n", "3", "--degrees", "1,2")
    assert code == 1
    assert "error [hodgeci.invalid]" in err


def test_exit_code_two_on_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--frobnicate"])
    assert exc.value.code == 2


def test_load_scenario_validates(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not json")
    with pytest.raises(SchemaError):
        load_scenario(str(path))
