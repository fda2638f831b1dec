"""Command-line behaviour: outputs, exit codes, record mode."""

import random
from fractions import Fraction

import helpers
from matchcore import analysis, fixtures
from matchcore.cli import main
from matchcore.instance_io import render_instance
from matchcore.oracle import max_weight
from matchcore.rationals import parse_rational

F = Fraction


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_core_check_in_core_not_in_image(tmp_path, capsys):
    path = write(tmp_path, "g.game",
                 fixtures.fixture_by_name("three_agent_b_matching").text
                 + "imputation u=4\n")
    code, out, _ = run(capsys, "core-check", path)
    assert code == 0
    assert "IN CORE" in out and "NOT IN D(I)" in out


def test_core_check_blocked_vector_reports_witness(tmp_path, capsys):
    path = write(tmp_path, "k3.game",
                 fixtures.fixture_by_name("unit_triangle").text
                 + "imputation i=1/3 j=1/3 k=1/3\n")
    code, out, _ = run(capsys, "core-check", path)
    assert code == 0
    assert "NOT IN CORE" in out
    assert "blocking coalition" in out


def test_core_check_requires_imputation(tmp_path, capsys):
    path = write(tmp_path, "g.game",
                 fixtures.fixture_by_name("three_agent_b_matching").text)
    code, _, err = run(capsys, "core-check", path)
    assert code == 2
    assert "imputation" in err


def test_concurrency_output(tmp_path, capsys):
    path = write(tmp_path, "k3.game", fixtures.fixture_by_name("unit_triangle").text)
    code, out, _ = run(capsys, "concurrency", path)
    assert code == 0
    assert "3/2" in out and "CORE EMPTY" in out


def test_solve_renders_exact_values(tmp_path, capsys):
    path = write(tmp_path, "pendant.game",
                 fixtures.fixture_by_name("triangle_with_pendant").text)
    code, out, _ = run(capsys, "solve", path)
    assert code == 0
    assert "1/2" in out  # the unique dual pays v2 and v3 one half each


def test_surplus_command(tmp_path, capsys):
    path = write(tmp_path, "floor.game",
                 fixtures.fixture_by_name("floored_edges_pair").text)
    code, out, _ = run(capsys, "surplus", path)
    assert code == 0
    assert "surplus" in out and "6" in out


def test_tum_check(tmp_path, capsys):
    path = write(tmp_path, "k3.game", fixtures.fixture_by_name("unit_triangle").text)
    code, out, _ = run(capsys, "tum-check", path)
    assert code == 0 and "totally unimodular  no" in out
    path2 = write(tmp_path, "b.game",
                  fixtures.fixture_by_name("three_agent_b_matching").text)
    code, out, _ = run(capsys, "tum-check", path2)
    assert code == 0 and "yes" in out


def test_classify_seven_ring(tmp_path, capsys):
    path = write(tmp_path, "ring.game",
                 fixtures.fixture_by_name("weighted_seven_ring").text)
    code, out, _ = run(capsys, "classify", path)
    assert code == 0
    assert "violations  0" in out
    assert "subpar" in out and "essential" in out


def test_extremes_with_samples(tmp_path, capsys):
    g = helpers.random_bipartite(random.Random(13), helpers.ALL_BIPARTITE[0],
                                 max_side=3, max_edges=5)
    path = write(tmp_path, "a.game", render_instance(g))
    code, out, _ = run(capsys, "extremes", path, "--samples", "6", "--seed", "4")
    assert code == 0
    assert "sampled core vertices within ranges" in out


def test_reproduce_paper_passes(capsys):
    code, out, _ = run(capsys, "reproduce-paper")
    assert code == 0
    assert "FAIL" not in out
    assert out.count("PASS") >= 40
    assert "all fixtures pass" in out


def test_reproduce_paper_fails_loudly_on_mismatch(capsys, monkeypatch):
    fake = fixtures.Fixture("broken", "forced failure", fixtures.TRIANGLE_TEXT,
                            lambda g, caps: [fixtures.Check("forced", False, "boom")])
    monkeypatch.setattr(fixtures, "run_all",
                        lambda caps: [(fake, fake.checks(caps))])
    code, out, _ = run(capsys, "reproduce-paper")
    assert code == 1
    assert "FAIL" in out


def test_input_errors_exit_two(tmp_path, capsys):
    code, _, err = run(capsys, "solve", str(tmp_path / "missing.game"))
    assert code == 2 and "cannot read" in err
    bad = write(tmp_path, "bad.game", "game assignment\nside_u a\nside_v b\n"
                                      "edge a b weight zero\n")
    code, _, err = run(capsys, "solve", bad)
    assert code == 2 and "line 4" in err


def test_cap_refusal_exits_two(tmp_path, capsys):
    path = write(tmp_path, "ring.game",
                 fixtures.fixture_by_name("weighted_seven_ring").text)
    code, _, err = run(capsys, "solve", path, "--cap-vertices", "3")
    assert code == 2 and "cap" in err


def test_records_mode_reverifies_against_the_oracle(tmp_path, capsys):
    fixture = fixtures.fixture_by_name("three_agent_b_matching")
    path = write(tmp_path, "g.game", fixture.text)
    code, out, _ = run(capsys, "solve", path, "--format", "records")
    assert code == 0
    records = [line.split("\t") for line in out.strip().splitlines()]
    assert all(len(r) == 3 for r in records)
    g = fixture.instance()
    dual = analysis.optimal_dual(g)
    imp = analysis.dual_to_imputation(g, dual)

    def reverify(section, key, value):
        if section == "matching" and key == "worth":
            return parse_rational(value) == max_weight(g)[0]
        if section == "deterministic optimal dual" and key.startswith("pay["):
            return parse_rational(value) == dual.vertex(key[4:-1])
        if section == "imputation from the dual" and key in g.agents:
            return parse_rational(value) == imp[key]
        return None

    checkable = [r for r in records if reverify(*r) is not None]
    rng = random.Random(2)
    picks = rng.sample(checkable, 3)
    assert all(reverify(*r) for r in picks)
