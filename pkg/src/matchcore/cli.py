"""Command-line front end.

Subcommands:
    solve            worth, matching program optimum, deterministic dual,
                     and the payoffs it induces
    classify         player/team classes with payment and fairness verdicts
    core-check       core membership (and D(I) membership) of the payoff
                     vector carried by the instance file
    extremes         per-agent payoff ranges and the two antipodal
                     imputations (assignment / uniform_b)
    concurrency      fractional vs integral optimum for a general game
    tum-check        total-unimodularity sweep of the constraint matrix
    surplus          worth, adjustment, and surplus under the deterministic
                     dual of a hoffman_kruskal game
    reproduce-paper  run the built-in regression fixtures

Exit codes: 0 success, 1 analysis failure, 2 input error. Every number is
printed exactly as p/q (or a plain integer).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import analysis, fixtures
from .caps import CapExceededError, EnumerationCaps
from .formulations import build_primal, constraint_matrix, is_totally_unimodular
from .games import GameInstance, GameKind, make_imputation
from .instance_io import InstanceError, parse_instance_with_imputation
from .lp import solve
from .oracle import InfeasibleInstanceError, enumerate_optima, max_weight
from .rationals import format_rational

EXIT_OK = 0
EXIT_ANALYSIS = 1
EXIT_INPUT = 2


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "unbounded"
    return str(value)


@dataclass
class Report:
    """Ordered sections of (key, value) facts; values render losslessly."""
    sections: list[tuple[str, list[tuple[str, str]]]] = field(default_factory=list)

    def add(self, title: str, rows) -> None:
        self.sections.append((title, [(k, _fmt(v)) for k, v in rows]))

    def render_text(self) -> str:
        chunks = []
        for title, rows in self.sections:
            chunks.append(title)
            chunks.append("-" * len(title))
            width = max((len(k) for k, _ in rows), default=0)
            for key, value in rows:
                chunks.append(f"{key.ljust(width)}  {value}")
            chunks.append("")
        return "\n".join(chunks).rstrip() + "\n"

    def render_records(self) -> str:
        lines = []
        for title, rows in self.sections:
            for key, value in rows:
                lines.append(f"{title}\t{key}\t{value}")
        return "\n".join(lines) + "\n"

    def render(self, mode: str) -> str:
        return self.render_records() if mode == "records" else self.render_text()


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_instance_with_imputation(text)


def _caps(args) -> EnumerationCaps:
    return EnumerationCaps(max_vertices=args.cap_vertices,
                           max_edges=args.cap_edges)


def _describe(instance: GameInstance, report: Report) -> None:
    report.add("instance", [
        ("kind", instance.kind.value),
        ("agents", " ".join(instance.agents)),
        ("edges", len(instance.edges)),
    ])


def _dual_rows(instance, dual):
    rows = [(f"pay[{q}]", dual.vertex(q)) for q in instance.agents]
    if instance.kind is GameKind.HOFFMAN_KRUSKAL:
        rows += [(f"floor[{u},{v}]", value) for (u, v), value in dual.lower_duals]
        rows += [(f"ceil[{u},{v}]", value) for (u, v), value in dual.upper_duals]
    return rows


def cmd_solve(args) -> tuple[Report, int]:
    instance, _ = _load(args.instance)
    caps = _caps(args)
    report = Report()
    _describe(instance, report)
    value, witness = max_weight(instance, caps)
    primal = solve(build_primal(instance))
    report.add("matching", [
        ("worth", value),
        ("program optimum", primal.value),
        ("optimal matchings", len(enumerate_optima(instance, caps))),
        ("one optimum", " ".join(f"{u}-{v}x{m}" for (u, v), m in witness.entries)
            or "(empty)"),
    ])
    dual = analysis.optimal_dual(instance)
    report.add("deterministic optimal dual", _dual_rows(instance, dual))
    if instance.kind is GameKind.GENERAL and primal.value != value:
        report.add("imputation", [("core", "empty (not concurrent)")])
    else:
        imp = analysis.dual_to_imputation(instance, dual, caps)
        rows = [(q, imp[q]) for q in instance.agents]
        if imp.surplus is not None:
            rows.append(("surplus", imp.surplus.surplus))
        report.add("imputation from the dual", rows)
    return report, EXIT_OK


def cmd_classify(args) -> tuple[Report, int]:
    instance, _ = _load(args.instance)
    result = analysis.verify_complementarity(instance, _caps(args))
    report = Report()
    _describe(instance, report)
    report.add("game", [
        ("degenerate", result.degenerate),
        ("concurrent", "n/a" if result.concurrent is None else _fmt(result.concurrent)),
    ])
    def verdict(flag, if_true, if_false):
        if flag is None:
            return "core empty"
        return if_true if flag else if_false

    report.add("players", [
        (p.agent, f"{p.label.value}, "
                  + verdict(p.paid_sometimes, "paid sometimes", "never paid"))
        for p in result.players])
    report.add("teams", [
        (f"{u}-{v}", f"{t.label.value}, "
                     + verdict(t.always_paid_fairly, "always paid fairly",
                               "sometimes overpaid"))
        for (u, v), t in ((t.edge, t) for t in result.teams)])
    if result.gaps:
        report.add("one-directional gaps", [("note", g) for g in result.gaps])
    report.add("theorem check",
               [("violations", len(result.violations))]
               + [("counterexample", v) for v in result.violations])
    return report, EXIT_OK if result.ok else EXIT_ANALYSIS


def cmd_core_check(args) -> tuple[Report, int]:
    instance, payoffs = _load(args.instance)
    if payoffs is None:
        raise InstanceError("core-check needs an 'imputation' line in the file")
    caps = _caps(args)
    imp = make_imputation(instance, payoffs)
    verdict = analysis.is_core_imputation(instance, imp, caps)
    report = Report()
    _describe(instance, report)
    report.add("imputation", [(q, imp[q]) for q in instance.agents])
    rows = [("verdict", "IN CORE" if verdict.in_core else "NOT IN CORE")]
    if not verdict.in_core:
        rows += [
            ("blocking coalition", " ".join(sorted(verdict.witness))),
            ("coalition demand", verdict.witness_demand),
            ("coalition allocation", verdict.witness_allocation),
        ]
    report.add("core", rows)
    if instance.kind is not GameKind.GENERAL:
        in_image = analysis.in_dual_image(instance, imp)
        report.add("dual image", [
            ("verdict", "IN D(I)" if in_image else "NOT IN D(I)")])
    return report, EXIT_OK


def cmd_extremes(args) -> tuple[Report, int]:
    instance, _ = _load(args.instance)
    if instance.kind not in (GameKind.ASSIGNMENT, GameKind.UNIFORM_B):
        raise InstanceError("extremes applies to assignment and uniform_b instances")
    face = analysis.DualFace(instance)
    high_left, high_right = analysis.extreme_imputations(instance, face)
    report = Report()
    _describe(instance, report)
    report.add("payoff ranges", [
        (q, f"{_fmt(lo)} .. {_fmt(hi)}")
        for q in instance.agents
        for lo, hi in [analysis.payoff_range(instance, q, face)]])
    report.add("extreme favoring side_u", [(q, high_left[q]) for q in instance.agents])
    report.add("extreme favoring side_v", [(q, high_right[q]) for q in instance.agents])
    checked = 0
    for imp in analysis.sample_core_vertices(instance, args.samples, args.seed,
                                             _caps(args)):
        for q in instance.agents:
            lo, hi = analysis.payoff_range(instance, q, face)
            if not (lo <= imp[q] <= hi):
                report.add("sample check", [("violation", f"{q} pays {imp[q]}")])
                return report, EXIT_ANALYSIS
        checked += 1
    report.add("sample check", [("sampled core vertices within ranges", checked)])
    return report, EXIT_OK


def cmd_concurrency(args) -> tuple[Report, int]:
    instance, _ = _load(args.instance)
    if instance.kind is not GameKind.GENERAL:
        raise InstanceError("concurrency applies to general instances")
    result = analysis.check_concurrency(instance, _caps(args))
    report = Report()
    _describe(instance, report)
    report.add("concurrency", [
        ("fractional optimum", result.fractional_optimum),
        ("integral optimum", result.integral_optimum),
        ("core", "CORE NON-EMPTY" if result.concurrent else "CORE EMPTY"),
    ])
    return report, EXIT_OK


def cmd_tum_check(args) -> tuple[Report, int]:
    instance, _ = _load(args.instance)
    matrix = constraint_matrix(build_primal(instance))
    verdict = is_totally_unimodular(matrix)
    report = Report()
    _describe(instance, report)
    report.add("constraint matrix", [
        ("rows", matrix.shape[0]),
        ("columns", matrix.shape[1]),
        ("totally unimodular", verdict),
    ])
    return report, EXIT_OK


def cmd_surplus(args) -> tuple[Report, int]:
    instance, _ = _load(args.instance)
    if instance.kind is not GameKind.HOFFMAN_KRUSKAL:
        raise InstanceError("surplus applies to hoffman_kruskal instances")
    dual = analysis.optimal_dual(instance)
    account = analysis.surplus_account(instance, dual)
    imp = analysis.dual_to_imputation(instance, dual, _caps(args))
    report = Report()
    _describe(instance, report)
    report.add("deterministic optimal dual", _dual_rows(instance, dual))
    report.add("surplus account", [
        ("worth", account.worth),
        ("adjustment", account.adjustment),
        ("surplus", account.surplus),
    ])
    report.add("payments", [(q, imp[q]) for q in instance.agents])
    return report, EXIT_OK


def cmd_reproduce(args) -> tuple[Report, int]:
    caps = _caps(args)
    report = Report()
    failures = 0
    for fixture, checks in fixtures.run_all(caps):
        rows = []
        for check in checks:
            mark = "PASS" if check.passed else "FAIL"
            failures += 0 if check.passed else 1
            detail = f" [{check.detail}]" if check.detail and not check.passed else ""
            rows.append((mark, check.label + detail))
        report.add(f"{fixture.name}: {fixture.summary}", rows)
    report.add("summary", [("result", "all fixtures pass" if not failures
                            else f"{failures} checks failed")])
    return report, EXIT_OK if failures == 0 else EXIT_ANALYSIS


_COMMANDS = {
    "solve": (cmd_solve, True,
              "worth, program optimum, deterministic dual, induced payoffs"),
    "classify": (cmd_classify, True,
                 "player/team classes with payment and fairness verdicts"),
    "core-check": (cmd_core_check, True,
                   "core and D(I) membership of the file's imputation line"),
    "extremes": (cmd_extremes, True,
                 "payoff ranges and the two antipodal core imputations"),
    "concurrency": (cmd_concurrency, True,
                    "fractional vs integral optimum of a general game"),
    "tum-check": (cmd_tum_check, True,
                  "total-unimodularity sweep of the constraint matrix"),
    "surplus": (cmd_surplus, True,
                "surplus accounting under the deterministic optimal dual"),
    "reproduce-paper": (cmd_reproduce, False,
                        "run the built-in regression fixtures"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchcore",
        description="Exact analysis of matching-based cooperative games.")
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--cap-vertices", type=int, default=12, metavar="N",
                        help="enumeration cap on vertices (default 12)")
    shared.add_argument("--cap-edges", type=int, default=16, metavar="N",
                        help="enumeration cap on edges (default 16)")
    shared.add_argument("--samples", type=int, default=50, metavar="N",
                        help="random-objective samples where applicable")
    shared.add_argument("--seed", type=int, default=0, metavar="N",
                        help="seed for random-objective sampling")
    shared.add_argument("--format", choices=("text", "records"), default="text",
                        help="human-readable text or one record per fact")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs_file, blurb) in _COMMANDS.items():
        p = sub.add_parser(name, parents=[shared], help=blurb, description=blurb)
        if needs_file:
            p.add_argument("instance", help="instance file path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler, _, _ = _COMMANDS[args.command]
    try:
        report, code = handler(args)
    except (InstanceError, CapExceededError, InfeasibleInstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(report.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
