"""Command-line interface: ``basehurwitz <subcommand> [options]``.

Every subcommand builds a report dictionary, prints it as JSON (default)
or plain text and exits with 0 when all checks hold, 1 on a verification
failure and 2 on a usage or configuration error.  Rationals are written
as ``"num/den"`` strings.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional

from . import freeenergy, hurwitz, opalgebra, oracle, semiclassical
from .hurwitz import BaseCurve, HurwitzTable, Skipped, ramification_count
from .partitions import Partition, partitions_up_to

SCHEMA = 1
CACHE_ENV = "HURWITZ_CACHE_DIR"


class UsageError(ValueError):
    pass


def rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def exp_laurent_json(c: opalgebra.ExpLaurent) -> Dict[str, Dict[str, str]]:
    """{exponent a: {hbar power j: coefficient}}; the zero element is {}."""
    return {rational(a): {str(j): rational(v) for j, v in sorted(q.items())}
            for a, q in sorted(c.terms.items())}


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "basehurwitz"


@dataclass
class RunConfig:
    base_genus: int = 1
    degree_bound: int = 6
    ramification_bound: int = 6
    x_bound: int = 8
    hbar_bound: int = 8
    oracle_budget: int = oracle.DEFAULT_BUDGET
    cache_dir: Optional[Path] = None
    output_format: str = "json"

    def validate(self):
        if self.base_genus < 0:
            raise UsageError("--base-genus must be non-negative")
        for name in ("degree_bound", "ramification_bound", "x_bound", "hbar_bound", "oracle_budget"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.output_format not in ("json", "text"):
            raise UsageError("--format must be json or text")

    @property
    def base(self) -> BaseCurve:
        return BaseCurve(self.base_genus)

    def table(self) -> HurwitzTable:
        return hurwitz.get_table(self.base, self.degree_bound, self.ramification_bound,
                                 cache_dir=self.cache_dir)


def parse_mu(text: str) -> Partition:
    try:
        parts = [int(p) for p in text.split(",") if p.strip()]
        return Partition(parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}") from None


# -- subcommands ----------------------------------------------------------------

def cmd_hurwitz_table(cfg: RunConfig, args) -> dict:
    table = cfg.table()
    entries = [{"g": g, "mu": list(mu), "r": r, "value": rational(v)}
               for g, mu, r, v in table.entries()
               if mu.size <= cfg.degree_bound and r <= cfg.ramification_bound]
    return {"base_genus": cfg.base_genus, "degree_bound": cfg.degree_bound,
            "ramification_bound": cfg.ramification_bound, "entries": entries, "ok": True}


def cmd_free_energy(cfg: RunConfig, args) -> dict:
    bound = cfg.degree_bound if cfg.base_genus == 0 else None
    fe = freeenergy.build_free_energy(cfg.base, args.genus, args.n, bound)
    terms = [{"exponents": list(e), "value": rational(c)} for e, c in sorted(fe.poly.terms.items())]
    return {"base_genus": cfg.base_genus, "g": args.genus, "n": args.n,
            "degree_bound": bound, "terms": terms, "ok": True}


def caj_cases(cfg: RunConfig, genus_max: int):
    for mu in partitions_up_to(cfg.degree_bound):
        if not mu:
            continue
        for g in range(genus_max + 1):
            r = ramification_count(cfg.base, g, mu)
            if 0 < r <= cfg.ramification_bound:
                yield g, mu


def cmd_verify_caj(cfg: RunConfig, args) -> dict:
    table = cfg.table()
    checked, failures = 0, []
    for g, mu in caj_cases(cfg, args.genus_max):
        lhs, rhs = hurwitz.cut_and_join_sides(cfg.base, g, mu, table)
        checked += 1
        if lhs != rhs:
            failures.append({"g": g, "mu": list(mu), "lhs": rational(lhs), "rhs": rational(rhs)})
    return {"base_genus": cfg.base_genus, "checked": checked,
            "first_failure": failures[0] if failures else None, "ok": not failures}


def cmd_verify_pde(cfg: RunConfig, args) -> dict:
    bound = cfg.degree_bound if cfg.base_genus == 0 else None
    cases = []
    for c in range(1, args.complexity_max + 1):
        for g in range(0, c // 2 + 2):
            n = c - 2 * g + 2
            if n >= 1:
                rep = freeenergy.pde_report(cfg.base, g, n, bound)
                cases.append({"g": g, "n": n, "ok": rep.ok,
                              "layers": {str(k): v for k, v in sorted(rep.layers.items())},
                              "top_degree": rep.top_degree,
                              "top_layer_annihilated": rep.top_layer_annihilated,
                              "first_failing_degree": rep.first_failure})
    first = next((case for case in cases if not case["ok"]), None)
    return {"base_genus": cfg.base_genus, "degree_bound": bound, "cases": cases,
            "first_failure": first, "ok": first is None}


def _operator_json(rep: opalgebra.OperatorReport) -> dict:
    return {"name": rep.name, "x_bound": rep.M, "checked_degrees": f"0..{rep.checked_degrees}",
            "excluded_layer": rep.excluded_layer,
            "residuals": {str(m): exp_laurent_json(r) for m, r in enumerate(rep.residuals)},
            "first_failing_degree": rep.first_failure, "ok": rep.ok}


def cmd_verify_quantum_curve(cfg: RunConfig, args) -> dict:
    reps = [opalgebra.pz_report(cfg.base, cfg.x_bound), opalgebra.p1_report(cfg.base, cfg.x_bound)]
    out = {"base_genus": cfg.base_genus, "reports": [_operator_json(r) for r in reps]}
    if cfg.base_genus == 0:
        P, P0 = opalgebra.build_P(cfg.base), opalgebra.sphere_P()
        same = all(opalgebra.apply(P, s) == opalgebra.apply(P0, s)
                   for s in (opalgebra.XSeries.basis(j, a, m, cfg.x_bound + 1)
                             for j, a, m in opalgebra.commutator_grid(ms=range(cfg.x_bound + 1))))
        out["sphere_form_agrees"] = same
        reps_ok = same
    else:
        reps_ok = True
    out["ok"] = reps_ok and all(r.ok for r in reps)
    return out


def cmd_verify_schrodinger(cfg: RunConfig, args) -> dict:
    rep = opalgebra.qz_report(cfg.base, cfg.x_bound)
    return {"base_genus": cfg.base_genus, "reports": [_operator_json(rep)], "ok": rep.ok}


def cmd_verify_commutator(cfg: RunConfig, args) -> dict:
    grid = opalgebra.commutator_grid()
    bad = [{"j": j, "a": rational(a), "m": m} for j, a, m in grid
           if not opalgebra.commutator_residual(cfg.base, j, a, m).is_zero()]
    return {"base_genus": cfg.base_genus, "checked": len(grid),
            "first_failure": bad[0] if bad else None, "ok": not bad}


def cmd_z_match(cfg: RunConfig, args) -> dict:
    floor = args.genus_floor
    rep = opalgebra.z_match(cfg.base, cfg.x_bound, cfg.hbar_bound, floor)
    mism = [{"m": m, "k": k, "series": rational(a), "closed_form": rational(b)}
            for m, k, a, b in rep.mismatches]
    return {"base_genus": cfg.base_genus, "x_bound": rep.M, "hbar_bound": rep.K,
            "genus_floor": rep.genus_floor, "compared": rep.compared,
            "first_failure": mism[0] if mism else None, "ok": rep.ok}


def cmd_oracle(cfg: RunConfig, args) -> dict:
    if args.mu is None or args.r is None:
        raise UsageError("oracle needs --mu and --r")
    d = args.mu.size
    if args.degree_given and args.degree_given != d:
        raise UsageError(f"--degree {args.degree_given} does not match |mu| = {d}")
    prob = oracle.MonodromyProblem(cfg.base_genus, d, args.mu, args.r, args.connected)
    value = oracle.count_covers(prob, cfg.oracle_budget, args.backend)
    return {"base_genus": cfg.base_genus, "degree": d, "mu": list(args.mu), "r": args.r,
            "connected": args.connected, "value": rational(value), "ok": True}


def oracle_grid(h: int, max_degree: int, max_r: int, budget: int):
    """Feasible (d, r) cells: enumeration size within the budget."""
    for d in range(1, min(max_degree, oracle.MAX_DEGREE) + 1):
        for r in range(max_r + 1):
            if oracle.enumeration_size(h, d, r) <= budget:
                yield d, r


def compare_with_oracle(h: int, max_degree: int, max_r: int, budget: int,
                        connected: bool = False, backend: str = "auto") -> dict:
    base = BaseCurve(h)
    table = hurwitz.get_table(base, max_degree, max_r)
    cells, cases, failures = 0, 0, []
    for d, r in oracle_grid(h, max_degree, max_r, budget):
        cells += 1
        hist = oracle.cycle_type_histogram(h, d, r, False, budget, backend)
        conn = oracle.cycle_type_histogram(h, d, r, True, budget, backend) if connected else None
        fact = Fraction(1, math.factorial(d))
        for mu in partitions_up_to(d):
            if mu.size != d:
                continue
            cases += 1
            expected = hist.get(tuple(mu), 0) * fact
            got = table.disconnected_count(mu, r)
            if got != expected:
                failures.append({"d": d, "r": r, "mu": list(mu), "kind": "disconnected",
                                 "series": rational(got), "oracle": rational(expected)})
            if conn is not None:
                g = hurwitz.genus_from(base, mu, r)
                brute = conn.get(tuple(mu), 0) * fact
                series = Fraction(0)
                if g is not None and g >= 0:
                    series = (table.number(g, mu) * math.factorial(r)
                              / hurwitz.automorphism_factor(mu))
                if series != brute:
                    failures.append({"d": d, "r": r, "mu": list(mu), "kind": "connected",
                                     "series": rational(series), "oracle": rational(brute)})
    return {"base_genus": h, "cells": cells, "cases": cases,
            "first_failure": failures[0] if failures else None, "ok": not failures}


def cmd_oracle_compare(cfg: RunConfig, args) -> dict:
    max_degree = args.max_oracle_degree or cfg.degree_bound
    rep = compare_with_oracle(cfg.base_genus, max_degree, cfg.ramification_bound,
                              cfg.oracle_budget, args.connected, args.backend)
    rep["backend"] = "compiled" if (args.backend == "compiled" or
                                    (args.backend == "auto" and oracle.HAVE_KERNEL)) else "python"
    return rep


def cmd_elliptic_series(cfg: RunConfig, args) -> dict:
    N = args.order
    if args.genus == 1:
        series = freeenergy.elliptic_F1_series(N)
        return {"genus": 1, "order": N,
                "coefficients": [rational(series[n]) for n in range(N + 1)],
                "matches_minus_log_phi": True, "ok": True}
    fit = freeenergy.elliptic_Fg_series(args.genus, N)
    return {"genus": args.genus, "order": N,
            "coefficients": [rational(fit.series[n]) for n in range(N + 1)],
            "fit": {"basis": [f"E2^{a} E4^{b} E6^{c}" for a, b, c in fit.basis],
                    "fitted_on": f"q^0..q^{fit.fitted_on - 1}",
                    "weights": [rational(fit.coefficients[e]) for e in fit.basis]
                    if fit.coefficients else [],
                    "residuals": [rational(x) for x in fit.residuals],
                    "diagnostic": fit.diagnostic},
            "ok": fit.ok}


def cmd_semiclassical(cfg: RunConfig, args) -> dict:
    rep = semiclassical.semiclassical_report(2, args.order)
    return {"chi": 2, "order": args.order,
            "y_coefficients": [rational(rep.coefficients[m]) for m in range(args.order + 1)],
            "checks": dict(sorted(rep.checks.items())), "ok": rep.ok}


def cmd_verify_all(cfg: RunConfig, args) -> dict:
    defaults = argparse.Namespace(genus_max=4, complexity_max=5, genus_floor=None,
                                  connected=False, backend="auto",
                                  max_oracle_degree=min(cfg.degree_bound, 4),
                                  genus=1, order=20)
    suites: List[tuple] = [
        ("verify-caj", cmd_verify_caj, {}),
        ("verify-pde", cmd_verify_pde, {}),
        ("verify-quantum-curve", cmd_verify_quantum_curve, {}),
        ("verify-schrodinger", cmd_verify_schrodinger, {}),
        ("verify-commutator", cmd_verify_commutator, {}),
        ("z-match", cmd_z_match, {}),
        ("oracle-compare", cmd_oracle_compare, {}),
        ("elliptic-series", cmd_elliptic_series, {"genus": 1, "order": 20}),
        ("elliptic-series-g2", cmd_elliptic_series, {"genus": 2, "order": 12}),
        ("semiclassical", cmd_semiclassical, {"order": 10}),
    ]
    results = {}
    for name, fn, extra in suites:
        ns = argparse.Namespace(**{**vars(defaults), **extra})
        rep = fn(cfg, ns)
        results[name] = {"ok": rep["ok"], "first_failure": rep.get("first_failure")}
    failed = [name for name, rep in results.items() if not rep["ok"]]
    return {"base_genus": cfg.base_genus, "suites": results,
            "first_failure": failed[0] if failed else None, "ok": not failed}


COMMANDS: Dict[str, Callable] = {
    "hurwitz-table": cmd_hurwitz_table,
    "free-energy": cmd_free_energy,
    "verify-caj": cmd_verify_caj,
    "verify-pde": cmd_verify_pde,
    "verify-quantum-curve": cmd_verify_quantum_curve,
    "verify-schrodinger": cmd_verify_schrodinger,
    "verify-commutator": cmd_verify_commutator,
    "z-match": cmd_z_match,
    "oracle": cmd_oracle,
    "oracle-compare": cmd_oracle_compare,
    "elliptic-series": cmd_elliptic_series,
    "semiclassical": cmd_semiclassical,
    "verify-all": cmd_verify_all,
}


# -- argument parsing --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base-genus", type=int, default=1, help="genus h of the base curve")
    common.add_argument("--degree", type=int, default=None,
                        help="degree bound D (for oracle: the degree)")
    common.add_argument("--ramification", type=int, default=6, help="simple-ramification bound R")
    common.add_argument("--x-bound", type=int, default=8, help="x-degree bound M")
    common.add_argument("--hbar-bound", type=int, default=8, help="hbar-degree bound K")
    common.add_argument("--mu", type=parse_mu, default=None, help="partition as a,b,c")
    common.add_argument("--r", type=int, default=None, help="number of simple branch points")
    common.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET,
                        help="oracle enumeration budget")
    common.add_argument("--cache-dir", type=Path, default=None,
                        help=f"character-table cache (default: ${CACHE_ENV} or ~/.cache/basehurwitz)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="basehurwitz",
                                     description="Hurwitz numbers of curves over a base of genus h.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "free-energy":
            p.add_argument("--genus", type=int, required=True)
            p.add_argument("--n", type=int, required=True)
        if name == "verify-caj":
            p.add_argument("--genus-max", type=int, default=4)
        if name == "verify-pde":
            p.add_argument("--complexity-max", type=int, default=5,
                           help="largest 2g-2+n checked")
        if name == "z-match":
            p.add_argument("--genus-floor", type=int, default=None)
        if name in ("oracle", "oracle-compare"):
            p.add_argument("--connected", action="store_true")
            p.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto")
        if name == "oracle-compare":
            p.add_argument("--max-oracle-degree", type=int, default=None)
        if name == "elliptic-series":
            p.add_argument("--genus", type=int, default=1)
            p.add_argument("--order", type=int, default=20)
        if name == "semiclassical":
            p.add_argument("--order", type=int, default=10)
    return parser


def render_text(report: dict, prefix: str = "") -> List[str]:
    lines = []
    for key, value in report.items():
        if key == "coefficients" and isinstance(value, list) and value and isinstance(value[0], str):
            lines.extend(f"{prefix}{c} q^{n}" for n, c in enumerate(value))
        elif isinstance(value, dict):
            lines.append(f"{prefix}{key}:")
            lines.extend(render_text(value, prefix + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{prefix}{key}:")
            for item in value:
                lines.append(f"{prefix}  - " + ", ".join(
                    f"{k}={json.dumps(v, sort_keys=True)}" for k, v in item.items()))
        else:
            lines.append(f"{prefix}{key}: {json.dumps(value) if not isinstance(value, str) else value}")
    return lines


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.degree_given = args.degree
    cache = None if args.no_cache else (args.cache_dir or default_cache_dir())
    cfg = RunConfig(base_genus=args.base_genus,
                    degree_bound=args.degree if args.degree is not None else 6,
                    ramification_bound=args.ramification, x_bound=args.x_bound,
                    hbar_bound=args.hbar_bound, oracle_budget=args.budget,
                    cache_dir=cache, output_format=args.format)
    try:
        cfg.validate()
        report = COMMANDS[args.command](cfg, args)
    except (UsageError, oracle.BudgetExceeded, hurwitz.NegativeRamificationError,
            freeenergy.InsufficientTableError, Skipped, ValueError) as exc:
        print(f"basehurwitz {args.command}: error: {exc}", file=sys.stderr)
        return 2
    report = {"schema": SCHEMA, "command": args.command, **report}
    if cfg.output_format == "json":
        print(json.dumps(report, indent=2), file=stdout)
    else:
        print("\n".join(render_text(report)), file=stdout)
    return 0 if report["ok"] else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
