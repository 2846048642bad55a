"""Command-line front end: every table as TSV or JSON, Hasse diagrams as DOT."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import ccsolver, euler, fixtures, grothendieck, orbitgeom, packets, translation
from .grothendieck import format_combination

SCHEMA = 1
COMMANDS = ("orbits", "hasse", "coherent", "cc", "wact", "packets", "glambda", "singular",
            "euler", "selftest")
EXIT_OK, EXIT_ARGS, EXIT_FIXTURE, EXIT_SOLVER = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass(frozen=True)
class RunConfig:
    command: str
    pair: str
    fmt: str | None
    bound: int
    fixtures: Path | None  # None means the bundled data
    lam: tuple | None = None
    case: str = "integral"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="g2micro", description=__doc__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("target", nargs="?", help="for 'singular': the block name (subregular)")
    p.add_argument("--pair", default="g2", help="g2, sl3 or a key such as sl2xsl2-gl2")
    p.add_argument("--format", dest="fmt", choices=("tsv", "json", "dot"))
    p.add_argument("--bound", type=int, default=4, help="search bound for the cycle solve")
    p.add_argument("--fixtures", type=Path, help="fixture directory (default ./data if present)")
    p.add_argument("--lambda", dest="lam", help="infinitesimal character as c1,c2")
    p.add_argument("--case", default="integral", choices=("integral", "subregular", "nonintegral"))
    return p


def _parse_lambda(text: str) -> tuple:
    try:
        parts = tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --lambda {text!r}") from exc
    if len(parts) != 2:
        raise UsageError("--lambda needs two coordinates")
    return parts


def parse_args(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.bound < 1:
        raise UsageError("--bound must be positive")
    if ns.command == "glambda" and not ns.lam:
        raise UsageError("glambda needs --lambda c1,c2")
    if ns.command == "singular" and (ns.target or "subregular") != "subregular":
        raise UsageError(f"only the subregular singular block is available, not {ns.target!r}")
    if ns.target and ns.command != "singular":
        raise UsageError(f"unexpected argument {ns.target!r}")
    if ns.fmt == "dot" and ns.command != "hasse":
        raise UsageError("--format dot is only for hasse")
    try:
        pair = orbitgeom.get_pair(ns.pair).key
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    fixture_dir = ns.fixtures
    if fixture_dir is None and Path("data").is_dir():
        fixture_dir = Path("data")
    if fixture_dir is not None and not fixture_dir.is_dir():
        raise fixtures.FixtureError(f"fixture directory {fixture_dir} does not exist")
    if fixture_dir is not None and fixture_dir.resolve() == fixtures.default_dir().resolve():
        fixture_dir = None
    return RunConfig(ns.command, pair, ns.fmt, ns.bound, fixture_dir,
                     _parse_lambda(ns.lam) if ns.lam else None, ns.case)


# ---------------------------------------------------------------------------
# rendering helpers


def _json(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=False) + "\n"


def _matrix_tsv(values, row_name, col_name) -> str:
    n_rows, n_cols = values.shape
    header = [""] + [col_name(j) for j in range(n_cols)]
    rows = [[row_name(i)] + [int(x) for x in values[i]] for i in range(n_rows)]
    return fixtures.to_tsv(header, rows)


def _is_integral(pair_key: str) -> bool:
    p = orbitgeom.get_pair(pair_key)
    return p.group_type == "G2" and p.k_type == "SL2xSL2"


def _cycle_data(cfg: RunConfig):
    if not _is_integral(cfg.pair):
        return ccsolver.cc_nonintegral(cfg.pair), ccsolver.waction_nonintegral(cfg.pair)
    if cfg.fixtures is None and cfg.bound == 4:
        sol = ccsolver.solve_integral()
    else:
        coherent = grothendieck.load_coherent_table(cfg.pair, cfg.fixtures)
        sol = ccsolver.solve(ccsolver.assemble(cfg.pair, coherent=coherent), cfg.bound)
    return sol.cc, sol.waction


# ---------------------------------------------------------------------------
# commands


def cmd_orbits(cfg: RunConfig) -> str:
    model = orbitgeom.orbit_model(cfg.pair, cfg.fixtures)
    if cfg.fmt == "json":
        return _json({
            "pair": cfg.pair,
            "orbits": [
                {"id": o.id, "p_word": o.p_word, "dim": o.dim,
                 "nature": {f"a{k + 1}": n for k, n in enumerate(o.nature)},
                 "closed": o.is_closed, "open": o.is_open}
                for o in model.orbits
            ],
        })
    header = ["id", "p_word", "dim"] + [f"nature_a{k + 1}" for k in range(len(model.generators))]
    header += ["closed"]
    rows = [[o.id, o.p_word, o.dim, *o.nature, int(o.is_closed)] for o in model.orbits]
    return fixtures.to_tsv(header, rows)


def cmd_hasse(cfg: RunConfig) -> str:
    poset = orbitgeom.orbit_model(cfg.pair, cfg.fixtures).poset()
    edges = sorted(poset.covers, key=lambda c: (c[1], c[0], c[2]))
    if cfg.fmt in (None, "dot"):
        return orbitgeom.hasse_dot(poset, cfg.pair.replace("-", "_"))
    if cfg.fmt == "json":
        return _json({"pair": cfg.pair, "nodes": [f"S{o.id}" for o in poset.orbits],
                      "edges": [{"lower": lo, "upper": up, "label": lab} for lo, up, lab in edges]})
    return fixtures.to_tsv(["lower", "upper", "label"], [list(e) for e in edges])


def cmd_coherent(cfg: RunConfig) -> str:
    action = grothendieck.load_coherent_table(cfg.pair, cfg.fixtures)
    if cfg.fmt == "json":
        return _json({
            "pair": cfg.pair, "source": action.source,
            "images": {
                f"s{g}": [format_combination(action.apply(g, grothendieck.KVector.basis(
                    action.size, j, "P")).support(), lambda i: f"P{i}") for j in range(action.size)]
                for g in action.generators
            },
        })
    rows = []
    for g in action.generators:
        m = action.matrix(g)
        for j in range(action.size):
            for i in range(action.size):
                if m[i, j]:
                    rows.append([f"s{g}", j, i, int(m[i, j])])
    return fixtures.to_tsv(["generator", "source_id", "target_id", "coeff"], rows)


def cmd_cc(cfg: RunConfig) -> str:
    cc, _ = _cycle_data(cfg)
    if cfg.fmt == "json":
        return _json({
            "pair": cfg.pair,
            "cycles": {f"xi{p}": str(cc.cycle(p)) for p in range(cc.n_params)},
            "param_orbit": list(cc.param_orbit),
        })
    return _matrix_tsv(cc.values, lambda i: f"S{i}", lambda j: f"xi{j}")


def cmd_wact(cfg: RunConfig) -> str:
    _, w = _cycle_data(cfg)
    gens = sorted(w.matrices)
    if cfg.fmt == "json":
        return _json({
            "pair": cfg.pair,
            "images": {
                f"s{g}": {f"T{j}": format_combination(
                    {i: int(v) for i, v in enumerate(w.matrix(g)[:, j]) if v}, lambda i: f"T{i}")
                    for j in range(w.matrix(g).shape[1])}
                for g in gens
            },
        })
    rows = []
    for g in gens:
        m = w.matrix(g)
        for j in range(m.shape[1]):
            for i in range(m.shape[0]):
                if m[i, j]:
                    rows.append([f"s{g}", j, i, int(m[i, j])])
    return fixtures.to_tsv(["generator", "source_id", "target_id", "coeff"], rows)


def _packet_rows(pks, q="S", x="xi"):
    return [[f"{q}{pk.orbit}", format_combination(pk.eta, lambda i: f"pi({x}{i})")] for pk in pks]


def cmd_packets(cfg: RunConfig) -> str:
    if _is_integral(cfg.pair):
        cc, _ = _cycle_data(cfg)
        pks = packets.all_micro_packets(cc)
    else:
        pks = packets.nonintegral_packets(cfg.pair)
    if cfg.fmt == "json":
        return _json({"pair": cfg.pair, "packets": [pk.to_json() for pk in pks]})
    return fixtures.to_tsv(["orbit", "eta"], _packet_rows(pks))


def cmd_glambda(cfg: RunConfig) -> str:
    lam = cfg.lam
    kind = orbitgeom.integral_subsystem(lam)
    options = [p.k_type for p in orbitgeom.k_lambda_options(kind)]
    if cfg.fmt == "json":
        return _json({"lambda": [str(x) for x in lam], "group": kind, "k_options": options,
                      "regular": orbitgeom.is_regular(lam)})
    line = f"{kind}; K options: {', '.join(options)}"
    if not orbitgeom.is_regular(lam):
        line += f"\n{translation.singular_summary(lam)}"
    return line + "\n"


def cmd_singular(cfg: RunConfig) -> str:
    block = translation.subregular_block()
    cc = translation.singular_cc(block)
    pks = [translation.singular_packet(block, q.id) for q in block.q_orbits]
    if cfg.fmt == "json":
        return _json({
            "block": "subregular",
            "lambda": [str(x) for x in translation.SUBREGULAR_LAMBDA],
            "q_orbits": [
                {"id": q.id, "dim": q.dim, "top": f"S{q.top}",
                 "fibre": [f"S{s}" for s in sorted(q.fibre)], "handle": q.handle}
                for q in block.q_orbits
            ],
            "pushforward": {f"gamma{g}": f"xi{x}" for g, x in block.pushforward.items()},
            "cycles": {f"gamma{g}": format_combination(
                {i: int(v) for i, v in enumerate(cc.values[:, g]) if v}, lambda i: f"Q{i}")
                for g in range(cc.n_params)},
            "packets": [pk.to_json("Q", "gamma") for pk in pks],
            "provenance": {f"{kind}:{idx}": src for (kind, idx), src in sorted(block.provenance.items())},
        })
    out = _matrix_tsv(cc.values, lambda i: f"Q{i}", lambda j: f"gamma{j}")
    out += "\n" + fixtures.to_tsv(["orbit", "eta"], _packet_rows(pks, "Q", "gamma"))
    return out


def cmd_euler(cfg: RunConfig) -> str:
    if cfg.case == "nonintegral":
        pair = cfg.pair if not _is_integral(cfg.pair) else "sl3"
        e = euler.nonintegral_euler(pair)
    else:
        e = euler.solve_case(cfg.case, cfg.fixtures)
    lab = e.label
    if cfg.fmt == "json":
        summary = euler.obstruction_summary(e)
        return _json({
            "case": cfg.case,
            "matrix": [[int(x) for x in row] for row in e.values],
            "obstructions": [{"upper": f"{lab}{u}", "lower": f"{lab}{lo}", "value": v}
                             for u, lo, v in euler.obstruction_report(e)],
            "summary": {f"{lab}{j}": text for j, text in summary.items()},
        })
    return _matrix_tsv(e.values, lambda i: f"{lab}{i}", lambda j: f"{lab}{j}")


def cmd_selftest(cfg: RunConfig) -> tuple:
    from .acceptance import run_all

    results = run_all()
    text = "".join(r.line() + "\n" for r in results)
    passed = sum(r.passed for r in results)
    text += f"{passed}/{len(results)} criteria passed\n"
    return text, EXIT_OK if passed == len(results) else EXIT_ARGS


HANDLERS = {
    "orbits": cmd_orbits, "hasse": cmd_hasse, "coherent": cmd_coherent, "cc": cmd_cc,
    "wact": cmd_wact, "packets": cmd_packets, "glambda": cmd_glambda, "singular": cmd_singular,
    "euler": cmd_euler, "selftest": cmd_selftest,
}


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cfg = parse_args(list(argv))
        result = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_ARGS
    except fixtures.FixtureError as exc:
        err.write(f"fixture error: {exc}\n")
        return EXIT_FIXTURE
    except ccsolver.SolverError as exc:
        err.write(f"solver: {exc}\n")
        return EXIT_SOLVER
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ARGS
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    out.write(result)
    return code


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
