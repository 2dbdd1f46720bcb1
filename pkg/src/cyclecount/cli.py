"""Command-line front end: ``cyclecount <command> --graph g.json ...``."""

from __future__ import annotations

import argparse
import io
import json
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from . import walks
from .asymptotics import leading_coefficients, n1_exact
from .cycles import enumerate_complete_tuples, enumerate_reachable_tuples
from .graph import GraphError, GraphFormatError, MetricDigraph, load_graph
from .simulate import EventCapExceeded, default_event_cap, n_total, n_x, segment_count, simulate

EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_INVALID = 3
EXIT_CAP = 4

COMMANDS = ("validate", "simulate", "enumerate", "coefficient", "convergence", "check")


def fmt(x: float) -> str:
    return format(float(x), ".12g")


@dataclass
class RunConfig:
    command: str
    graph_path: str
    horizon: float | None = None
    samples: int | None = None
    output: str | None = None
    format: str = "text"
    event_cap: int | None = None
    beta_cap: int = 12
    vertex: int | None = None
    segment: tuple[int, float, float] | None = None
    spacing: str = "geometric"
    method: str = "simulate"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.horizon is not None and self.horizon < 0:
            raise ValueError("horizon must be non-negative")
        if self.command == "convergence" and (self.samples is None or self.samples < 2):
            raise ValueError("convergence needs at least 2 samples")


class _Beta(Exception):
    pass


def _label(g: MetricDigraph, v: int) -> int:
    return g.labels[v - 1] if g.labels else v


def _cycle_text(g, c) -> str:
    verts = [_label(g, v) for v in c.vertices] + [_label(g, c.vertices[0])]
    return "->".join(map(str, verts)) + " [" + ",".join(f"e{e}" for e in c.edges) + "]"


def _cycle_json(g, c) -> dict:
    return {"vertices": [_label(g, v) for v in c.vertices], "edges": list(c.edges), "inner": c.is_inner}


def _require_beta(g: MetricDigraph, cfg: RunConfig):
    if g.beta > cfg.beta_cap:
        raise _Beta(f"beta = {g.beta} exceeds --beta-cap {cfg.beta_cap}")


def _validate(g, cfg, out):
    cyc = " ".join(str(v) for v in g.labels)
    if cfg.format == "json":
        doc = {
            "vertices": g.n,
            "edges": g.num_edges,
            "beta": g.beta,
            "hamiltonian_cycle": list(g.labels),
            "inner_edges": list(g.inner_edges),
            "outer_edges": list(g.outer_edges),
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return 0
    out.write(f"vertices: {g.n}\nedges: {g.num_edges}\nbeta: {g.beta}\n")
    out.write(f"hamiltonian cycle: {cyc}\n")
    out.write("inner edges: " + " ".join(f"e{e}" for e in g.inner_edges) + "\n")
    out.write("outer edges: " + " ".join(f"e{e}" for e in g.outer_edges) + "\n")
    return 0


def _simulate(g, cfg, out):
    T = cfg.horizon
    log = simulate(g, T, cfg.event_cap)
    out.write(f"T={fmt(T)}\nevents={len(log)}\nN={n_total(g, log)}\nN1={n_x(log, 1)}\n")
    if cfg.vertex is not None:
        x = g.labels.index(cfg.vertex) + 1
        out.write(f"N_{cfg.vertex}={n_x(log, x)}\n")
    if cfg.segment is not None:
        e, r, tau = cfg.segment
        out.write(f"segment(e{e},r={fmt(r)},tau={fmt(tau)})={segment_count(g, log, T, e, r, tau)}\n")
    return 0


def _enumerate(g, cfg, out):
    _require_beta(g, cfg)
    D = enumerate_reachable_tuples(g)
    if cfg.format == "json":
        doc = {
            "beta": g.beta,
            "sizes": {str(k): len(v) for k, v in D.items()},
            "D": {str(k): [[_cycle_json(g, c) for c in d] for d in v] for k, v in D.items()},
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return 0
    out.write(f"beta: {g.beta}\n")
    for k, tuples in D.items():
        out.write(f"|D_{k}| = {len(tuples)}\n")
        for d in tuples:
            out.write("  (" + "; ".join(_cycle_text(g, c) for c in d) + ")\n")
    return 0


def _coefficient(g, cfg, out):
    _require_beta(g, cfg)
    rep = leading_coefficients(g, enumerate_complete_tuples(g))
    if cfg.format == "json":
        out.write(json.dumps(rep.to_dict(), indent=2) + "\n")
        return 0
    out.write(f"beta: {rep.beta}\ncomplete tuples: {rep.tuple_count}\n")
    out.write(f"total length: {fmt(rep.total_length)}\n")
    out.write(f"a1: {fmt(rep.a1)}\nn_leading: {fmt(rep.n_leading)}\n")
    return 0


def _convergence(g, cfg, out):
    t_max, k = cfg.horizon, cfg.samples
    if cfg.spacing == "linear":
        Ts = np.linspace(t_max / k, t_max, k)
    else:
        Ts = np.geomspace(t_max / k, t_max, k)
    power = g.beta - 1
    if cfg.method == "lattice":
        N = walks.count_points(g, Ts)
        N1 = [walks.count_entries(g, 1, float(t)) for t in Ts]
    else:
        log = simulate(g, t_max, cfg.event_cap)
        N = [n_total(g, log, float(t)) for t in Ts]
        N1 = [n_x(log, 1, float(t)) for t in Ts]
    buf = io.StringIO()
    buf.write("T,N,N1,ratio\n")
    for t, a, b in zip(Ts, N, N1):
        buf.write(f"{fmt(t)},{int(a)},{int(b)},{fmt(a / t ** power)}\n")
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return 0


def _check(g, cfg, out):
    _require_beta(g, cfg)
    T = cfg.horizon
    sim = n_x(simulate(g, T, cfg.event_cap), 1)
    formula = n1_exact(g, enumerate_reachable_tuples(g), T)
    if sim == formula:
        out.write(f"N1={sim} (both paths)\n")
        return 0
    out.write(f"MISMATCH simulator N1={sim} formula N1={formula}\n")
    return EXIT_MISMATCH


_DISPATCH = {
    "validate": _validate,
    "simulate": _simulate,
    "enumerate": _enumerate,
    "coefficient": _coefficient,
    "convergence": _convergence,
    "check": _check,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute one command; returns the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            g = load_graph(cfg.graph_path)
            status = _DISPATCH[cfg.command](g, cfg, out)
        except (OSError, GraphFormatError) as exc:
            err.write(f"error: {exc}\n")
            status = EXIT_INPUT
        except (GraphError, _Beta, ValueError) as exc:
            err.write(f"error: {exc}\n")
            status = EXIT_INVALID
        except EventCapExceeded as exc:
            err.write(f"error: {exc}\n")
            status = EXIT_CAP
    for w in caught:
        err.write(f"warning: {w.message}\n")
    return status


def _segment(text: str):
    try:
        e, r, tau = text.split(",")
        return int(e), float(r), float(tau)
    except ValueError:
        raise argparse.ArgumentTypeError("expected e,r,tau") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclecount", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_choices=("text", "json")):
        sp.add_argument("--graph", required=True, help="graph JSON file")
        sp.add_argument("--format", choices=fmt_choices, default="text")
        sp.add_argument("--event-cap", type=int, default=None,
                        help=f"maximum simulated events (default {default_event_cap()})")
        sp.add_argument("--beta-cap", type=int, default=12)
        return sp

    common(sub.add_parser("validate", help="check a graph file"))
    s = common(sub.add_parser("simulate", help="simulate up to time T"))
    s.add_argument("--T", type=float, required=True, dest="horizon")
    s.add_argument("--vertex", type=int)
    s.add_argument("--segment", type=_segment, help="e,r,tau")
    common(sub.add_parser("enumerate", help="list reachable cycle tuples"))
    c = common(sub.add_parser("coefficient", help="leading asymptotic coefficients"))
    c.add_argument("--json", action="store_const", const="json", dest="format")
    v = common(sub.add_parser("convergence", help="CSV of N(T)/T^(beta-1)"), ("csv",))
    v.add_argument("--t-max", type=float, required=True, dest="horizon")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--out", dest="output")
    v.add_argument("--linear", action="store_const", const="linear", default="geometric", dest="spacing")
    v.add_argument("--method", choices=("simulate", "lattice"), default="simulate")
    k = common(sub.add_parser("check", help="simulator vs. formula for N1(T)"))
    k.add_argument("--T", type=float, required=True, dest="horizon")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(args).items() if k != "graph"}
    try:
        cfg = RunConfig(graph_path=args.graph, **fields)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
