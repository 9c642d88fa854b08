"""``boxkit`` command-line front end.

Exit codes: 0 success, 1 a "no" answer (not interval, box > d, failed
verification), 2 bad input or computation error, 64 usage error, 74 I/O
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .boxrep import BoxRepresentation, InvalidRepresentation, brute_force_boxicity, from_models, verify
from .gadgets import build_block, build_gn, build_k2n, gn_box_representation, gn_labeling, stab_analysis
from .graph import GraphError, read_edge_list, write_edge_list
from .interval import recognize_interval
from .kernel import KernelTooLarge, kernelize, solve_fpt
from .pathdp import InvalidDecomposition, PathDecomposition, approx_boxicity
from .svg import render_svg

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_USAGE, EXIT_IO = 0, 1, 2, 64, 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    return Path(path).read_text()


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"{args.command} needs --{name.replace('_', '-')}")
    return value


def _load_graph(args):
    return read_edge_list(_read(_need(args, "graph")))


def _load_rep(args) -> BoxRepresentation:
    return BoxRepresentation.from_json(json.loads(_read(_need(args, "rep"))))


class _Out:
    """Collects the JSON payload and the human summary of one command."""

    def __init__(self, args):
        self.args = args
        self.payload: dict = {}
        self.lines: list[str] = []

    def emit(self):
        if self.args.json:
            print(json.dumps(self.payload, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


def _write(args, text: str, suffix: str = "") -> str | None:
    if args.out is None:
        return None
    path = args.out + suffix
    Path(path).write_text(text)
    return path


def cmd_exact(args, out: _Out) -> int:
    g = _load_graph(args)
    found = brute_force_boxicity(g, d_max=args.dmax)
    if found is None:
        out.payload = {"d": None, "dmax": args.dmax}
        out.lines.append(f"box > {args.dmax}")
        return EXIT_NO
    d, rep = found
    out.payload = {"d": d, "rep": rep.to_json()}
    out.lines += [f"d={d}", json.dumps(rep.to_json())]
    _write(args, json.dumps(rep.to_json(), indent=1) + "\n")
    return EXIT_OK


def cmd_recognize(args, out: _Out) -> int:
    g = _load_graph(args)
    m = recognize_interval(g)
    out.payload = {"interval": m is not None, "model": m.to_json() if m is not None else None}
    if m is None:
        out.lines.append("not an interval graph")
        return EXIT_NO
    out.lines += ["interval graph", json.dumps(m.to_json())]
    return EXIT_OK


def _unsound_warning(args):
    if args.threshold_override is not None:
        print(f"WARNING: threshold override {args.threshold_override} is UNSOUND; "
              "the kernel may not preserve boxicity", file=sys.stderr)


def cmd_kernelize(args, out: _Out) -> int:
    g = _load_graph(args)
    _unsound_warning(args)
    kern, report = kernelize(g, threshold_override=args.threshold_override)
    out.payload = report.to_json()
    out.payload["kernel"] = {"n": kern.n, "m": kern.m}
    out.lines.append(f"X = {report.X}; kernel has {kern.n} vertices, {kern.m} edges"
                     + ("" if report.sound else " (UNSOUND)"))
    if _write(args, write_edge_list(kern)) is None and not args.json:
        out.lines.append(write_edge_list(kern).rstrip("\n"))
    return EXIT_OK


def cmd_fpt_solve(args, out: _Out) -> int:
    g = _load_graph(args)
    d = _need(args, "d")
    answer = solve_fpt(g, d)
    out.payload = {"d": d, "answer": answer}
    out.lines.append(f"box <= {d}: {'yes' if answer else 'no'}")
    return EXIT_OK if answer else EXIT_NO


def cmd_pw_approx(args, out: _Out) -> int:
    g = _load_graph(args)
    pd = PathDecomposition.from_text(_read(_need(args, "pd")))
    res = approx_boxicity(g, pd)
    out.payload = res.report()
    out.payload["rep"] = res.rep.to_json()
    out.lines += [f"d={res.d} (so {res.d} <= box <= {res.d + 1}), rep dimension {res.rep.d}",
                  f"wall time {res.wall_time:.3f}s"]
    _write(args, json.dumps(res.rep.to_json(), indent=1) + "\n")
    return EXIT_OK


def cmd_gadget(args, out: _Out) -> int:
    kind = args.kind
    if kind == "block":
        gadget = build_block()
        g, rep, lab = gadget.graph, gn_box_representation(1), gn_labeling(1)
    elif kind == "gn":
        n = _need(args, "n")
        if n < 1:
            raise UsageError("--n must be positive")
        gadget = build_gn(n)
        g, rep, lab = gadget.graph, gn_box_representation(n), gn_labeling(n)
    else:
        n = _need(args, "n")
        if n < 1:
            raise UsageError("--n must be positive")
        g, m1, m2 = build_k2n(n)
        rep = from_models([m1, m2])
        lab = {v: i for i, v in enumerate(g.sorted_vertices())}
    files = []
    if args.out is not None:
        files = [_write(args, write_edge_list(g), ".el"),
                 _write(args, json.dumps({str(v): lab[v] for v in sorted(lab)}) + "\n", ".labeling.json"),
                 _write(args, json.dumps(rep.to_json(), indent=1) + "\n", ".rep.json")]
    out.payload = {"kind": kind, "n": g.n, "m": g.m, "files": files}
    if args.out is None:
        out.payload.update(graph=write_edge_list(g), labeling={str(v): lab[v] for v in sorted(lab)},
                           rep=rep.to_json())
    out.lines.append(f"{kind}: {g.n} vertices, {g.m} edges")
    out.lines += [f"wrote {f}" for f in files]
    return EXIT_OK


def cmd_verify(args, out: _Out) -> int:
    g = _load_graph(args)
    rep = _load_rep(args)
    verdict = verify(g, rep)
    out.payload = {"ok": verdict.ok, "pair": list(verdict.pair) if verdict.pair else None,
                   "kind": verdict.kind, "dimension": verdict.dimension}
    if verdict:
        out.lines.append("representation is valid")
        return EXIT_OK
    where = f" (separated in dimension {verdict.dimension})" if verdict.dimension is not None else ""
    out.lines.append(f"invalid: pair {verdict.pair} is {verdict.kind}{where}")
    return EXIT_NO


def cmd_render_svg(args, out: _Out) -> int:
    svg = render_svg(_load_rep(args))
    path = _write(args, svg)
    out.payload = {"out": path}
    if path is None:
        sys.stdout.write(svg)
        out.payload = None
    else:
        out.lines.append(f"wrote {path}")
    return EXIT_OK


def cmd_stab(args, out: _Out) -> int:
    rep = _load_rep(args)
    subset = rep.vertices if args.subset is None else [int(t) for t in args.subset.split(",") if t]
    missing = set(subset) - rep.vertices
    if missing:
        raise GraphError(f"subset vertices {sorted(missing)} not in the representation")
    dim, point, count = stab_analysis(rep, subset)
    out.payload = {"dimension": dim, "point": point, "count": count}
    out.lines.append(f"{count} intervals of the subset contain {point} in dimension {dim}")
    return EXIT_OK


COMMANDS = {
    "exact": cmd_exact,
    "recognize": cmd_recognize,
    "kernelize": cmd_kernelize,
    "fpt-solve": cmd_fpt_solve,
    "pw-approx": cmd_pw_approx,
    "gadget": cmd_gadget,
    "verify": cmd_verify,
    "render-svg": cmd_render_svg,
    "stab": cmd_stab,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--graph", metavar="FILE", help="edge-list file")
    common.add_argument("--pd", metavar="FILE", help="path decomposition, one bag per line")
    common.add_argument("--rep", metavar="FILE", help="box representation JSON")
    common.add_argument("--dmax", type=int, default=None)
    common.add_argument("--d", type=int, default=None)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--threshold-override", type=int, default=None,
                        help="class-size threshold for kernel trimming (unsound)")
    common.add_argument("--subset", default=None, help="comma-separated vertex ids for stab")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="FILE", default=None)
    common.add_argument("--threads", type=int, default=None,
                        help="accepted for interface compatibility; work runs on one thread")
    parser = _Parser(prog="boxkit", description="Boxicity toolkit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "gadget":
            p.add_argument("kind", choices=["block", "gn", "k2n"])
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("boxkit: a subcommand is required")
        out = _Out(args)
        code = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE
    except OSError as exc:
        print(f"boxkit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GraphError, InvalidDecomposition, InvalidRepresentation, KernelTooLarge,
            ValueError, KeyError) as exc:
        print(f"boxkit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if out.payload is not None or out.lines:
        out.emit()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
