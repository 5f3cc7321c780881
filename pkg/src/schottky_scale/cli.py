"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors
(bad flags, malformed graph files, exceeded budgets).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .cover_colors import refine_dart_colors
from .enumeration import DEFAULT_MAX_RANK, certificate, enumerate_rank_keys
from .multigraph import GraphError, canonical_key, graph_document, graph_from_key, read_graph
from .scale_engine import oracle_scale, ramification_profile, scale_hyperbolic
from .schottky import element_pairs, schottky_basis, spanning_trees
from .volumes import build_bs, build_cycle_gadget, build_rose, prime_spectrum, svol_report, verify_explicit_bounds

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    rank: int | None = None
    graph: str | None = None
    tree: int | None = None
    all_trees: bool = False
    element: int | None = None
    all_elements: bool = False
    oracle: int | None = None
    out: str | None = None
    format: str = "json"
    family: str | None = None
    s: int | None = None
    jobs: int = 1
    allow_large: bool = False


class UsageError(Exception):
    pass


def _envelope(config: RunConfig, result) -> dict:
    return {"tool": "schottky-scale", "version": __version__, "config": asdict(config), "result": result}


def _tsv(header, rows) -> str:
    lines = ["\t".join(header)]
    lines.extend("\t".join(str(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def _text_preamble(config):
    return f"# schottky-scale {__version__} {json.dumps(asdict(config), sort_keys=False)}\n"


def _need_rank(config):
    if config.rank is None:
        raise UsageError(f"{config.command} requires --rank")
    if config.rank < 2:
        raise UsageError("--rank must be at least 2")
    if config.rank > DEFAULT_MAX_RANK and not config.allow_large:
        raise UsageError(f"--rank above {DEFAULT_MAX_RANK} needs --allow-large")
    return config.rank


def _load_graph(config):
    if config.graph is None:
        raise UsageError(f"{config.command} requires --graph")
    try:
        return read_graph(config.graph)
    except OSError as exc:
        raise UsageError(f"cannot read {config.graph}: {exc}") from None


def _select_trees(config, g):
    trees = spanning_trees(g)
    if config.all_trees:
        return list(enumerate(trees))
    idx = config.tree if config.tree is not None else 0
    if not 0 <= idx < len(trees):
        raise UsageError(f"tree index {idx} out of range (graph has {len(trees)} spanning trees)")
    return [(idx, trees[idx])]


# -- subcommands -------------------------------------------------------------------


def cmd_enumerate(config):
    n = _need_rank(config)
    keys = enumerate_rank_keys(n, config.jobs, config.allow_large)
    cert = certificate(n, config.jobs, allow_large=config.allow_large).to_dict()
    graphs = [graph_from_key(k) for k in keys]
    if config.out:
        out = Path(config.out)
        out.mkdir(parents=True, exist_ok=True)
        width = len(str(len(graphs)))
        for i, g in enumerate(graphs):
            if config.format == "json":
                (out / f"graph_{i:0{width}d}.json").write_text(json.dumps(graph_document(g)) + "\n")
            else:
                (out / f"graph_{i:0{width}d}.txt").write_text(g.to_text())
        (out / "certificate.json").write_text(json.dumps(_envelope(config, cert), indent=2) + "\n")
    result = {"certificate": cert,
              "graphs": [dict(graph_document(g), key=k.hex()) for g, k in zip(graphs, keys)]}
    text = _text_preamble(config) + _tsv(
        ["index", "vertices", "edges", "degrees", "key"],
        [(i, g.vertex_count, g.edge_count, ",".join(map(str, g.degrees())), k.hex())
         for i, (g, k) in enumerate(zip(graphs, keys))])
    text += _tsv(list(cert), [list(cert.values())])
    return result, text, cert["within_bounds"]


def cmd_basis(config):
    g = _load_graph(config)
    key = canonical_key(g)
    rows, records = [], []
    for idx, tree in _select_trees(config, g):
        basis = schottky_basis(g, tree, graph_key=key)
        for el in basis.elements:
            records.append({"tree_index": idx, "tree": list(tree), "edge": el.edge, "dart": el.dart,
                            "translation_length": el.translation_length, "axis": list(el.axis.darts)})
            rows.append((idx, el.edge, el.dart, el.translation_length, " ".join(map(str, el.axis.darts))))
    result = {"graph_key": key.hex(), "elements": records}
    text = _text_preamble(config) + _tsv(["tree", "edge", "dart", "translation_length", "axis"], rows)
    return result, text, True


def cmd_colors(config):
    g = _load_graph(config)
    col = refine_dart_colors(g)
    result = {
        "rounds": col.rounds,
        "color_count": col.color_count,
        "darts": [{"dart": d, "tail": g.tail(d), "head": g.head(d), "color": c} for d, c in enumerate(col.colors)],
        "profiles": {str(c): {str(k): v for k, v in p.items()} for c, p in col.profiles.items()},
    }
    text = _text_preamble(config) + _tsv(["dart", "tail", "head", "color"],
                                         [(d, g.tail(d), g.head(d), c) for d, c in enumerate(col.colors)])
    text += _tsv(["color", "continuations"],
                 [(c, ",".join(f"{k}x{v}" for k, v in p.items())) for c, p in col.profiles.items()])
    return result, text, True


def _element_record(g, col, el, periods):
    prof = ramification_profile(g, col, el.axis)
    sv = scale_hyperbolic(prof)
    rec = {"edge": el.edge, "dart": el.dart, "translation_length": el.translation_length,
           "axis": list(el.axis.darts), "profile": list(prof.q), "scale": str(sv.value),
           "factorization": {str(p): k for p, k in sv.factors.items()}}
    if periods is not None:
        orc = oracle_scale(g, col, el.axis, periods)
        rec["oracle"] = {"indices": [str(x) for x in orc.indices], "ratio": str(orc.ratio),
                         "stabilized": orc.stabilized, "agrees": orc.stabilized and orc.ratio == sv.value}
    return rec


def cmd_scale(config):
    g = _load_graph(config)
    col = refine_dart_colors(g)
    if config.element is not None and config.all_elements:
        raise UsageError("--element and --all are mutually exclusive")
    ok = True
    records, rows = [], []
    for idx, tree in _select_trees(config, g):
        pairs = element_pairs(g, tree)
        chosen = range(len(pairs))
        if config.element is not None:
            if not 0 <= config.element < len(pairs):
                raise UsageError(f"element index {config.element} out of range ({len(pairs)} elements)")
            chosen = [config.element]
        for i in chosen:
            fwd, inv = pairs[i]
            rec = _element_record(g, col, fwd, config.oracle)
            rec_inv = _element_record(g, col, inv, config.oracle)
            rec.update(tree_index=idx, element=i, inverse=rec_inv)
            if config.oracle is not None:
                ok = ok and rec["oracle"]["agrees"] and rec_inv["oracle"]["agrees"]
            records.append(rec)
            rows.append((idx, i, fwd.edge, fwd.translation_length, ",".join(map(str, rec["profile"])),
                         rec["scale"], rec_inv["scale"],
                         rec["oracle"]["ratio"] if config.oracle is not None else ""))
    result = {"graph_key": canonical_key(g).hex(), "elements": records}
    text = _text_preamble(config) + _tsv(
        ["tree", "element", "edge", "translation_length", "profile", "scale", "inverse_scale", "oracle_ratio"], rows)
    return result, text, ok


def cmd_svol(config):
    n = _need_rank(config)
    rep = svol_report(n, config.jobs)
    d = rep.to_dict()
    text = _text_preamble(config) + _tsv(
        ["rank", "graphs", "svol_schottky", "lower", "upper", "in_bracket", "rose_volume", "conjecture_nonnormative"],
        [(n, len(rep.entries), rep.svol_schottky, *rep.bracket, rep.in_bracket, rep.rose_volume, f"{rep.conjecture:.6g}")])
    text += _tsv(["key", "vertices", "edges", "trees", "volume"],
                 [(e.key.hex(), e.vertex_count, e.edge_count, len(e.trees), e.volume) for e in rep.entries])
    lo, _ = rep.bracket
    return d, text, rep.in_bracket and rep.rose_volume == lo


def cmd_primes(config):
    n = _need_rank(config)
    spec = prime_spectrum(n, config.jobs)
    text = _text_preamble(config) + _tsv(["rank", "primes", "expected", "matches"],
                                         [(n, ",".join(map(str, sorted(spec.primes))),
                                           ",".join(map(str, sorted(spec.expected))), spec.matches)])
    text += _tsv(["prime", "witness"], [(p, json.dumps(w)) for p, w in sorted(spec.witnesses.items())])
    return spec.to_dict(), text, spec.matches


def cmd_verify(config):
    n = _need_rank(config)
    rep = verify_explicit_bounds(n)
    text = _text_preamble(config) + _tsv(["check", "passed", "detail"],
                                         [(c.name, "PASS" if c.passed else "FAIL", c.detail) for c in rep.checks])
    return rep.to_dict(), text, rep.passed


def cmd_build(config):
    n = _need_rank(config)
    try:
        if config.family == "rose":
            g = build_rose(n)
        elif config.family == "bs":
            if config.s is None:
                raise UsageError("--family bs requires --s")
            g = build_bs(config.s, n)
        elif config.family == "cycle":
            g = build_cycle_gadget(n)
        else:
            raise UsageError("--family must be rose, bs or cycle")
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    if config.out:
        Path(config.out).write_text(g.to_text() if config.format == "text" else json.dumps(graph_document(g)) + "\n")
    return dict(graph_document(g), key=canonical_key(g).hex()), g.to_text(), True


COMMANDS = {
    "enumerate": cmd_enumerate,
    "basis": cmd_basis,
    "colors": cmd_colors,
    "scale": cmd_scale,
    "svol": cmd_svol,
    "primes": cmd_primes,
    "verify": cmd_verify,
    "build": cmd_build,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schottky-scale", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
        return p

    p = common(sub.add_parser("enumerate", help="list B(n) up to isomorphism"))
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--out", help="directory for one graph file per class plus certificate.json")
    p.add_argument("--allow-large", action="store_true")

    p = common(sub.add_parser("basis", help="Schottky basis records of a graph"))
    p.add_argument("--graph", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--tree", type=int)
    g.add_argument("--all-trees", action="store_true")

    p = common(sub.add_parser("colors", help="stable dart colouring"))
    p.add_argument("--graph", required=True)

    p = common(sub.add_parser("scale", help="scales of basis elements"))
    p.add_argument("--graph", required=True)
    p.add_argument("--tree", type=int, default=0)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--element", type=int)
    g.add_argument("--all", dest="all_elements", action="store_true")
    p.add_argument("--oracle", type=int, metavar="PERIODS", help="also run the path-counting oracle")

    for name, text in (("svol", "Schottky scale volume of rank n"),
                       ("primes", "prime spectrum of rank n"),
                       ("verify", "check the explicit bounds at rank n")):
        p = common(sub.add_parser(name, help=text))
        p.add_argument("--rank", type=int, required=True)
        p.add_argument("--allow-large", action="store_true")

    p = common(sub.add_parser("build", help="write a graph of an explicit family"))
    p.add_argument("--family", choices=["rose", "bs", "cycle"], required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--out")
    return parser


def parse_config(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**fields)


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if config.jobs < 1:
        print("error: --jobs must be positive", file=stderr)
        return EXIT_USAGE
    try:
        result, text, ok = COMMANDS[config.command](config)
    except (UsageError, GraphError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    if config.format == "json":
        stdout.write(json.dumps(_envelope(config, result), indent=2) + "\n")
    else:
        stdout.write(text)
    return EXIT_OK if ok else EXIT_FAILED


def main(argv=None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
