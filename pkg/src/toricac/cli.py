"""Command-line interface: ``toricac <subcommand> <file.fan> [options]``."""
import argparse
import sys

from . import config
from .divisor import anticanonical, polytope_of, positivity
from .errors import ToricError
from .io import (diagram_to_dot, diagram_to_json, fmt_divisor, fmt_fan, fmt_q, fmt_vec,
                 fmt_vertices, load_fan)
from .mmp import redundant_mmp
from .pipeline import (check_fano_type, enumerate_models, q_factorialize, theorem_b_diagram,
                       weak_fano_certificate)
from .singularities import LogPair, classify_pair
from .zariski import anticanonical_model, good_zariski, sqm_to_zariski


def _load(args):
    doc = load_fan(args.file)
    return doc, doc.fan()


def _divisor(doc, fan, name):
    return anticanonical(fan) if name in (None, "-K") else doc.divisor(name, fan)


def _positivity_lines(D, label):
    pos = positivity(D)
    flags = ", ".join(f"{k}={'yes' if getattr(pos, k) else 'no'}"
                      for k in ("q_cartier", "nef", "big", "ample", "semiample"))
    out = [f"{label} = {fmt_divisor(D)}", f"  {flags}"]
    if pos.cartier_index is not None:
        out.append(f"  Cartier index {pos.cartier_index}")
    return out


def _zariski_lines(D, label):
    gz = good_zariski(D)
    if gz is None:
        return [f"good Zariski decomposition of {label}: absent on this fan "
                "(the fan does not refine the normal fan of its polytope)"]
    out = [f"good Zariski decomposition of {label}:",
           f"  P = {fmt_divisor(gz.P)}", f"  N = {fmt_divisor(gz.N)}"]
    for m, hp, hd in gz.sections_equal:
        if hp is None:
            out.append(f"  h0({m}P) = h0({m}D): implied by equal polytopes (count skipped)")
        else:
            out.append(f"  h0({m}P) = h0({m}D) = {hp}")
    return out


def cmd_analyze(args):
    doc, X = _load(args)
    lines = [f"fan: {fmt_fan(X)}",
             f"  complete={'yes' if X.complete else 'no'}, simplicial={'yes' if X.simplicial else 'no'}"]
    mK = anticanonical(X)
    lines += _positivity_lines(mK, "-K")
    poly = polytope_of(mK)
    lines.append(f"P_-K vertices: {fmt_vertices(poly)}")
    if not poly.is_full_dimensional():
        lines.append("-K is not big: no anticanonical model")
        return lines
    lines += _zariski_lines(mK, "-K")
    Y, _ = anticanonical_model(X)
    lines.append(f"anticanonical model: {fmt_fan(Y)}")
    return lines


def cmd_model(args):
    _, X = _load(args)
    Y, mKY = anticanonical_model(X)
    return [f"anticanonical model: {fmt_fan(Y)}",
            f"P_-K vertices: {fmt_vertices(polytope_of(mKY))}",
            f"-K_Y ample: {'yes' if positivity(mKY).ample else 'no'}"]


def cmd_zariski(args):
    doc, X = _load(args)
    D = _divisor(doc, X, args.divisor)
    return _zariski_lines(D, args.divisor or "-K")


def cmd_discrepancies(args):
    doc, X = _load(args)
    if args.boundary:
        pair = LogPair(X, doc.divisor(args.boundary, X))
    else:
        pair = LogPair.trivial(X)
    rep = classify_pair(pair)
    lines = [f"class: {rep.cls}"]
    if rep.witnesses:
        lines.append("exceptional divisors with discrepancy <= 0:")
        lines += [f"  {fmt_vec(v)}: {fmt_q(a)}" for v, a in rep.witnesses]
    else:
        lines.append("no exceptional divisor has discrepancy <= 0")
    if rep.min_witness is not None:
        v, a = rep.min_witness
        lines.append(f"minimal witness: {fmt_vec(v)} with discrepancy {fmt_q(a)}")
    return lines


def cmd_mmp(args):
    _, X = _load(args)
    trace, Xn = redundant_mmp(X)
    lines = [f"redundant MMP: {len(trace)} step(s)"]
    for k, s in enumerate(trace.steps, 1):
        gone = sorted(set(s.before.rays) - set(s.after.rays))
        what = ("removes " + ", ".join(fmt_vec(v) for v in gone)) if gone else "rays unchanged"
        lines.append(f"  step {k}: {s.kind}, circuit "
                     + " ".join(fmt_vec(v) for v in s.wall_class.circuit_key()) + f", {what}")
        if args.trace:
            lines.append(f"    before: {fmt_fan(s.before)}")
            lines.append(f"    after:  {fmt_fan(s.after)}")
            lines.append(f"    P_-K preserved: {fmt_vertices(s.model_polytope_after)}")
    lines.append(f"non-redundant model: {fmt_fan(Xn)}")
    return lines


def cmd_diagram(args):
    _, X = _load(args)
    d = theorem_b_diagram(X)
    lines = [f"shared P_-K vertices: {fmt_vertices(d.polytopes['Y'])}"]
    for name, fan in d.nodes.items():
        lines.append(f"  {name}: {len(fan.rays)} rays, {len(fan.cones)} cones")
    for a in d.arrows:
        checks = ", ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in a.certificate.items())
        lines.append(f"  {a.name}: {a.source} -> {a.target} ({a.kind}; {checks})")
    for k, s in enumerate(d.trace.steps, 1):
        lines.append(f"  r step {k}: {s.kind}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(diagram_to_dot(d))
        lines.append(f"wrote {args.dot}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(diagram_to_json(d))
        lines.append(f"wrote {args.json}")
    return lines


def _describe_boundary(cert):
    pair = cert.pair
    gp = pair.general_part
    terms = [f"{fmt_q(a)}·D{fmt_vec(v)}" for v, a in zip(pair.fan.rays, pair.boundary.coeffs) if a]
    base = "-K" if all(a == 1 for a in gp.base_divisor.coeffs) else "P"
    mult = f"-{gp.multiple}K" if base == "-K" else f"{gp.multiple}P"
    terms.append(f"{fmt_q(gp.coefficient)}·|{mult}| general member")
    return " + ".join(terms)


def cmd_fano_type(args):
    _, X = _load(args)
    verdict, cert = check_fano_type(X)
    if not verdict:
        return [f"FANO TYPE: no; {cert}"]
    lines = [f"FANO TYPE: yes; certificate Δ = {_describe_boundary(cert)}"]
    b = cert.boundary
    lines.append(f"  checks: N<1={'ok' if b.n_below_one else 'FAILED'}, "
                 f"(X,N) klt={'ok' if b.n_pair_klt else 'FAILED'}, "
                 f"P semiample={'ok' if b.p_semiample else 'FAILED'}, "
                 f"K+Δ~0={'ok' if b.principal is not None else 'FAILED'}")
    return lines


def cmd_weak_fano(args):
    _, X = _load(args)
    Xp, _ = sqm_to_zariski(q_factorialize(X))
    wf = weak_fano_certificate(Xp)
    lines = []
    if Xp != X:
        lines.append(f"computed on the small modification {fmt_fan(Xp)}")
    lines += [f"N = {fmt_divisor(wf.N)}", f"(X, N) lc: {'yes' if wf.lc else 'no'}",
              f"-(K+N) nef and big: {'yes' if wf.nef_big else 'no'}"]
    return lines


def cmd_enumerate_models(args):
    _, Y = _load(args)
    models = enumerate_models(Y, max_dim=args.max_dim, allow_3d=args.max_dim >= 3)
    lines = [f"{len(models)} Q-factorial model(s) with this anticanonical model:"]
    lines += [f"  {fmt_fan(m)}" for m in models]
    return lines


COMMANDS = {
    "analyze": (cmd_analyze, "positivity of -K, its Zariski decomposition and the model"),
    "model": (cmd_model, "anticanonical model"),
    "zariski": (cmd_zariski, "good Zariski decomposition of a divisor (default -K)"),
    "discrepancies": (cmd_discrepancies, "singularity class and low discrepancies"),
    "mmp": (cmd_mmp, "redundant MMP over the anticanonical model"),
    "diagram": (cmd_diagram, "factorization diagram through the anticanonical model"),
    "fano-type": (cmd_fano_type, "Fano-type decision with a boundary certificate"),
    "weak-fano": (cmd_weak_fano, "lc weak Fano certificate from the negative part"),
    "enumerate-models": (cmd_enumerate_models, "Q-factorial models sharing this anticanonical model"),
}


def build_parser():
    p = argparse.ArgumentParser(prog="toricac", description="Exact toric anticanonical-model toolkit.")
    p.add_argument("--max-box-volume", type=int, help="lattice-point enumeration limit")
    p.add_argument("--iteration-limit", type=int, help="redundant MMP step limit")
    p.add_argument("--flip-search-depth", type=int, help="depth of explicit flop searches")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="fan document (.fan, JSON)")
        if name == "zariski":
            sp.add_argument("--divisor", help="name of a divisor in the document")
        elif name == "discrepancies":
            sp.add_argument("--boundary", help="name of a boundary divisor in the document")
        elif name == "mmp":
            sp.add_argument("--trace", action="store_true", help="print every intermediate fan")
        elif name == "diagram":
            sp.add_argument("--dot", metavar="PATH", help="write Graphviz DOT here")
            sp.add_argument("--json", metavar="PATH", help="write JSON here")
        elif name == "enumerate-models":
            sp.add_argument("--max-dim", type=int, default=2, help="largest dimension to enumerate")
    return p


def run_command(argv, out=None, err=None):
    """Run one CLI invocation; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    saved = config.settings
    config.settings = config.from_env()
    config.configure(max_box_volume=args.max_box_volume, iteration_limit=args.iteration_limit,
                     flip_search_depth=args.flip_search_depth)
    try:
        lines = COMMANDS[args.command][0](args)
    except ToricError as e:
        print(f"toricac {args.command}: {type(e).__name__}: {e}", file=err)
        return 1
    except OSError as e:
        print(f"toricac {args.command}: {e}", file=err)
        return 1
    finally:
        config.settings = saved
    for line in lines:
        print(line, file=out)
    return 0


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
