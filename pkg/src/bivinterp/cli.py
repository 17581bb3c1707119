"""Command-line front end.  ``main(argv)`` returns the exit code:
0 on success, 1 on a domain error, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import serialize as ser
from .berzolari_radon import br_chain, random_br_steps
from .errors import DomainError
from .hbasis import hbasis_error_monomials, reduce
from .lattices import (
    factorizable_hbasis,
    generalized_principal_lattice,
    gpl_hbasis,
    natural_lattice,
    natural_lattice_hbasis,
    random_gpl,
    random_natural_lattice,
)
from .maximal_line import column_line_detect, geometric_maximal_lines, witness_matrix
from .nodes import dim_pi, is_poised, lagrange_basis
from .serialize import MalformedInputError
from .sweep import gasca_maeztu_sweep
from .syzygy import reconstruct_hbasis, signed_minors, syzygy_matrix


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInputError(message)


def _read(path: str):
    text = sys.stdin.read() if path == "-" else _read_file(path)
    return ser.loads(text)


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedInputError(f"cannot read {path}: {e.strerror}") from None


def _json_arg(value: str):
    """Inline JSON or a path to a JSON file."""
    try:
        is_file = Path(value).is_file()
    except OSError:
        is_file = False
    return _read(value) if is_file else ser.loads(value)


def _infer_degree(count: int) -> int:
    n = 0
    while dim_pi(n) < count:
        n += 1
    if dim_pi(n) != count:
        raise DomainError(f"{count} nodes is not dim Pi_n for any n; pass --degree")
    return n


def _nodes_and_degree(args):
    Y = ser.nodes_from_json(_read(args.input))
    n = args.degree if args.degree is not None else _infer_degree(len(Y))
    if n < 0:
        raise DomainError("degree must be nonnegative")
    return Y, n


def _hbasis_input(args):
    """An H-basis document, or a node set whose error-monomial basis is used."""
    doc = _read(args.input)
    if isinstance(doc, dict) and "elements" in doc:
        return ser.hbasis_from_json(doc)
    Y = ser.nodes_from_json(doc)
    n = args.degree if args.degree is not None else _infer_degree(len(Y))
    return hbasis_error_monomials(Y, n)


def cmd_poised(args):
    Y, n = _nodes_and_degree(args)
    return {"poised": is_poised(Y, n), "degree": n}


def cmd_lagrange(args):
    Y, n = _nodes_and_degree(args)
    return {"degree": n, "nodes": Y, "lagrange": lagrange_basis(Y, n)}


def cmd_hbasis(args):
    Y, n = _nodes_and_degree(args)
    if args.method == "factorizable":
        H = factorizable_hbasis(Y, n)
    else:
        H = hbasis_error_monomials(Y, n)
    return {"hbasis": H}


def cmd_reduce(args):
    H = _hbasis_input(args)
    p = ser.poly_from_json(_json_arg(args.poly))
    r = reduce(p, H)
    return {"degree": H.degree, "coefficients": list(r.coefficients), "remainder": r.remainder}


def cmd_syzygy(args):
    H = _hbasis_input(args)
    return {"degree": H.degree, "hbasis": H, "syzygy": syzygy_matrix(H)}


def cmd_minors(args):
    H = _hbasis_input(args)
    S = syzygy_matrix(H)
    rec = reconstruct_hbasis(S, H)
    return {"degree": H.degree, "signed_minors": signed_minors(S), "w": rec.w}


def cmd_maximal_lines(args):
    Y, n = _nodes_and_degree(args)
    if not is_poised(Y, n):
        raise DomainError(f"node set is not poised for degree {n}")
    out = {"degree": n}
    if args.method in ("geometric", "both"):
        out["geometric"] = [
            {"line": inc.line, "count": inc.count, "nodes": inc.nodes_on_line}
            for inc in geometric_maximal_lines(Y, n)
        ]
    if args.method in ("syzygy", "both"):
        S = syzygy_matrix(hbasis_error_monomials(Y, n))
        out["syzygy"] = [{"column": j, "line": k} for j, k in column_line_detect(S)]
    return out


def cmd_witness(args):
    Y, n = _nodes_and_degree(args)
    K = ser.line_from_json(_json_arg(args.line))
    G, W = witness_matrix(Y, n, K)
    return {"degree": n, "line": K, "hbasis": G, "syzygy": W}


def cmd_lattice(args):
    rng = random.Random(args.seed)
    if args.kind == "natural":
        if args.lines:
            ext = _json_arg(args.extend) if args.extend else None
            spec = ser.natural_spec_from_json(_json_arg(args.lines), ext)
        else:
            spec = random_natural_lattice(_need_degree(args), rng)
        n = spec.degree
        Y, L = natural_lattice(spec, n)
        out = {"degree": n, "lines": list(spec.lines), "nodes": Y}
        if args.with_bases:
            out["lagrange"] = L
            out["hbasis"] = natural_lattice_hbasis(spec, n)
        return out
    if args.pencils:
        spec = ser.gpl_spec_from_json(_json_arg(args.pencils))
        n = args.degree if args.degree is not None else min(len(p) for p in spec.pencils) - 1
    else:
        n = _need_degree(args)
        spec = random_gpl(n, rng)
    Y, L = generalized_principal_lattice(spec, n)
    out = {"degree": n, "pencils": [list(p[: n + 1]) for p in spec.pencils], "nodes": Y}
    if args.with_bases:
        out["lagrange"] = L
        out["hbasis"] = gpl_hbasis(spec, n, 0)
    return out


def _need_degree(args) -> int:
    if args.degree is None or args.degree < 0:
        raise MalformedInputError("--degree is required when no spec file is given")
    return args.degree


def cmd_br(args):
    if args.input:
        steps = ser.steps_from_json(_read(args.input))
    else:
        steps = random_br_steps(_need_degree(args), random.Random(args.seed))
    chain = br_chain(steps)
    out = {
        "degree": chain.degree,
        "steps": [{"line": s.k, "points": s.points} for s in chain.steps],
        "nodes": chain.nodes,
    }
    if args.with_bases:
        out["lagrange"] = chain.basis
    return out


def cmd_gm_sweep(args):
    report = gasca_maeztu_sweep(
        range(args.min_degree, args.max_degree + 1),
        trials=args.trials,
        seed=args.seed,
        workers=args.workers,
    )
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--format", choices=["json", "pretty"], default="json")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="bivinterp", description="Exact bivariate interpolation, H-bases and syzygies.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def nodes_cmd(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", help="node set JSON ('-' for stdin)")
        sp.add_argument("--degree", type=int)
        sp.set_defaults(func=func)
        return sp

    nodes_cmd("poised", cmd_poised, "test poisedness")
    nodes_cmd("lagrange", cmd_lagrange, "fundamental polynomials")
    nodes_cmd("hbasis", cmd_hbasis, "H-basis of the vanishing ideal").add_argument(
        "--method", choices=["error-monomials", "factorizable"], default="error-monomials"
    )
    nodes_cmd("reduce", cmd_reduce, "reduce a polynomial modulo an H-basis").add_argument(
        "--poly", required=True, help="polynomial JSON (inline or file)"
    )
    nodes_cmd("syzygy", cmd_syzygy, "linear syzygy matrix")
    nodes_cmd("minors", cmd_minors, "signed maximal minors of the syzygy matrix")
    nodes_cmd("maximal-lines", cmd_maximal_lines, "maximal lines").add_argument(
        "--method", choices=["geometric", "syzygy", "both"], default="both"
    )
    nodes_cmd("witness", cmd_witness, "witness syzygy matrix for a maximal line").add_argument(
        "--line", required=True, help="line [a0, a1, a2] (inline JSON or file)"
    )

    lat = sub.add_parser("lattice", parents=[common], help="natural or generalized principal lattices")
    lat.add_argument("kind", choices=["natural", "gpl"])
    lat.add_argument("--lines")
    lat.add_argument("--extend")
    lat.add_argument("--pencils")
    lat.add_argument("--degree", type=int)
    lat.add_argument("--with-bases", action="store_true")
    lat.set_defaults(func=cmd_lattice)

    br = sub.add_parser("br", parents=[common], help="Berzolari-Radon chain")
    br.add_argument("input", nargs="?", help="chain JSON; random chain when omitted")
    br.add_argument("--degree", type=int)
    br.add_argument("--with-bases", action="store_true")
    br.set_defaults(func=cmd_br)

    gm = sub.add_parser("gm-sweep", parents=[common], help="empirical Gasca-Maeztu sweep")
    gm.add_argument("--min-degree", type=int, default=1)
    gm.add_argument("--max-degree", type=int, default=5)
    gm.add_argument("--trials", type=int, default=1000)
    gm.add_argument("--workers", type=int, default=1)
    gm.set_defaults(func=cmd_gm_sweep)
    return p


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = None
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except MalformedInputError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except DomainError as e:
        error = {"error": type(e).__name__, "message": str(e)}
        _emit(json.dumps(error, ensure_ascii=False) + "\n", getattr(args, "out", None))
        return 1
    _emit(ser.dumps(result, pretty=args.format == "pretty"), args.out)
    if args.command == "gm-sweep" and result["total_violations"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
