"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 search
budget exceeded.  Every file-producing command also writes a sidecar
point-name map (`<output>.map`) and a JSON run manifest
(`<output>.manifest.json`) so runs are reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .constructions import (
    ConstructionError,
    LabelingError,
    MooreInput,
    UnsupportedEmbeddingError,
    base_sts,
    bose,
    direct_product,
    double,
    embed_subsystem,
    moore,
    pg_sts,
    rigid_sts_search,
    skolem,
)
from .fano import ClassificationError, classify_fano, enumerate_fano
from .params import ParameterError, ParameterSolution, solve_order
from .pstss import (
    PstssError,
    attach_gadgets,
    boolean_space,
    corollary46_build,
    corollary47_build,
    replace_triples,
)
from .search import (
    BudgetExceededError,
    are_isomorphic,
    automorphism_group,
)
from .perm import cycle_string
from .system import (
    FormatError,
    TripleSystem,
    read_system,
    validate_pstss,
    validate_sts,
    write_system,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_VALIDATION):
        super().__init__(message)
        self.code = code


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_outputs(system, args, out: str, names: list | None = None) -> None:
    write_system(system, out)
    if names is not None:
        with open(out + ".map", "w") as fh:
            for i, name in enumerate(names):
                fh.write(f"point {i} = {name}\n")
    manifest = {
        "tool": "stslab",
        "version": __version__,
        "subcommand": args.command,
        "args": {k: v for k, v in vars(args).items() if k not in ("command", "func")},
        "outputs": {out: _digest(out)},
    }
    if names is not None:
        manifest["outputs"][out + ".map"] = _digest(out + ".map")
    with open(out + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load(path: str):
    try:
        return read_system(path)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    except FormatError as e:
        raise CliError(str(e))


def _load_sts(path: str) -> TripleSystem:
    ts = _load(path)
    if not isinstance(ts, TripleSystem):
        raise CliError(f"{path}: expected a full system (header 'sts')")
    return ts


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    kind = args.kind
    names = None
    try:
        if kind in ("bose", "skolem", "base"):
            fn = {"bose": bose, "skolem": skolem, "base": base_sts}[kind]
            system = fn(args.n)
        elif kind == "pg":
            system = pg_sts(args.dim)
            names = [f"vector {i + 1:b}" for i in range(system.n)]
        elif kind == "boolean":
            system = boolean_space(args.dim).system()
            names = [f"subset {i + 1:b}" for i in range(system.n)]
        elif kind == "double":
            y = _load_sts(args.input)
            system = double(y)
            names = [f"y:{i}" for i in range(y.n)]
            names += [f"y1:{i}" for i in range(y.n)]
            names += ["*"]
        elif kind == "product":
            a = _load_sts(args.input)
            b = _load_sts(args.other)
            system = direct_product(a, b)
            names = [f"({i},{j})" for i in range(a.n) for j in range(b.n)]
        elif kind == "moore":
            ysys, xpts = embed_subsystem(args.x, args.y)
            inp = MooreInput.build(ysys, xpts, base_sts(args.v))
            system = moore(inp)
            names = inp.point_names()
        else:  # pragma: no cover - argparse restricts choices
            raise CliError(f"unknown construction {kind}", EXIT_USAGE)
    except (ConstructionError, LabelingError, UnsupportedEmbeddingError) as e:
        raise CliError(str(e))
    report = validate_sts(system)
    if not report.ok:
        raise CliError("constructed system failed validation: " + report.violations[0])
    _write_outputs(system, args, args.output, names)
    print(f"wrote {args.output}: {system.n} points, {system.n_triples} triples")
    return EXIT_OK


def cmd_verify(args) -> int:
    system = _load(args.path)
    report = (
        validate_sts(system)
        if isinstance(system, TripleSystem)
        else validate_pstss(system)
    )
    if report.ok:
        print(f"{args.path}: ok ({system.n} points, {system.n_triples} triples)")
        return EXIT_OK
    for v in report.violations:
        print(f"{args.path}: {v}")
    return EXIT_VALIDATION


def cmd_aut(args) -> int:
    system = _load(args.path)
    group = automorphism_group(system, budget=args.budget)
    print(f"order {group.order}")
    for g in group.generators:
        print(f"generator {cycle_string(g)}")
    return EXIT_OK


def cmd_iso(args) -> int:
    a = _load(args.a)
    b = _load(args.b)
    cert = are_isomorphic(a, b, budget=args.budget)
    if cert.isomorphic:
        print("isomorphic")
        print("mapping " + " ".join(map(str, cert.mapping)))
    else:
        print("not isomorphic")
    return EXIT_OK


def cmd_classify_fano(args) -> int:
    try:
        ysys, xpts = embed_subsystem(args.x, args.y)
        inp = MooreInput.build(ysys, xpts, base_sts(args.v))
    except (ConstructionError, LabelingError, UnsupportedEmbeddingError) as e:
        raise CliError(str(e))
    u = moore(inp)
    for pts in enumerate_fano(u):
        try:
            c = classify_fano(inp, pts)
        except ClassificationError as e:
            raise CliError(str(e))
        detail = ""
        if c.kind == "type31":
            detail = f" x={c.x_point} v_triple={c.v_triple} a={c.a_values}"
        elif c.kind == "in_yv":
            detail = f" v={c.v}"
        elif c.kind == "vsf":
            detail = f" s={c.s_points} f={c.f}"
        print("fano " + " ".join(map(str, pts)) + f" kind={c.kind}{detail}")
    return EXIT_OK


def cmd_solve_params(args) -> int:
    if args.check:
        with open(args.check) as fh:
            text = fh.read()
        try:
            sol = ParameterSolution.from_text(text)
        except ParameterError as e:
            raise CliError(str(e))
        problems = sol.check()
        if problems:
            for p in problems:
                print(p)
            return EXIT_VALIDATION
        print("certificate ok")
        return EXIT_OK
    if args.u is None or args.v1 is None or args.v2 is None:
        raise CliError("need --u, --v1, --v2 (or --check)", EXIT_USAGE)
    try:
        sol = solve_order(args.u, args.v1, args.v2)
    except ParameterError as e:
        raise CliError(str(e))
    sys.stdout.write(sol.to_text())
    return EXIT_OK


def cmd_embed_pstss(args) -> int:
    try:
        if args.mode == "theorem13":
            v = _load(args.input)
            attached = attach_gadgets(v)
            n_prime = attached.system.n
            if n_prime > args.np_cap:
                raise CliError(
                    f"decorated system has {n_prime} points; the Boolean space "
                    f"would need 2^{n_prime} - 1 (cap {args.np_cap})"
                )
            rep = replace_triples(boolean_space(n_prime), attached.system, cap=args.np_cap)
            names = [f"subset {i + 1:b}" for i in range(rep.system.n)]
            _write_outputs(rep.system, args, args.output, names)
            print(
                f"wrote {args.output}: {rep.system.n} points, "
                f"{rep.system.n_triples} triples ({len(rep.added)} switched in)"
            )
        elif args.mode == "cor46":
            w = _load_sts(args.input)
            v = _load_sts(args.other)
            res = corollary46_build(v, w)
            names = [
                f"w:{i}" if i < w.n else f"gadget:{i}" for i in range(res.wprime.system.n)
            ] + [f"v:{i}" for i in range(v.n)]
            _write_outputs(res.combined, args, args.output, names)
            print(f"wrote {args.output}: {res.combined.n} points (pstss)")
        elif args.mode == "cor47":
            v = _load_sts(args.input)
            try:
                v1 = {int(s) for s in args.v1.split(",")} if args.v1 else set()
            except ValueError:
                raise CliError("--v1 must be a comma-separated point list", EXIT_USAGE)
            res = corollary47_build(v, v1)
            names = [f"v:{i}" for i in range(v.n)]
            names += [f"{x}'" for x in res.v1_points]
            names += ["z"]
            _write_outputs(res.system, args, args.output, names)
            print(f"wrote {args.output}: {res.system.n} points (pstss)")
        else:  # pragma: no cover
            raise CliError(f"unknown mode {args.mode}", EXIT_USAGE)
    except PstssError as e:
        raise CliError(str(e))
    return EXIT_OK


def cmd_rigid_search(args) -> int:
    try:
        system = rigid_sts_search(args.n, seed=args.seed, max_attempts=args.attempts)
    except ConstructionError as e:
        raise CliError(str(e))
    _write_outputs(system, args, args.output, None)
    print(f"wrote {args.output}: rigid system on {system.n} points (seed {args.seed})")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stslab",
        description="Construct, verify, and analyze (partial) Steiner triple systems.",
    )
    parser.add_argument("--version", action="version", version=f"stslab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a system and write it out")
    ps = p.add_subparsers(dest="kind", required=True)
    for kind in ("bose", "skolem", "base"):
        q = ps.add_parser(kind)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--output", required=True)
    q = ps.add_parser("pg")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--output", required=True)
    q = ps.add_parser("boolean")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--output", required=True)
    q = ps.add_parser("double")
    q.add_argument("--input", required=True)
    q.add_argument("--output", required=True)
    q = ps.add_parser("product")
    q.add_argument("--input", required=True)
    q.add_argument("--other", required=True)
    q.add_argument("--output", required=True)
    q = ps.add_parser("moore")
    q.add_argument("--x", type=int, required=True)
    q.add_argument("--y", type=int, required=True)
    q.add_argument("--v", type=int, required=True)
    q.add_argument("--output", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="validate a system file")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("aut", help="exact automorphism group")
    p.add_argument("path")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("iso", help="decide isomorphism of two systems")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("classify-fano", help="classify 7-point subsystems of a product")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.set_defaults(func=cmd_classify_fano)

    p = sub.add_parser("solve-params", help="realize a target order arithmetically")
    p.add_argument("--u", type=int)
    p.add_argument("--v1", type=int)
    p.add_argument("--v2", type=int)
    p.add_argument("--check", help="re-verify a certificate file")
    p.set_defaults(func=cmd_solve_params)

    p = sub.add_parser("embed-pstss", help="rigidifying embedding pipelines")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=("theorem13", "cor46", "cor47"), required=True)
    p.add_argument("--other", help="second system file (cor46)")
    p.add_argument("--v1", help="comma-separated subsystem points (cor47)")
    p.add_argument("--np-cap", type=int, default=20, dest="np_cap")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_embed_pstss)

    p = sub.add_parser("rigid-search", help="find a system with no symmetry")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=200)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_rigid_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
