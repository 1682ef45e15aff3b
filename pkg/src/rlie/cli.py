"""Command-line front end.

Every verb builds a report with the command echo, a digest of each input
file, structured results, certificates and budget notes.  ``--machine``
prints the report as JSON; otherwise a short text rendering is printed.

Exit codes: 0 success or verdict true, 1 verdict false, 2 usage error,
3 capacity exceeded, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import catalog, laws, schunck
from .cohomology import cohomology_dim, quotient_action
from .envelopes import minimal_p_envelope
from .errors import CapacityError, ConsistencyError, HypothesisViolation, InputError
from .ff_linalg import Subspace, unit_vec
from .lie_core import (
    LieAlgebra, adjoint, center, frattini, is_nilpotent, is_soluble, series, trivial_rep,
)
from .restricted import (
    RestrictedAlgebra, enumerate_p_subalgebras, is_primitive, is_restrictable, p_chief_series,
    p_frattini, p_quotient, p_subalgebra, restricted_from_json, restrictable_images,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAPACITY, EXIT_CONSISTENCY = 0, 1, 2, 3, 4
DEFAULT_BUDGET = 10 ** 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# input and formatting
# ---------------------------------------------------------------------------

def load_algebra(path: str):
    """(algebra, digest); RestrictedAlgebra when a p-operation is known."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path} does not describe an algebra")
    digest = hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()
    return restricted_from_json(data), digest


def _lie(A) -> LieAlgebra:
    return A.algebra if isinstance(A, RestrictedAlgebra) else A


def _need_restricted(A, what: str) -> RestrictedAlgebra:
    if isinstance(A, RestrictedAlgebra):
        return A
    if not is_restrictable(A):
        raise InputError(f"{what}: input is not restrictable and no p-operation was provided")
    raise InputError(f"{what}: input has no p-operation; add p_images to the file")


def _space(L: LieAlgebra, S: Subspace) -> str:
    return L.fmt_space(S)


def _labels_space(L: LieAlgebra, text: str) -> Subspace:
    names = [s.strip() for s in text.split(",") if s.strip()]
    for s in names:
        if s not in L.labels:
            raise InputError(f"unknown basis label {s!r}")
    return Subspace.span([unit_vec(L.dim, L.labels.index(s)) for s in names], L.dim, L.field)


def _render(value, indent: int = 0) -> list:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_render(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {v}")
        return out
    if isinstance(value, list):
        out = []
        for v in value:
            if isinstance(v, (dict, list)):
                sub = _render(v, indent + 1)
                out.append(f"{pad}- {sub[0].strip()}")
                out.extend(sub[1:])
            else:
                out.append(f"{pad}- {v}")
        return out
    return [f"{pad}{value}"]


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_inspect(args, rep) -> int:
    A = _input(args, rep)
    L = _lie(A)
    res = {
        "field": f"GF({L.field.q})",
        "dim": L.dim,
        "labels": list(L.labels),
        "abelian": L.is_abelian(),
        "nilpotent": is_nilpotent(L),
        "soluble": is_soluble(L),
        "derived_series_dims": [S.dim for S in series(L, "derived").terms],
        "center": _space(L, center(L)),
        "restricted": isinstance(A, RestrictedAlgebra),
    }
    if isinstance(A, RestrictedAlgebra):
        res["p_images"] = {L.labels[i]: L.fmt(v) for i, v in enumerate(A.images)}
        if res["soluble"] and L.dim:
            soc = is_primitive(A)
            res["primitive"] = soc is not None
            if soc is not None:
                res["socle"] = _space(L, soc)
    else:
        res["restrictable"] = is_restrictable(L)
    rep["results"] = res
    return EXIT_OK


def cmd_chief_series(args, rep) -> int:
    A = _input(args, rep)
    R = _need_restricted(A, "chief-series")
    L = R.algebra
    if not is_soluble(L):
        raise HypothesisViolation("[p]-chief series are computed for soluble algebras")
    cs = p_chief_series(R)
    rep["results"] = {
        "terms": [_space(L, T) for T in cs.terms],
        "factors": [{"upper": _space(L, f.upper), "lower": _space(L, f.lower), "dim": f.dim,
                     "null": f.null, "central": f.central, "atom": f.atom, "kind": f.kind}
                    for f in cs.factors],
    }
    return EXIT_OK


def cmd_frattini(args, rep) -> int:
    A = _input(args, rep)
    L = _lie(A)
    phi = frattini(L, args.budget)
    res = {"frattini": _space(L, phi)}
    if isinstance(A, RestrictedAlgebra):
        maxs = enumerate_p_subalgebras(A, "maximal", args.budget)
        psi = p_frattini(A, args.budget)
        res["p_frattini"] = _space(L, psi)
        res["p_frattini_contains_frattini"] = phi <= psi
        rep["certificates"]["maximal_p_subalgebras"] = [_space(L, M) for M in maxs]
    rep["results"] = res
    return EXIT_OK


def _class(args) -> schunck.ClassDescriptor:
    return schunck.make_class(args.cls)


def cmd_projector(args, rep) -> int:
    A = _input(args, rep)
    R = _need_restricted(A, "projector")
    C = _class(args)
    L = R.algebra
    U = schunck.projector(R, C)
    rep["results"] = {"class": C.name, "projector": _space(L, U), "dim": U.dim}
    try:
        subs = enumerate_p_subalgebras(R, budget=args.budget)
    except CapacityError:
        rep["budget"].append("covering certificate skipped: [p]-subalgebra lattice over budget")
        return EXIT_OK
    covering = schunck.is_covering(R, U, C, subs)
    rep["certificates"]["covering"] = covering
    rep["certificates"]["p_subalgebras_scanned"] = len(subs)
    if not covering:
        raise ConsistencyError("projector is not a covering subalgebra")
    return EXIT_OK


def cmd_residual(args, rep) -> int:
    A = _input(args, rep)
    R = _need_restricted(A, "residual")
    C = _class(args)
    L = R.algebra
    K = schunck.residual(R, C)
    Q = R if K.is_zero() else p_quotient(R, K)[0]
    rep["results"] = {"class": C.name, "residual": _space(L, K), "dim": K.dim}
    rep["certificates"]["quotient_in_class"] = bool(C.test(Q))
    return EXIT_OK


def cmd_cohomology(args, rep) -> int:
    A = _input(args, rep)
    L = _lie(A)
    if args.ideal:
        I = _labels_space(L, args.ideal)
        Q, _pi, act = quotient_action(L, I)
        what = f"H^{args.n}(L/I, I) with I = {_space(L, I)}"
    elif args.module == "socle":
        R = _need_restricted(A, "cohomology --module socle")
        soc = is_primitive(R) if is_soluble(L) else None
        if soc is None:
            raise HypothesisViolation("input is not primitive, so it has no socle to use")
        Q, _pi, act = quotient_action(L, soc)
        what = f"H^{args.n}(L/soc, soc) with soc = {_space(L, soc)}"
    else:
        Q = L
        act = adjoint(L) if args.module == "adjoint" else trivial_rep(L, 1)
        what = f"H^{args.n}(L, {args.module})"
    rep["results"] = {"cohomology": what, "n": args.n, "dim": cohomology_dim(Q, act, args.n)}
    return EXIT_OK


def cmd_envelope(args, rep) -> int:
    A = _input(args, rep)
    U = _lie(A)
    env = minimal_p_envelope(U)
    T = env.target
    G = T.algebra
    rep["results"] = {
        "source_dim": U.dim,
        "envelope_dim": T.dim,
        "labels": list(G.labels),
        "embedding": {U.labels[i]: G.fmt(env.embed(unit_vec(U.dim, i))) for i in range(U.dim)},
        "p_images": {G.labels[i]: G.fmt(v) for i, v in enumerate(T.images)},
        "minimal": env.minimal,
    }
    rep["certificates"] = {k: bool(v) for k, v in env.certificates.items()}
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(T.to_json(), fh, indent=1, sort_keys=True)
        rep["results"]["written"] = args.output
    if not all(env.certificates.values()):
        raise ConsistencyError("envelope certificate failed")
    return EXIT_OK


def cmd_membership(args, rep) -> int:
    A = _input(args, rep)
    C = _class(args)
    if not isinstance(A, RestrictedAlgebra):
        imgs = restrictable_images(A)
        if imgs is None:
            raise InputError("membership: input is not restrictable and no p-operation was provided")
        if not C.schunck:
            raise InputError(f"membership in {C.name} depends on the p-operation; provide p_images")
        A = RestrictedAlgebra(A, imgs, check=False)
        rep["budget"].append("no p-operation given; used the canonical one "
                             "(Schunck class membership does not depend on the choice)")
    m = schunck.membership(A, C)
    rep["results"] = {"class": C.name, "member": m.verdict}
    if m.failing is not None:
        rep["certificates"]["failing_primitive_kernel"] = _space(A.algebra, m.failing)
    if m.note:
        rep["certificates"]["method"] = m.note
    return EXIT_OK if m.verdict else EXIT_FALSE


def cmd_catalog(args, rep) -> int:
    if args.action == "list":
        rep["results"] = {"examples": catalog.list_examples()}
        return EXIT_OK
    if not args.key:
        raise InputError("catalog build needs an example key")
    params = {}
    if args.p is not None:
        params["p"] = args.p
    for item in args.param or []:
        k, _, v = item.partition("=")
        if not _:
            raise InputError(f"--param expects key=value, got {item!r}")
        params[k] = int(v) if v.lstrip("-").isdigit() else v
    obj = catalog.build_example(args.key, **params)
    data = obj.to_json()
    rep["results"] = {"key": args.key, "params": params}
    if hasattr(obj, "dim"):
        rep["results"]["dim"] = obj.dim
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
        rep["results"]["written"] = args.output
    else:
        rep["results"]["json"] = data
    return EXIT_OK


def _suite_results(rep, reports) -> int:
    rep["results"] = {"suites": [r.to_json() for r in reports]}
    for r in reports:
        rep["budget"].extend(f"{r.name}: {n}" for n in r.notes)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FALSE


def cmd_check_laws(args, rep) -> int:
    names = [args.suite] if args.suite else list(laws.SUITES)
    return _suite_results(rep, [laws.run_suite(n, args.p, args.max_dim) for n in names])


def cmd_reproduce(args, rep) -> int:
    names = ["facts"] + ([] if args.facts_only else list(laws.SUITES))
    return _suite_results(rep, [laws.run_suite(n) for n in names])


def _input(args, rep):
    A, digest = load_algebra(args.file)
    rep["inputs"][args.file] = "sha256:" + digest
    return A


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS keeps a subcommand from resetting options given before the verb
    common.add_argument("--machine", action="store_true", default=argparse.SUPPRESS,
                        help="print the report as JSON")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help=f"cap on enumeration sizes (default {DEFAULT_BUDGET})")
    top = _Parser(prog="rlie", description=__doc__.splitlines()[0], parents=[common])
    sub = top.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help, file=True):
        p = sub.add_parser(name, help=help, parents=[common])
        if file:
            p.add_argument("file", help="algebra JSON file")
        p.set_defaults(fn=fn)
        return p

    verb("inspect", cmd_inspect, "basic invariants")
    verb("chief-series", cmd_chief_series, "a [p]-chief series with factor types")
    verb("frattini", cmd_frattini, "Frattini and [p]-Frattini subalgebras")
    verb("projector", cmd_projector, "a projector for a class").add_argument(
        "--class", dest="cls", required=True)
    verb("residual", cmd_residual, "the residual for a formation").add_argument(
        "--class", dest="cls", required=True)
    p = verb("cohomology", cmd_cohomology, "cohomology dimensions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--module", choices=("adjoint", "trivial", "socle"), default="adjoint")
    p.add_argument("--ideal", help="comma separated labels of an abelian ideal I: H^n(L/I, I)")
    verb("envelope", cmd_envelope, "minimal p-envelope").add_argument("-o", "--output")
    verb("membership", cmd_membership, "class membership verdict").add_argument(
        "--class", dest="cls", required=True)
    p = verb("catalog", cmd_catalog, "named examples", file=False)
    p.add_argument("action", choices=("list", "build"))
    p.add_argument("key", nargs="?")
    p.add_argument("--p", type=int)
    p.add_argument("--param", action="append", help="extra builder parameter key=value")
    p.add_argument("-o", "--output")
    p = verb("check-laws", cmd_check_laws, "run law suites", file=False)
    p.add_argument("--suite", choices=sorted(laws.SUITES))
    p.add_argument("--p", type=int)
    p.add_argument("--max-dim", type=int)
    p = verb("reproduce-paper", cmd_reproduce, "recorded facts and every law suite", file=False)
    p.add_argument("--facts-only", action="store_true", help="only the recorded facts")
    return top


def run(argv=None):
    """(exit code, report dict) for a command line."""
    argv = list(sys.argv[1:] if argv is None else argv)
    rep = {"command": " ".join(["rlie"] + argv), "inputs": {}, "results": {},
           "certificates": {}, "budget": [], "error": None}
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        args.budget = getattr(args, "budget", DEFAULT_BUDGET)
        if args.budget < 1:
            raise UsageError("--budget must be positive")
        rep["budget"].append(f"enumeration budget {args.budget}")
        code = args.fn(args, rep)
    except UsageError as exc:
        rep["error"], code = f"usage: {exc}", EXIT_USAGE
    except (InputError, HypothesisViolation) as exc:
        rep["error"], code = str(exc), EXIT_USAGE
    except CapacityError as exc:
        rep["error"], code = f"capacity: {exc}", EXIT_CAPACITY
    except ConsistencyError as exc:
        rep["error"], code = f"consistency: {exc}", EXIT_CONSISTENCY
    rep["exit_code"] = code
    rep["timing"] = round(time.perf_counter() - t0, 3)
    return code, rep


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    code, rep = run(argv)
    if "--machine" in argv:
        print(json.dumps(rep, indent=1, sort_keys=True))
    else:
        for line in _render({k: v for k, v in rep.items() if v not in (None, {}, [])}):
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
