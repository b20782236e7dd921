"""Command-line front end.

Exit status: 0 on success, 1 on domain errors or failed validation,
2 on usage errors (argparse).  Output is deterministic: identical arguments
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import chern, moduli
from .enumeration import EnumerationProblem, enumerate_solutions
from .lattice import CohClass, signature
from .manifold import PRESET_NAMES, FourManifoldModel, resolve, validate

VERBS = (
    "info",
    "enumerate-c1",
    "ac-chern",
    "gc-chern",
    "orbit",
    "log-transform",
    "certify-infinite",
    "certify-finite",
    "validate",
)


class CommandError(ValueError):
    pass


def format_class(c: CohClass) -> str:
    """``3a``, ``2a - 2b``; coordinate tuples beyond rank 2."""
    if len(c) > 2:
        return "(" + ", ".join(str(v) for v in c) + ")"
    terms = []
    for coef, name in zip(c, chern.GENERATOR_NAMES):
        if coef == 0:
            continue
        mag = "" if abs(coef) == 1 else str(abs(coef))
        sign = "-" if coef < 0 else "+"
        terms.append((sign, f"{mag}{name}"))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _parse_class(text: str, rank: int) -> CohClass:
    try:
        coords = [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise CommandError(f"cannot parse class {text!r}; expected comma-separated integers") from None
    if len(coords) != rank:
        raise CommandError(f"class {text!r} has {len(coords)} coordinates, manifold has b2 = {rank}")
    return CohClass(coords)


def _table(rows) -> list[str]:
    width = max(len(k) for k, _ in rows)
    return [f"{k.ljust(width)}  {v}" for k, v in rows]


def _form_type(M: FourManifoldModel) -> str:
    L = M.lattice
    if not L.is_nondegenerate:
        return "degenerate"
    s = signature(L)
    parity = "even" if L.is_even else "odd"
    if s.negative == 0:
        kind = "positive definite"
    elif s.positive == 0:
        kind = "negative definite"
    else:
        kind = "indefinite"
    return f"{parity}, {kind}"


def _opt(c) -> str:
    return "-" if c is None else format_class(c)


def cmd_info(M, args):
    L = M.lattice
    data = {
        "manifold": M.name,
        "b2": L.rank,
        "euler": M.euler,
        "sigma": M.sigma,
        "c1_squared": M.c1_squared,
        "form": _form_type(M),
        "determinant": L.determinant,
        "w2": M.w2.tolist(),
        "fiber": None if M.fiber is None else M.fiber.tolist(),
        "complex_c1": None if M.complex_c1 is None else M.complex_c1.tolist(),
    }
    text = _table(
        [
            ("manifold", M.name),
            ("b2", L.rank),
            ("euler", M.euler),
            ("sigma", M.sigma),
            ("3sigma+2chi", M.c1_squared),
            ("form", data["form"]),
            ("determinant", L.determinant),
            ("w2", format_class(M.w2)),
            ("fiber", _opt(M.fiber)),
            ("complex c1", _opt(M.complex_c1)),
        ]
    )
    return data, text


def cmd_enumerate(M, args):
    problem = EnumerationProblem(M.lattice, M.c1_squared, M.w2, args.window)
    res = enumerate_solutions(problem)
    data = {
        "manifold": M.name,
        "target": problem.target,
        "window": args.window,
        "searched_window": res.searched_window,
        "completeness": res.completeness,
        "count": len(res),
        "solutions": [c.tolist() for c in res],
        "infinitude_hint": None if res.infinitude_hint is None else res.infinitude_hint.tolist(),
    }
    rows = [
        ("manifold", M.name),
        ("target", f"c1^2 = {problem.target}"),
        ("completeness", res.completeness),
    ]
    if res.searched_window is not None:
        rows.append(("searched window", f"{res.searched_window} (requested {args.window})"))
    rows.append(("solutions", len(res)))
    if res.infinitude_hint is not None:
        rows.append(("isotropic hint", format_class(res.infinitude_hint)))
    text = _table(rows) + [f"  {format_class(c)}" for c in res]
    return data, text


def _chern_output(M, lst: chern.ChernList, label: str, extra=()):
    data = {
        "manifold": M.name,
        "completeness": lst.completeness,
        "searched_window": lst.searched_window,
        "count": len(lst),
        label: [d.to_json(M.lattice) for d in lst],
        **dict(extra),
    }
    rows = [("manifold", M.name), ("completeness", lst.completeness)]
    if lst.searched_window is not None:
        rows.append(("searched window", lst.searched_window))
    rows += [(k.replace("_", " "), v) for k, v in extra]
    rows.append(("count", len(lst)))
    text = _table(rows) + [f"  {chern.pretty(d, M.lattice)}" for d in lst]
    return data, text


def cmd_ac_chern(M, args):
    return _chern_output(M, chern.admissible_ac_chern(M, args.window), "chern")


def cmd_gc_chern(M, args):
    lst = chern.gc_admissible_chern(M, args.window)
    mod = len(chern.modulo_conjugation(lst.data))
    return _chern_output(M, lst, "chern", [("count_modulo_conjugation", mod)])


def _default_class(M) -> CohClass:
    return M.fiber if M.fiber is not None else M.w2


def _inv_json(inv: moduli.OrbitInvariants) -> dict:
    return {
        "square": inv.square,
        "divisibility": inv.divisibility,
        "characteristic": inv.characteristic,
        "primitive": inv.primitive,
    }


def _inv_rows(inv: moduli.OrbitInvariants):
    return [
        ("square", inv.square),
        ("divisibility", inv.divisibility),
        ("characteristic", str(inv.characteristic).lower()),
        ("primitive", str(inv.primitive).lower()),
    ]


def cmd_orbit(M, args):
    x = _parse_class(args.cls, M.rank) if args.cls else _default_class(M)
    inv = moduli.orbit_invariants(M.lattice, x)
    data = {"manifold": M.name, "class": x.tolist(), **_inv_json(inv)}
    rows = [("manifold", M.name), ("class", format_class(x))] + _inv_rows(inv)
    if args.against:
        y = _parse_class(args.against, M.rank)
        verdict = moduli.distinguish(M.lattice, x, y)
        data["against"] = y.tolist()
        data["against_invariants"] = _inv_json(moduli.orbit_invariants(M.lattice, y))
        data["verdict"] = verdict
        rows += [("against", format_class(y)), ("verdict", verdict)]
    return data, _table(rows)


def cmd_log_transform(M, args):
    K = moduli.log_transform_canonical(M, args.k)
    inv = moduli.orbit_invariants(M.lattice, K.type_change_class())
    data = {
        "manifold": M.name,
        "k": args.k,
        "c1K": K.c1K.tolist(),
        "type_change_class": K.type_change_class().tolist(),
        "c1_TM": (2 * K.c1K).tolist(),
        **_inv_json(inv),
    }
    rows = [
        ("manifold", M.name),
        ("k", args.k),
        ("c1(K)", format_class(K.c1K)),
        ("PD[Sigma]", format_class(K.type_change_class())),
        ("c1(TM+T*M)", format_class(2 * K.c1K)),
    ] + _inv_rows(inv)
    return data, _table(rows)


def cmd_certify_infinite(M, args):
    cert = moduli.infinite_components_certificate(M, args.kmax)
    data = cert.to_json()
    header = ["k", "divisibility", "square", "primitive", "characteristic", "c1K"]
    body = [
        [
            str(e.k),
            str(e.invariants.divisibility),
            str(e.invariants.square),
            str(e.invariants.primitive).lower(),
            str(e.invariants.characteristic).lower(),
            format_class(e.c1K),
        ]
        for e in cert.entries
    ]
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header) - 1)]
    lines = _table([("manifold", M.name), ("verdict", cert.verdict)])
    for r in [header] + body:
        lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "  " + r[-1])
    return data, lines


def cmd_certify_finite(M, args):
    cert = moduli.finiteness_certificate(M, args.window)
    data = cert.to_json()
    text = _table(
        [
            ("manifold", M.name),
            ("verdict", cert.verdict),
            ("completeness", cert.values.completeness),
            ("count", cert.count),
            ("count modulo conjugation", cert.count_modulo_conjugation),
        ]
    ) + [f"  {chern.pretty(d, M.lattice)}" for d in cert.values]
    return data, text


def cmd_validate(M, args):
    diag = validate(M)
    data = diag.to_json()
    rows = [(c.name, c.status + (f"  ({c.detail})" if c.detail else "")) for c in diag.checks]
    text = _table([("manifold", M.name)] + rows + [("result", "ok" if diag.ok else "FAILED")])
    return data, text


HANDLERS = {
    "info": cmd_info,
    "enumerate-c1": cmd_enumerate,
    "ac-chern": cmd_ac_chern,
    "gc-chern": cmd_gc_chern,
    "orbit": cmd_orbit,
    "log-transform": cmd_log_transform,
    "certify-infinite": cmd_certify_infinite,
    "certify-finite": cmd_certify_finite,
    "validate": cmd_validate,
}


def _positive(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcchern",
        description="Chern data of almost (generalized) complex structures on 4-manifolds.",
        epilog="MANIFOLD is a preset (" + ", ".join(PRESET_NAMES) + ") or a manifold-spec JSON file.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb in VERBS:
        p = sub.add_parser(verb)
        p.add_argument("manifold", metavar="MANIFOLD")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if verb in ("enumerate-c1", "ac-chern", "gc-chern", "certify-finite"):
            p.add_argument("--window", type=_positive, default=8)
        if verb == "certify-infinite":
            p.add_argument("--kmax", type=_positive, default=10)
        if verb == "orbit":
            p.add_argument("--class", dest="cls", help="comma-separated coordinates")
            p.add_argument("--against", help="second class to compare with")
        if verb == "log-transform":
            p.add_argument("--k", type=_positive, default=1)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        M = resolve(args.manifold)
        if args.verb not in ("info", "validate"):
            diag = validate(M)
            if not diag.ok:
                raise CommandError(
                    f"{M.name} fails model checks: {', '.join(diag.failed())} (run 'validate')"
                )
        data, text = HANDLERS[args.verb](M, args)
    except ValueError as e:
        print(f"error: {e}", file=err)
        return 1
    if args.format == "json":
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(str(line) for line in text) + "\n")
    if args.verb == "validate" and not data["ok"]:
        failed = [c["name"] for c in data["checks"] if c["status"] == "fail"]
        print(f"error: {M.name} fails model checks: {', '.join(failed)}", file=err)
        return 1
    return 0


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stderr.close()
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
