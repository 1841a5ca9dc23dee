"""Command-line front end.

Exit status is 0 on success, 1 on a domain error and 2 when the input (or
the command line) cannot be parsed.  Errors are printed as
``{"error": name, "message": ..., "payload": {...}}``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path
from typing import Sequence

from .algebra import Decomposition, render
from .complex import SimplicialComplex, glue, skeleton
from .decomposer import (
    ADJOIN_FACE,
    Trace,
    closed_form_skeleton,
    decompose,
    decompose_glued,
    decompose_wedge_construction,
)
from .errors import NotShifted, ParseError, UnknownSubcommand, WedgeCalcError
from .homology import bbcg, max_vertices_from_env, reduced_homology
from .io import parse_complex
from .shifted import DEFAULT_PERM_LIMIT, find_shifted_order, is_shifted, shifted_complexes
from .specializer import moment_angle, poincare_coefficients, render_polynomial, specialize, sphere_assignment

COMMANDS = (
    "check-shifted",
    "decompose",
    "bbcg",
    "homology",
    "glue-decompose",
    "wedge-decompose",
    "skeleton",
    "moment-angle",
    "specialize",
    "verify",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # pragma: no cover - argparse plumbing
        raise ParseError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_source(path: str | None, inline: str | None) -> str:
    if (path is None) == (inline is None):
        raise ParseError("give exactly one input: a path (or '-') or --inline")
    if inline is not None:
        return inline
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str | None, inline: str | None = None) -> SimplicialComplex:
    return parse_complex(_read_source(path, inline))


def _emit(args, text: str, data: object) -> None:
    if args.format == "json":
        print(json.dumps(data))
    else:
        print(text)


def _face(f: Sequence[int] | None) -> str:
    return "(" + ",".join(map(str, f)) + ")" if f else "()"


def render_trace(trace: Trace) -> str:
    """Number the records that change the state as steps; others are notes."""
    lines = []
    step = 0
    for rec in trace:
        if not rec.subtracted and not rec.added:
            lines.append(f"  [{rec.complex_id}] {rec.action} {_face(rec.face)}: {render(rec.state_after)}")
            continue
        step += 1
        head = f"Step {step} [{rec.complex_id}] {rec.action}"
        if rec.action == ADJOIN_FACE:
            head += f" {_face(rec.face)}"
        elif rec.face:
            head += f" {_face(rec.face)}"
        lines.append(head)
        if rec.subtracted:
            lines.append(f"  remove: {render(rec.subtracted)}")
        lines.append(f"  add:    {render(rec.added)}")
        lines.append(f"  state:  {render(rec.state_after)}")
    return "\n".join(lines)


def _oracle_diff(d: Decomposition, K: SimplicialComplex, args) -> dict:
    ref = bbcg(K, max_vertices=args.max_vertices).decomposition
    if ref == d:
        return {"agree": True}
    missing = {s: ref[s] - d[s] for s, _ in ref.items() if ref[s] > d[s]}
    extra = {s: d[s] - ref[s] for s, _ in d.items() if d[s] > ref[s]}
    return {
        "agree": False,
        "only_in_bbcg": Decomposition(missing).to_json(),
        "only_in_decompose": Decomposition(extra).to_json(),
    }


def _report_decomposition(args, d: Decomposition, K: SimplicialComplex | None, trace: Trace | None) -> int:
    data: dict = {"decomposition": d.to_json()}
    lines = []
    if trace is not None:
        data["trace"] = trace.to_json()
        lines.append(render_trace(trace))
    lines.append(render(d))
    status = 0
    if getattr(args, "check_bbcg", False) and K is not None:
        diff = _oracle_diff(d, K, args)
        data["bbcg"] = diff
        lines.append("bbcg: agrees" if diff["agree"] else "bbcg: DIFFERS " + json.dumps(diff))
        status = 0 if diff["agree"] else 1
    _emit(args, "\n".join(lines), data)
    return status


# -- subcommands ------------------------------------------------------------


def cmd_check_shifted(args) -> int:
    K = _load(args.input, args.inline)
    if args.search:
        n = K.n_vertices
        order = find_shifted_order(K, args.max_perms)
        total = math.factorial(n)
        if order is None:
            _emit(args, f"not shifted under any of {total} orders", {"shifted": False, "orders": total})
        else:
            _emit(
                args,
                "shifted under order " + ",".join(map(str, order)),
                {"shifted": True, "order": list(order)},
            )
        return 0
    order = args.order or list(K.vertices)
    verdict = is_shifted(K, order)
    if verdict:
        text = "shifted under order " + ",".join(map(str, order))
        data = {"shifted": True, "order": list(order)}
    else:
        sigma, nu, nu_prime = verdict.witness
        text = (
            f"not shifted under order {','.join(map(str, order))}: "
            f"face {_face(sigma)}, replacing {nu} by {nu_prime} leaves K"
        )
        data = {
            "shifted": False,
            "order": list(order),
            "witness": {"sigma": list(sigma), "nu": nu, "nu_prime": nu_prime},
        }
    _emit(args, text, data)
    return 0


def cmd_decompose(args) -> int:
    K = _load(args.input, args.inline)
    order = args.order
    if args.search_order and order is None and not is_shifted(K):
        found = find_shifted_order(K)
        if found is None:
            raise NotShifted("complex is not shifted under any vertex order; run `wedgecalc bbcg` instead")
        order = list(found)
    try:
        d, trace = decompose(K, order=order)
    except NotShifted as exc:
        exc.payload.setdefault("hint", "run `wedgecalc bbcg` for the suspended decomposition")
        raise
    return _report_decomposition(args, d, K, trace if args.trace else None)


def cmd_bbcg(args) -> int:
    K = _load(args.input, args.inline)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = bbcg(
            K,
            max_vertices=args.max_vertices,
            assume_shifted=args.assume_shifted,
            keep_subcomplexes=args.show_subcomplexes,
        )
    data = {
        "decomposition": res.decomposition.to_json(),
        "validity": res.validity,
        "shifted_order": list(res.shifted_order) if res.shifted_order else None,
        "shifted_source": res.shifted_source,
        "warnings": list(res.warnings),
    }
    lines = [render(res.decomposition), f"validity: {res.validity}"]
    lines += [f"warning: {w}" for w in res.warnings]
    if args.show_subcomplexes:
        data["subcomplexes"] = [{"I": list(I), **prof.to_json()} for I, prof in res.subcomplexes]
        for I, prof in res.subcomplexes:
            betti = {d: b for d, b in prof.reduced_betti.items() if b}
            tors = {d: t for d, t in prof.torsion.items() if t}
            desc = "contractible" if not betti and not tors else f"betti {betti}" + (f" torsion {tors}" if tors else "")
            lines.append(f"  I={_face(I)}: {desc}")
    _emit(args, "\n".join(lines), data)
    return 0


def cmd_homology(args) -> int:
    K = _load(args.input, args.inline)
    prof = reduced_homology(K)
    parts = [f"H~_{d} = Z^{b}" for d, b in sorted(prof.reduced_betti.items()) if b]
    parts += [f"torsion in H~_{d}: {list(t)}" for d, t in sorted(prof.torsion.items()) if t]
    _emit(args, "\n".join(parts) or "acyclic", prof.to_json())
    return 0


def cmd_glue(args) -> int:
    K1 = _load(args.first)
    K2 = _load(args.second)
    tau = args.tau or []
    G = glue(K1, K2, tau)
    d1, _ = decompose(K1)
    d2, _ = decompose(K2)
    d = decompose_glued(d1, d2, K1.vertices, K2.vertices, tau)
    return _report_decomposition(args, d, G, None)


def cmd_wedge(args) -> int:
    K = _load(args.input, args.inline)
    d, KJ, label_map = decompose_wedge_construction(K, args.J)
    status = _report_decomposition(args, d, KJ, None)
    if args.format == "text":
        print("labels: " + ", ".join(f"{v}->{_face(new)}" for v, new in sorted(label_map.items())))
    return status


def cmd_skeleton(args) -> int:
    labels = range(1, args.n + 1)
    K = skeleton(labels, args.k)
    d, _ = decompose(K)
    ref = closed_form_skeleton(labels, args.k)
    data = {"decomposition": d.to_json(), "closed_form_agrees": d == ref}
    text = render(d) + ("\nclosed form: agrees" if d == ref else "\nclosed form: DIFFERS")
    _emit(args, text, data)
    return 0 if d == ref else 1


def cmd_moment_angle(args) -> int:
    K = _load(args.input, args.inline)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = moment_angle(K, suspended_only_ok=args.suspended_only_ack)
    text = (
        "spheres: " + (", ".join(f"{m}·S^{d}" if m > 1 else f"S^{d}" for d, m in res.spheres.items()) or "none")
        + f"\npoincare: {res.poincare_str()}\nvalidity: {res.validity}"
    )
    _emit(args, text, res.to_json())
    return 0


def cmd_specialize(args) -> int:
    raw = _read_source(args.input, args.inline)
    try:
        data = json.loads(raw)
    except json.JSONDecodeError:
        data = None
    if isinstance(data, list):
        d = Decomposition.from_json(data)
        labels = sorted(d.labels())
        validity = "given"
    else:
        K = parse_complex(raw)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = moment_angle(K, suspended_only_ok=args.suspended_only_ack)
        d, validity = res.decomposition, res.validity
        labels = list(K.vertices)
    dims = sphere_assignment(labels, args.dims if args.dims is not None else 1)
    spheres = specialize(d, dims)
    poly = render_polynomial(poincare_coefficients(spheres))
    out = {
        "spheres": [{"dim": k, "mult": m} for k, m in spheres.items()],
        "poincare": poly,
        "validity": validity,
    }
    text = (
        "spheres: " + (", ".join(f"{m}·S^{k}" if m > 1 else f"S^{k}" for k, m in spheres.items()) or "none")
        + f"\npoincare: {poly}\nvalidity: {validity}"
    )
    _emit(args, text, out)
    return 0


def cmd_verify(args) -> int:
    rows = []
    failures = []
    for n in range(1, args.max_n + 1):
        complexes = shifted_complexes(n)
        bad = 0
        for K in complexes:
            d, _ = decompose(K)
            if d != bbcg(K).decomposition:
                bad += 1
                failures.append([list(f) for f in K.maximal_faces])
        rows.append({"n": n, "complexes": len(complexes), "mismatches": bad})
    text = "\n".join(f"n={r['n']}: {r['complexes']} shifted complexes, {r['mismatches']} mismatches" for r in rows)
    ok = not failures
    text += "\nall agree" if ok else f"\n{len(failures)} mismatches"
    _emit(args, text, {"results": rows, "ok": ok, "failures": failures})
    return 0 if ok else 1


# -- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wedgecalc", description="Wedge decompositions of polyhedral products (CX,X)^K.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, needs_input: bool = True) -> None:
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if needs_input:
            sp.add_argument("input", nargs="?", help="complex file (JSON or text), or - for stdin")
            sp.add_argument("--inline", help="complex given directly on the command line")

    sp = sub.add_parser("check-shifted", help="test the shift condition")
    common(sp)
    sp.add_argument("--order", type=_int_list)
    sp.add_argument("--search", action="store_true", help="search all vertex orders")
    sp.add_argument("--max-perms", type=int, default=DEFAULT_PERM_LIMIT)
    sp.set_defaults(func=cmd_check_shifted)

    sp = sub.add_parser("decompose", help="inductive decomposition of a shifted complex")
    common(sp)
    sp.add_argument("--trace", action="store_true")
    sp.add_argument("--check-bbcg", action="store_true")
    sp.add_argument("--order", type=_int_list)
    sp.add_argument("--search-order", action="store_true")
    sp.add_argument("--max-vertices", type=int)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("bbcg", help="decomposition from full-subcomplex homology")
    common(sp)
    sp.add_argument("--show-subcomplexes", action="store_true")
    sp.add_argument("--max-vertices", type=int)
    sp.add_argument("--assume-shifted", action="store_true")
    sp.set_defaults(func=cmd_bbcg)

    sp = sub.add_parser("homology", help="reduced integral homology")
    common(sp)
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("glue-decompose", help="decompose two shifted complexes glued along a face")
    common(sp, needs_input=False)
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--tau", type=_int_list, default=[])
    sp.add_argument("--check-bbcg", action="store_true")
    sp.add_argument("--max-vertices", type=int)
    sp.set_defaults(func=cmd_glue)

    sp = sub.add_parser("wedge-decompose", help="decompose a simplicial wedge K(J)")
    common(sp)
    sp.add_argument("--J", dest="J", type=_int_list, required=True)
    sp.add_argument("--check-bbcg", action="store_true")
    sp.add_argument("--max-vertices", type=int)
    sp.set_defaults(func=cmd_wedge)

    sp = sub.add_parser("skeleton", help="decompose the k-skeleton of the simplex on 1..n")
    common(sp, needs_input=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_skeleton)

    sp = sub.add_parser("moment-angle", help="moment-angle complex as a wedge of spheres")
    common(sp)
    sp.add_argument("--suspended-only-ack", action="store_true")
    sp.set_defaults(func=cmd_moment_angle)

    sp = sub.add_parser("specialize", help="evaluate at spheres X_i = S^{n_i}")
    common(sp)
    sp.add_argument("--dims", type=_int_list)
    sp.add_argument("--suspended-only-ack", action="store_true")
    sp.set_defaults(func=cmd_specialize)

    sp = sub.add_parser("verify", help="compare decompose with bbcg on every small shifted complex")
    common(sp, needs_input=False)
    sp.add_argument("--max-n", type=int, default=5)
    sp.set_defaults(func=cmd_verify)
    return p


def _error(exc: WedgeCalcError, fmt: str) -> None:
    obj = exc.to_dict()
    if fmt == "json":
        print(json.dumps(obj, default=str))
    else:
        print(f"error: {obj['error']}: {obj['message']}", file=sys.stderr)
        if obj.get("payload"):
            print(json.dumps(obj["payload"], default=str), file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if "--format=json" in argv or any(
        a == "--format" and b == "json" for a, b in zip(argv, argv[1:])
    ) else "text"
    parser = build_parser()
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        _error(UnknownSubcommand(f"unknown subcommand {argv[0]!r}", known=list(COMMANDS)), fmt)
        return 2
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help()
            return 2
        if getattr(args, "max_vertices", None) is None and hasattr(args, "max_vertices"):
            args.max_vertices = max_vertices_from_env()
        return args.func(args)
    except ParseError as exc:
        _error(exc, fmt)
        return 2
    except WedgeCalcError as exc:
        _error(exc, fmt)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
