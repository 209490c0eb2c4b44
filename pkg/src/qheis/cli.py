"""Command-line surface: parse expressions, run the symbolic operations,
and drive the numeric lab, with text or schema-conforming JSON output.

Exit codes: 0 on success; 1 on domain errors (poles, bad q, stuck words,
non-convergence); 2 on syntax errors, reported with a 1-based column.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import algebra, expr, lie, rewrite, spectral
from .ratfun import PoleError, RatFun


def _finite(value: float) -> float:
    if not math.isfinite(value):
        raise ValueError(f"non-finite numeric output: {value!r}")
    return float(value)


def _element_payload(x) -> dict:
    return {"element": expr.element_json(x), "text": expr.element_text(x)}


def _free_element_json(fe: rewrite.FreeElement) -> dict:
    return {
        "words": [
            {"word": rewrite.word_str(w), "coeff": expr.ratfun_json(c)}
            for w, c in fe.sorted_terms()
        ]
    }


def _identity_report_json(r: lie.IdentityReport) -> dict:
    return {
        "identity": r.identity,
        "params": dict(r.params),
        "verdict": r.verdict,
        "difference": expr.element_json(r.difference),
        "lhs": expr.element_json(r.lhs),
        "rhs": expr.element_json(r.rhs),
    }


def _ket_payload(ki: lie.KetImage) -> dict:
    entries = []
    for target in ki.targets():
        entries.append(
            {
                "target": target,
                "scalars": [
                    {"coeff": expr.ratfun_json(s.coeff), "radicand": list(s.radicand)}
                    for s in ki.scalars(target)
                ],
            }
        )
    return {"entries": entries, "zero": ki.is_zero()}


def _parse_q(text: str) -> spectral.NumericQ:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"q must be a rational literal like 1/2: {e}") from e
    return spectral.NumericQ(value)


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError("complex value must be RE or RE,IM")


# -- per-command handlers; each returns (payload, text_lines) -----------------


def _cmd_normalize(args):
    # reduce the expression's words under the chosen rules: with the printed
    # rules, irreducible non-basis words are reported, not coerced
    rules = rewrite.RuleSet.by_name(args.rules)
    free = expr.eval_ast_free(expr.parse(args.expr))
    x = algebra.normalize(free, rules)
    return _element_payload(x), [expr.element_text(x)]


def _cmd_bracket(args):
    x = algebra.bracket(expr.evaluate(args.left), expr.evaluate(args.right))
    return _element_payload(x), [expr.element_text(x)]


def _cmd_adjoint(args):
    x = algebra.adjoint(expr.evaluate(args.expr))
    return _element_payload(x), [expr.element_text(x)]


def _cmd_decompose(args):
    d = lie.decompose(expr.evaluate(args.expr))
    payload = {
        "linear_A": expr.ratfun_json(d.coeff_a),
        "linear_B": expr.ratfun_json(d.coeff_b),
        "derived": expr.element_json(d.derived),
        "e_part": expr.element_json(d.e_part),
    }
    lines = [
        f"coefficient of A: {d.coeff_a}",
        f"coefficient of B: {d.coeff_b}",
        f"derived part:     {expr.element_text(d.derived)}",
        f"remainder part:   {expr.element_text(d.e_part)}",
    ]
    return payload, lines


def _cmd_is_lie(args):
    value = lie.is_lie_polynomial(expr.evaluate(args.expr))
    return {"value": value}, ["true" if value else "false"]


def _cmd_is_compact(args):
    value = lie.is_compact(expr.evaluate(args.expr))
    return {"value": value}, ["true" if value else "false"]


def _cmd_calkin(args):
    lp = lie.calkin_image(expr.evaluate(args.expr))
    payload = {
        "terms": [
            {"power": e, "coeff": expr.ratfun_json(c)} for e, c in lp.sorted_terms()
        ],
        "text": str(lp),
    }
    return payload, [str(lp)]


def _cmd_apply(args):
    x = expr.evaluate(args.expr)
    if args.q is None:
        ki = lie.apply_symbolic(x, args.n)
        return _ket_payload(ki), [str(ki)]
    q0 = _parse_q(args.q)
    vec = spectral.apply_numeric(x, args.n, q0)
    payload = {
        "entries": [
            {"index": idx, "value": _finite(v)} for idx, v in sorted(vec.items())
        ],
        "q": str(q0.value),
    }
    lines = [f"{idx}: {v!r}" for idx, v in sorted(vec.items())] or ["0"]
    return payload, lines


def _cmd_verify_identities(args):
    reports = lie.verify_identity_suite(args.kmax, args.lmax)
    payload = {"reports": [_identity_report_json(r) for r in reports]}
    lines = [
        f"{r.identity} {r.params}: {'ok' if r.verdict else 'DIFFERS: ' + expr.element_text(r.difference)}"
        for r in reports
    ]
    return payload, lines


def _cmd_verify_fredholm(args):
    reports = lie.verify_fredholm_relations()
    payload = {"reports": [_identity_report_json(r) for r in reports]}
    lines = [
        f"{r.identity}: {'ok' if r.verdict else 'DIFFERS: ' + expr.element_text(r.difference)}"
        for r in reports
    ]
    return payload, lines


def _cmd_verify_confluence(args):
    rules = rewrite.RuleSet.by_name(args.rules)
    summary = rewrite.check_confluence(rules, args.maxlen)
    payload = {
        "rules": summary.rules_name,
        "max_len": summary.max_len,
        "confluent": summary.confluent_up_to_length,
        "ambiguities": [
            {
                "word": r.word_text,
                "kind": r.kind,
                "resolvable": r.resolvable,
                "outcomes": [_free_element_json(o) for o in r.outcomes],
            }
            for r in summary.reports
        ],
        "unresolvable": [r.word_text for r in summary.unresolvable],
    }
    lines = [
        f"{summary.rules_name} rules, ambiguity words up to length {summary.max_len}: "
        f"{len(summary.reports)} ambiguities, "
        f"{len(summary.unresolvable)} unresolvable"
    ]
    for r in summary.reports:
        status = "resolvable" if r.resolvable else "UNRESOLVABLE"
        lines.append(f"  {r.word_text} ({r.kind}): {status}")
        if not r.resolvable:
            for o in r.outcomes:
                lines.append(f"    -> {o}")
    return payload, lines


def _cmd_spectrum(args):
    q0 = _parse_q(args.q) if args.q is not None else None
    facts = spectral.spectrum_facts(args.op, k=args.k, q0=q0)
    payload = {
        "operator": facts.operator,
        "k": facts.k,
        "radius_sq": expr.ratfun_json(facts.radius_sq),
        "point_spectrum": facts.point_spectrum,
        "approx_point_spectrum": facts.approx_point_spectrum,
        "compression_spectrum": facts.compression_spectrum,
    }
    if facts.eigenvalue_formula is not None:
        payload["eigenvalue_formula"] = facts.eigenvalue_formula
    if facts.eigenspace is not None:
        payload["eigenspace"] = facts.eigenspace
    if facts.radius_numeric is not None:
        payload["radius"] = _finite(facts.radius_numeric)
    if facts.eigenvalues is not None:
        payload["eigenvalues"] = [_finite(v) for v in facts.eigenvalues]
    name = facts.operator if facts.operator != "C" else f"C^{facts.k}"
    lines = [
        f"operator:                {name}",
        f"squared radius:          {facts.radius_sq}",
        f"point spectrum:          {facts.point_spectrum}",
        f"approx point spectrum:   {facts.approx_point_spectrum}",
        f"compression spectrum:    {facts.compression_spectrum}",
    ]
    if facts.eigenvalue_formula:
        lines.append(f"eigenvalues:             {facts.eigenvalue_formula}")
    return payload, lines


def _cmd_norm(args):
    q0 = _parse_q(args.q)
    value = spectral.op_norm(expr.evaluate(args.expr), q0, args.dim, method=args.method)
    payload = {
        "value": _finite(value),
        "q": str(q0.value),
        "dim": args.dim,
        "method": args.method,
    }
    return payload, [repr(value)]


def _estimate_payload(estimates, q0, kmax, dim):
    return {
        "estimates": [_finite(v) for v in estimates],
        "final": _finite(estimates[-1]),
        "q": str(q0.value),
        "kmax": kmax,
        "dim": dim,
    }


def _cmd_radius(args):
    q0 = _parse_q(args.q)
    est = spectral.spectral_radius_est(q0, args.kmax, args.dim)
    return _estimate_payload(est, q0, args.kmax, args.dim), [repr(est[-1])]


def _cmd_lower_index(args):
    q0 = _parse_q(args.q)
    est = spectral.lower_index_est(q0, args.kmax, args.dim)
    return _estimate_payload(est, q0, args.kmax, args.dim), [repr(est[-1])]


def _cmd_coherent(args):
    q0 = _parse_q(args.q)
    c = _parse_complex(args.c)
    witness = spectral.coherent_vector(c, q0, args.dim)
    payload = {
        "eigenvalue": {"re": _finite(c.real), "im": _finite(c.imag)},
        "residual": _finite(witness.residual),
        "radius": _finite(witness.radius),
        "outside_disk": witness.outside_disk,
        "vector": [
            {"index": n, "re": _finite(z.real), "im": _finite(z.imag)}
            for n, z in sorted(witness.entries.items())
        ],
    }
    lines = [f"residual: {witness.residual!r}"]
    if witness.outside_disk:
        lines.append(
            "warning: |c| is not inside the open spectral disk; "
            "the residual is not expected to vanish"
        )
    return payload, lines


def _cmd_surrogate(args):
    coeff = expr.parse_ratfun(args.coeff) if args.coeff else RatFun.one()
    y = lie.lie_surrogate(coeff, args.side, args.l, args.n, args.k)
    residual = lie.surrogate_residual(coeff, args.side, args.l, args.n, args.k)
    payload = {
        "element": expr.element_json(y),
        "text": expr.element_text(y),
        "residual_zero": residual.is_zero(),
    }
    lines = [
        expr.element_text(y),
        f"residual on basis vector {args.n}: "
        + ("0" if residual.is_zero() else str(residual)),
    ]
    return payload, lines


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qheis",
        description="Symbolic normal forms and numeric spectra for the "
        "q-deformed Heisenberg algebra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true", help="emit the JSON output document")
        p.set_defaults(handler=handler)
        return p

    p = add("normalize", _cmd_normalize, help="normal form of an expression")
    p.add_argument("expr")
    p.add_argument("--rules", choices=("printed", "completed"), default="completed")

    p = add("bracket", _cmd_bracket, help="commutator of two expressions")
    p.add_argument("left")
    p.add_argument("right")

    p = add("adjoint", _cmd_adjoint, help="adjoint of an expression")
    p.add_argument("expr")

    p = add("decompose", _cmd_decompose, help="A/B-linear, derived, and remainder parts")
    p.add_argument("expr")

    p = add("is-lie", _cmd_is_lie, help="membership in the commutator Lie algebra")
    p.add_argument("expr")

    p = add("is-compact", _cmd_is_compact, help="compactness of the represented operator")
    p.add_argument("expr")

    p = add("calkin", _cmd_calkin, help="Laurent-polynomial image modulo compacts")
    p.add_argument("expr")

    p = add("apply", _cmd_apply, help="apply to a basis vector (exact, or numeric with --q)")
    p.add_argument("expr")
    p.add_argument("--n", type=int, required=True, help="basis vector index")
    p.add_argument("--q", help="rational q in (0,1) for a numeric result")

    verify = sub.add_parser("verify", help="built-in verification suites")
    vsub = verify.add_subparsers(dest="verify_command", required=True)

    def addv(name, handler, **kwargs):
        p = vsub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true")
        p.set_defaults(handler=handler)
        return p

    p = addv("identities", _cmd_verify_identities, help="nested-commutator rebuild identities")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--lmax", type=int, required=True)

    addv("fredholm", _cmd_verify_fredholm, help="invertibility-modulo-compacts relations")

    p = addv("confluence", _cmd_verify_confluence, help="ambiguity resolution report")
    p.add_argument("--rules", choices=("printed", "completed"), required=True)
    p.add_argument("--maxlen", type=int, required=True)

    p = add("spectrum", _cmd_spectrum, help="exact spectral descriptors")
    p.add_argument("--op", choices=("A", "B", "C"), required=True)
    p.add_argument("--k", type=int, default=1, help="power for the diagonal operator")
    p.add_argument("--q")

    p = add("norm", _cmd_norm, help="operator norm on a truncation")
    p.add_argument("expr")
    p.add_argument("--q", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--method", choices=("svd", "power"), default="svd")

    p = add("radius", _cmd_radius, help="spectral radius estimates from weight windows")
    p.add_argument("--q", required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)

    p = add("lower-index", _cmd_lower_index, help="lower index estimates from weight windows")
    p.add_argument("--q", required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)

    p = add("coherent", _cmd_coherent, help="eigenvector witness for the lowering operator")
    p.add_argument("--c", required=True, help="eigenvalue as RE or RE,IM")
    p.add_argument("--q", required=True)
    p.add_argument("--dim", type=int, required=True)

    p = add("surrogate", _cmd_surrogate, help="commutator-algebra surrogate for a generator power")
    p.add_argument("--side", choices=("A", "B"), required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--coeff", help="scalar coefficient (rational function of q)")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    command = args.command
    if command == "verify":
        command = f"verify {args.verify_command}"
    try:
        payload, lines = args.handler(args)
    except expr.ParseError as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return 2
    except (
        PoleError,
        ZeroDivisionError,
        algebra.StuckWordError,
        spectral.NonConvergenceError,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.json:
        doc = {"command": command, "format_version": 1, "result": payload}
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for line in lines:
            print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
