"""Command-line front end.

    jacobi-mde expand --form phi_0_1 --q-order 2
    jacobi-mde verify --all
    jacobi-mde discover --form phi_0_3 --max-degree 4
    jacobi-mde genus --dim 4 --chi "2,-20,2" ...
    jacobi-mde basis --weight -1 --index 1/2

Exit codes: 0 success, 1 failed verification / no equation / bad genus data,
2 usage errors.
"""

from __future__ import annotations

import argparse
import io
import json
import re
import sys
import warnings
from fractions import Fraction

from . import mde
from .catalog import CATALOG, UnknownForm, form
from .ring import basis
from .series import QZSeries

MINUS = "−"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --------------------------------------------------------------------------
# rendering


def _exp(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{{{x}}}"


def _term(c: Fraction, l2: int) -> str:
    z = "" if l2 == 0 else f"ζ^{_exp(Fraction(l2, 2))}"
    mag = abs(c)
    if not z:
        return str(mag)
    if mag == 1:
        return z
    return f"{mag}{z}" if mag.denominator == 1 else f"({mag}){z}"


def render_slice(sl: dict[int, Fraction]) -> str:
    out = ""
    for l2 in sorted(sl):
        c = Fraction(sl[l2])
        body = _term(c, l2)
        if not out:
            out = body if c > 0 else MINUS + body
        else:
            out += f" {'+' if c > 0 else MINUS} {body}"
    return out or "0"


def render_series(s: QZSeries) -> list[str]:
    return [f"q^{_exp(Fraction(n24, 24))}: {render_slice(sl)}" for n24, sl in s.slices().items()]


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def series_json(s: QZSeries) -> dict:
    return {
        "weight2": s.weight2,
        "index2": s.index2,
        "trunc24": s.trunc24,
        "quasi": s.quasi,
        "char24": s.char24,
        "terms": [{"n24": n, "l2": l, "c": _frac(c)} for (n, l), c in s.terms.items()],
    }


def series_from_json(obj: dict) -> QZSeries:
    terms = {(t["n24"], t["l2"]): Fraction(t["c"]) for t in obj["terms"]}
    return QZSeries(
        terms,
        obj["weight2"],
        obj["index2"],
        obj["trunc24"],
        quasi=obj.get("quasi", False),
        char24=obj.get("char24", 0),
    )


def _cert_json(c) -> dict:
    return {
        "weight2": c.weight2,
        "index2": c.index2,
        "vanish_order24": c.vanish_order24,
        "required_bound24": c.required_bound24,
        "verdict": c.verdict,
        "first_nonzero": list(c.first_nonzero) if c.first_nonzero else None,
        "method": c.method,
    }


def _coeffs_json(coeffs) -> list[dict]:
    return [
        {"i": i, "E4": a, "E6": b, "c": _frac(c)}
        for i in sorted(coeffs)
        for (a, b), c in sorted(coeffs[i].items())
    ]


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")


# --------------------------------------------------------------------------
# argument handling


def _half_units(text: str, what: str) -> int:
    try:
        v = Fraction(text) * 2
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} must be an integer or p/q, got {text!r}") from None
    if v.denominator != 1:
        raise UsageError(f"{what} must be a multiple of 1/2")
    return int(v)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _attach_negatives(argv: list[str]) -> list[str]:
    # argparse reads "-1/2" as a flag; glue negative values onto their option
    out: list[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a.startswith("--") and "=" not in a and i + 1 < len(argv) and re.match(r"^-\d", argv[i + 1]):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="jacobi-mde", description="Exact Jacobi form expansions and modular differential equations.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(sp, q=True):
        if q:
            sp.add_argument("--q-order", type=int, default=12, help="q-slices to compute (default 12)")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("expand", help="print a catalog form")
    sp.add_argument("--form", required=True)
    common(sp)

    sp = sub.add_parser("verify", help="certify ledger equations")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true")
    g.add_argument("--equation")
    g.add_argument("--list", action="store_true", help="list ledger ids")
    sp.add_argument("--literal", action="store_true", help="check the entry's literal variant")
    common(sp)

    sp = sub.add_parser("discover", help="find the least-degree equation")
    sp.add_argument("--form", required=True)
    sp.add_argument("--max-degree", type=int, required=True)
    common(sp)

    sp = sub.add_parser("genus", help="weight-0 Jacobi form from chi_y data")
    sp.add_argument("--dim", type=int, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--euler")
    g.add_argument("--chi")
    common(sp)

    sp = sub.add_parser("basis", help="structure-theorem basis of J_{k,m}")
    sp.add_argument("--weight", required=True)
    sp.add_argument("--index", required=True)
    common(sp, q=False)
    return p


# --------------------------------------------------------------------------
# subcommands


def _form_name(name: str) -> str:
    if name not in CATALOG:
        raise UsageError(f"unknown form {name!r}; known: {', '.join(sorted(CATALOG))}")
    return name


def _expand(args, t, out, err) -> int:
    s = form(_form_name(args.form), t)
    if args.json:
        _dump(series_json(s), out)
    else:
        for line in render_series(s):
            out.write(line + "\n")
    return 0


def _verify(args, t, out, err) -> int:
    if args.list:
        entries = mde.ledger()
        if args.json:
            _dump([{"id": e.id, "title": e.title} for e in entries], out)
        else:
            for e in entries:
                out.write(f"{e.id:<32} {e.title}\n")
        return 0
    if args.all:
        if args.literal:
            raise UsageError("--literal needs --equation")
        results = mde.verify_all(t)
    else:
        try:
            results = [mde.verify_equation(args.equation, t, literal=args.literal)]
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    ok = all(r.passed for r in results)
    if args.json:
        _dump(
            {
                "trunc24": t,
                "all_pass": ok,
                "results": [
                    {
                        "id": r.id,
                        "status": r.status,
                        "note": r.note,
                        "certificates": [_cert_json(c) for c in r.certificates],
                    }
                    for r in results
                ],
            },
            out,
        )
    else:
        for r in results:
            line = f"{r.id:<32} {r.status}"
            if r.note:
                line += f"  ({r.note})"
            out.write(line + "\n")
        n = sum(r.passed for r in results)
        out.write(f"{n}/{len(results)} passed\n")
    return 0 if ok else 1


def _discover(args, t, out, err) -> int:
    if args.max_degree < 1:
        raise UsageError("--max-degree must be at least 1")
    name = _form_name(args.form)
    if CATALOG[name].index2 <= 0:
        raise UsageError(f"{name} has index 0; discovery needs a Jacobi form")
    res = mde.discover(name, args.max_degree, t)
    eq = res.equation
    if args.json:
        obj = {
            "form": name,
            "infeasible": [vars(i) for i in res.infeasible],
            "inconclusive_degree": res.inconclusive_degree,
            "equation": None,
        }
        if eq:
            obj["equation"] = {
                "degree": eq.degree,
                "weight2": eq.weight2,
                "index2": eq.index2,
                "coeffs": _coeffs_json(eq.coeffs),
                "unique": eq.unique,
                "nullspace": [_coeffs_json(v) for v in eq.nullspace],
                "text": str(eq),
                "certificate": _cert_json(eq.certificate),
            }
        _dump(obj, out)
    else:
        for i in res.infeasible:
            out.write(
                f"degree {i.degree}: infeasible (rank {i.rank}, augmented rank {i.augmented_rank}, "
                f"{i.unknowns} unknowns, {i.conditions} conditions)\n"
            )
        if eq:
            out.write(f"degree {eq.degree}: {eq}\n")
            out.write(f"certificate: {eq.certificate.verdict} to q^{_exp(Fraction(eq.certificate.vanish_order24, 24))}\n")
            if not eq.unique:
                out.write(f"solution not unique: {len(eq.nullspace)}-dimensional family\n")
                for v in eq.nullspace:
                    out.write("  + t * (" + ", ".join(f"{c['c']} E4^{c['E4']}E6^{c['E6']}@{c['i']}" for c in _coeffs_json(v)) + ")\n")
        elif res.inconclusive_degree:
            out.write(f"degree {res.inconclusive_degree}: inconclusive, raise --q-order\n")
        else:
            out.write(f"no equation of degree <= {args.max_degree}\n")
    return 0 if eq else 1


def _genus(args, t, out, err) -> int:
    chi = None
    if args.chi is not None:
        chi = tuple(_rational(x) for x in args.chi.split(","))
    euler = _rational(args.euler) if args.euler is not None else None
    try:
        inp = mde.GenusInput(args.dim, euler=euler, chi=chi)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", mde.NonIntegralWarning)
            res = mde.elliptic_genus(inp, t)
    except mde.InconsistentHodgeData as exc:
        if args.json:
            _dump({"error": {"type": "InconsistentHodgeData", "message": str(exc)}}, out)
        else:
            err.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for w in caught:
        err.write(f"warning: {w.message}\n")
    labels = [m.label() for m in res.basis]
    if args.json:
        _dump(
            {
                "basis": labels,
                "coordinates": [_frac(c) for c in res.coordinates],
                "unique": res.unique,
                "nonintegral": res.nonintegral,
                "series": series_json(res.series),
            },
            out,
        )
    else:
        for lab, c in zip(labels, res.coordinates):
            out.write(f"{c} * {lab}\n")
        if not res.unique:
            out.write("q^0 data does not fix the form; showing one solution\n")
        for line in render_series(res.series):
            out.write(line + "\n")
    return 0


def _basis(args, out, err) -> int:
    w2 = _half_units(args.weight, "weight")
    i2 = _half_units(args.index, "index")
    if i2 < 0:
        raise UsageError("index must be non-negative")
    B = basis(w2, i2)
    if args.json:
        _dump({"weight2": w2, "index2": i2, "dimension": B.dimension, "monomials": [m.label() for m in B]}, out)
    else:
        for m in B:
            out.write(m.label() + "\n")
        out.write(f"dim {B.dimension}\n")
    return 0


def run(argv: list[str]) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    as_json = "--json" in argv
    try:
        args = _parser().parse_args(_attach_negatives(list(argv)))
        if args.cmd == "basis":
            code = _basis(args, out, err)
        else:
            if args.q_order < 1:
                raise UsageError("--q-order must be at least 1")
            t = 24 * args.q_order
            handler = {"expand": _expand, "verify": _verify, "discover": _discover, "genus": _genus}[args.cmd]
            code = handler(args, t, out, err)
    except (UsageError, UnknownForm) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        if as_json:
            out = io.StringIO()
            _dump({"error": {"type": "usage", "message": str(msg)}}, out)
        err.write(f"jacobi-mde: error: {msg}\n")
        return 2, out.getvalue(), err.getvalue()
    return code, out.getvalue(), err.getvalue()


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if argv in (["-h"], ["--help"]) or not argv:
        _parser().print_help()
        return 0 if argv else 2
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
