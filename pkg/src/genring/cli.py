"""The ``genring`` command-line workbench.

Every verb prints a short text report by default and a compact JSON object
with ``--json``.  Exit status: 0 on success, 1 on a domain error, 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, TextIO

from . import classify as cl
from . import picard_arakelov as pa
from . import projgraded as pg
from . import spectra as sp
from .errors import GenringError, InputError
from .exactnum import format_rat, product_formula_check, rat
from .presentations import (
    derive_equal,
    find_countermodel,
    parse_presentation,
    parse_term,
    tensor_presentation,
)
from .presentations.library import library
from .presentations.models import describe_model
from .presentations.terms import format_term
from .registry import monad_from_ident, parse_element


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _rat(text: str) -> Fraction:
    try:
        return rat(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def load_presentation(ref: str):
    """A presentation from a file path or ``lib:NAME``."""
    if ref.startswith("lib:"):
        return library(ref[4:])
    path = Path(ref)
    if not path.is_file():
        raise InputError(f"no such presentation file: {ref}")
    return parse_presentation(path.read_text(encoding="utf-8"))


# verbs ------------------------------------------------------------------------------


def cmd_classify(a) -> tuple[dict, str]:
    m = monad_from_ident(a.monad)
    rep = cl.classify_additivity(m, a.arity, a.box)
    pseudo = None
    if m.has_constant:
        pseudo = cl.find_pseudoaddition(m).to_json()
    row = rep.row()
    row["pseudoaddition"] = pseudo
    text = cl.format_table([rep])
    return row, text


def cmd_commute(a) -> tuple[dict, str]:
    m = monad_from_ident(a.monad)
    t, s = parse_element(m, a.t), parse_element(m, a.s)
    r = cl.commute(m, t, s)
    data = {"monad": m.name, **r.to_json()}
    text = f"commute: {'yes' if r.commute else 'no'}\n  t(s(...)) = {r.left}\n  s(t(...)) = {r.right}"
    if r.position is not None:
        text += f"\n  first difference at x{r.position + 1}"
    return data, text


def cmd_spec(a) -> tuple[dict, str]:
    s = sp.space_from_ident(a.space)
    pts = sp.points(s, a.bound)
    rows = [{"point": p.to_json(), "closure": sp.closure(s, p).to_json(),
             "closed": sp.is_closed_point(s, p)} for p in pts]
    data = {"space": s.name, "bound": a.bound, "points": rows}
    lines = [f"{s.name}, primes <= {a.bound}"]
    for p in pts:
        lines.append(f"  {str(p):>3}  closure {sp.closure(s, p)}")
    return data, "\n".join(lines)


def _points_arg(s: sp.SpecSpace, text: str) -> list[sp.SpecPoint]:
    if not text.strip():
        return []
    return [sp.parse_point(t) for t in text.split(",")]


def cmd_topology(a) -> tuple[dict, str]:
    s = sp.space_from_ident(a.space)
    if a.empty:
        u = sp.OpenSubset.empty(s)
    else:
        u = sp.OpenSubset.avoiding(s, _points_arg(s, a.complement))
    verdict = sp.is_open(s, u)
    data = {"space": s.name, "subset": u.to_json(), "open": verdict}
    text = f"{s.name}: {'open' if verdict else 'not open'}"
    if a.brute:
        primes = [int(p) for p in a.brute.split(",")]
        tr, top = sp.truncated_topology(s, primes)
        mism = sum((m in top) != sp.is_open(s, tr.as_open(m)) for m in range(tr.full + 1))
        data["brute_force"] = {"points": len(tr.pts), "opens": len(top),
                               "is_topology": sp.is_topology(tr.full, top), "mismatches": mism}
        text += (f"\nbrute force on {len(tr.pts)} points: {len(top)} opens, "
                 f"{mism} disagreements with the criterion")
    return data, text


def cmd_stalk(a) -> tuple[dict, str]:
    s = sp.space_from_ident(a.space)
    pt = sp.parse_point(a.point)
    m = sp.stalk(s, pt)
    members = [{"x": format_rat(_rat(x)), "member": m.contains([_rat(x)])} for x in a.member]
    data = {"space": s.name, "point": pt.to_json(), "stalk": m.name, "members": members}
    lines = [f"O_{pt} on {s.name} = {m.name}"]
    lines += [f"  {r['x']}: {'in' if r['member'] else 'not in'}" for r in members]
    return data, "\n".join(lines)


def cmd_tensor(a) -> tuple[dict, str]:
    p = tensor_presentation(load_presentation(a.left), load_presentation(a.right))
    return p.to_json(), p.to_text().rstrip("\n")


def cmd_prove(a) -> tuple[dict, str]:
    p = load_presentation(a.presentation)
    lhs, rhs = parse_term(a.lhs, p), parse_term(a.rhs, p)
    res = derive_equal(p, lhs, rhs, a.depth)
    data = {"proof": res.to_json(), "countermodel": None, "max_size": a.countermodel}
    lines = [f"{format_term(lhs)} = {format_term(rhs)}: {res.status} "
             f"(depth {res.depth}, {res.instances} instances)"]
    if res.reason:
        lines[0] += f" [{res.reason}]"
    if a.countermodel:
        model = find_countermodel(p, lhs, rhs, a.countermodel)
        data["countermodel"] = None if model is None else model.to_json()
        if model is None:
            lines.append(f"no countermodel up to size {a.countermodel}")
        else:
            lines.append("countermodel:\n" + describe_model(model))
    return data, "\n".join(lines)


def cmd_proj_count(a) -> tuple[dict, str]:
    P = pg.proj_points_F1(a.n)
    data = {"n": a.n, "count": P.count}
    if a.points:
        data["points"] = [sorted(S) for S in P.points]
    text = str(P.count)
    if a.points:
        text += "\n" + "\n".join(
            "(" + ", ".join(f"T{i}" for i in sorted(S)) + ")" if S else "(0)" for S in P.points
        )
    return data, text


def cmd_proj_verify(a) -> tuple[dict, str]:
    rep = pg.proj_is_compactification(a.N, a.bound, a.samples, a.seed, a.open_bound)
    data = rep.to_json()
    lines = [f"Proj R for N = {a.N}: {'isomorphic' if rep.isomorphic else 'NOT isomorphic'} "
             f"to Spec-hat^({a.N}) at prime bound {a.bound}"]
    for c in rep.charts:
        lines.append(f"  {c.label}: sections {c.sections.name}")
    for r in rep.localizations:
        lines.append(f"  {r.label} vs {r.target}: {r.checked} samples, "
                     f"{'agree' if r.agree else 'DISAGREE'}")
    lines.append(f"  points {rep.points_agree}, overlap {rep.overlap_agree}, "
                 f"opens {rep.opens_agree} ({rep.subsets_checked} subsets)")
    return data, "\n".join(lines)


def cmd_pic(a) -> tuple[dict, str]:
    if a.N == "limit":
        if a.bundle is None:
            raise InputError("the limit needs --bundle LAMBDA")
        v = pa.pic_limit_element(_rat(a.bundle))
        return ({"lambda": format_rat(_rat(a.bundle)), "class": v.to_json()}, str(v))
    try:
        N = int(a.N)
    except ValueError:
        raise InputError(f"N must be an integer or 'limit', got {a.N!r}") from None
    G = pa.pic_group(N)
    data = G.to_json()
    text = f"Pic = Z^{G.rank}, basis " + ", ".join(f"O({lbl})" for lbl in G.labels)
    if a.bundle is not None:
        v = G.bundle(_rat(a.bundle))
        data["bundle"] = {"lambda": format_rat(_rat(a.bundle)), "coords": list(G.coordinates(v))}
        text += f"\nO(log {a.bundle}) = {v}"
    return data, text


def cmd_sections(a) -> tuple[dict, str]:
    body = pa.parse_body(a.body, a.dim)
    res = pa.global_sections_count(body)
    data = {"body": body.describe(), "dim": body.dim, **res.to_json()}
    return data, f"{res.count} lattice points in {body.describe()}"


def cmd_minkowski(a) -> tuple[dict, str]:
    body = pa.parse_body(a.body, a.dim)
    v = pa.minkowski_check(body)
    text = f"volume {v.volume} {'>' if v.exceeds else 'not >'} 2^{v.dim}"
    if v.point is not None:
        text += f"; nonzero lattice point {tuple(v.point)}"
    if not v.holds:
        text += "; VIOLATION"
    return v.to_json(), text


def cmd_product_formula(a) -> tuple[dict, str]:
    r = product_formula_check(_rat(a.x))
    data = {
        "x": format_rat(r.x),
        "factors": {str(p): format_rat(f) for p, f in r.factors.items()},
        "product": format_rat(r.product),
        "archimedean": format_rat(r.archimedean),
        "holds": r.holds,
    }
    text = (f"prod_p |x|_p = {data['product']}, 1/|x|_inf = {format_rat(1 / r.archimedean)}: "
            f"{'holds' if r.holds else 'FAILS'}")
    return data, text


def cmd_model(a) -> tuple[dict, str]:
    path = Path(a.file)
    if not path.is_file():
        raise InputError(f"no such file: {a.file}")
    model = pa.build_model(pa.parse_poly_file(path.read_text(encoding="utf-8")))
    return model.to_json(), model.to_text()


def cmd_parse(a) -> tuple[dict, str]:
    p = load_presentation(a.presentation)
    data = p.to_json()
    data["symbols"] = p.symbols()
    return data, p.to_text().rstrip("\n")


# parser ------------------------------------------------------------------------------

VERBS: dict[str, Callable] = {}

# arguments such as -12/35 or -1/2,1/2 are values, not options
_NEGATIVE = re.compile(r"^-\d+(/\d+)?(,.*)?$")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="genring", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def verb(name, fn, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p._negative_number_matcher = _NEGATIVE
        p.add_argument("--json", action="store_true", help="compact JSON output")
        VERBS[name] = fn
        return p

    p = verb("classify", cmd_classify, "hypo/hyperadditivity of a monad (one row of the additivity table)")
    p.add_argument("monad", help="Z, N, Zinf, F1, F12, F1n:k, Finf, AN:k, BN:k, Fempty")
    p.add_argument("--arity", type=int, default=3, help="arity bound n_max (default 3)")
    p.add_argument("--box", type=int, default=2, help="coefficient sampling box")

    p = verb("commute", cmd_commute, "check that two operations commute")
    p.add_argument("monad")
    p.add_argument("t", help="element, e.g. 1/2,1/2 or 1@2/3 (F1n) or +,- (Finf)")
    p.add_argument("s")

    p = verb("spec", cmd_spec, "points and closures of a spectrum")
    p.add_argument("space", help="Z, BN:k, AN:k, hat:k (Spec-hat^(k)) or hat (the limit)")
    p.add_argument("--bound", type=int, default=20, help="largest prime listed")

    p = verb("topology", cmd_topology, "decide whether a cofinite subset is open")
    p.add_argument("space")
    p.add_argument("--complement", default="", help="excluded points, e.g. 2,3,inf")
    p.add_argument("--empty", action="store_true", help="test the empty set")
    p.add_argument("--brute", metavar="PRIMES",
                   help="also rebuild the topology on xi, these primes and inf")

    p = verb("stalk", cmd_stalk, "local monad at a point")
    p.add_argument("space")
    p.add_argument("point", help="xi, a prime, or inf")
    p.add_argument("--member", action="append", default=[], metavar="X",
                   help="rational to test (repeatable)")

    p = verb("tensor", cmd_tensor, "tensor product of two presentations")
    p.add_argument("left", help="file or lib:NAME")
    p.add_argument("right")

    p = verb("prove", cmd_prove, "bounded equational proof of lhs = rhs")
    p.add_argument("presentation", help="file or lib:NAME")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--depth", type=int, default=2, help="instantiation depth")
    p.add_argument("--countermodel", type=int, default=0, metavar="SIZE",
                   help="also search finite models up to SIZE")

    p = verb("proj-count", cmd_proj_count, "number of points of P^n over F1")
    p.add_argument("n", type=int)
    p.add_argument("--points", action="store_true", help="list the points")

    p = verb("proj-verify", cmd_proj_verify, "compare Proj R with Spec-hat^(N)")
    p.add_argument("N", type=int)
    p.add_argument("--bound", type=int, default=20, help="prime bound")
    p.add_argument("--open-bound", type=int, default=None,
                   help="prime bound for the open-set comparison (default: --bound)")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)

    p = verb("pic", cmd_pic, "Picard group of Spec-hat^(N) or of the limit")
    p.add_argument("N", help="integer > 1, or 'limit'")
    p.add_argument("--bundle", metavar="LAMBDA", help="class of O(log LAMBDA)")

    p = verb("sections", cmd_sections, "lattice points of a convex body")
    p.add_argument("--body", required=True, help="oct:r, box:a,b,... or ell:q11,q12;q21,q22")
    p.add_argument("--dim", type=int, default=None)

    p = verb("minkowski", cmd_minkowski, "Minkowski check for a convex body")
    p.add_argument("--body", required=True)
    p.add_argument("--dim", type=int, default=None)

    p = verb("product-formula", cmd_product_formula, "check the product formula at x")
    p.add_argument("x")

    p = verb("model", cmd_model, "model over Z_(inf) of polynomials in a .poly file")
    p.add_argument("file")

    p = verb("parse", cmd_parse, "parse and normalize a presentation")
    p.add_argument("presentation", help="file or lib:NAME")
    return ap


def run(argv: list[str] | None = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        data, text = VERBS[args.verb](args)
    except GenringError as e:
        print(f"genring {args.verb}: {e}", file=err)
        return 1
    print(_dump(data) if args.json else text, file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
