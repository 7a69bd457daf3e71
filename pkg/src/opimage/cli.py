"""Command-line front end.

Exit codes: 0 success, 1 domain error (a JSON error object is printed),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import errors
from .fields import QQ, field_from_tag, PrimeField
from .harness import (PolyMap, ag_inverse, hessian_matrix, ic_instance_check,
                      is_nilpotent_matrix, jacobian_of_shift, jc_power_sums,
                      matrix_text, matrix_to_json, vc_check)
from .image import (codim_sweep, eval_E, eval_Z, laplace_negative_part, laplace_transform,
                    member_bruteforce, member_theta, theta_ops, theta_witness_bounds,
                    twisted_taylor)
from .parse import parse_poly
from .poly import Poly
from .randgen import random_triangular_map
from .weyl import ConstCoeffOp, FirstOrderOp, apply_lambda, reduce_family


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _bool(b) -> str:
    return "yes" if b else "no"


# input helpers -----------------------------------------------------------


def _field(args):
    try:
        return field_from_tag(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _main_poly(args) -> Poly:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return Poly.from_json(json.load(fh))
    if args.poly is None:
        raise UsageError("need --poly EXPR or --file PATH")
    return parse_poly(args.poly, args.nvars, _field(args))


def _expr(args, text) -> Poly:
    return parse_poly(text, args.nvars, _field(args))


def _op(args, text) -> FirstOrderOp:
    """``a1, ..., an ; h`` -> sum a_i d_i + h."""
    if ";" not in text:
        raise UsageError(f"operator {text!r} must look like 'a1,...,an;h'")
    lead, zero = text.split(";", 1)
    leading = [_expr(args, a) for a in lead.split(",")]
    if len(leading) != args.nvars:
        raise UsageError(f"operator {text!r} needs {args.nvars} leading coefficients")
    return FirstOrderOp(leading, _expr(args, zero))


def _map(args, text) -> PolyMap:
    parts = [p for p in text.split(";")]
    if len(parts) != args.nvars:
        raise UsageError(f"map needs {args.nvars} ';'-separated components")
    return PolyMap([_expr(args, p) for p in parts])


# subcommands -------------------------------------------------------------


def cmd_eval_e(args):
    r = eval_E(_main_poly(args))
    return r.to_json(), str(r)


def cmd_eval_z(args):
    r = eval_Z(_main_poly(args))
    return r.to_json(), str(r)


def cmd_laplace(args):
    L = laplace_transform(_main_poly(args))
    neg = laplace_negative_part(L)
    text = f"L(f) = {L}\nnegative part = {neg}"
    return {"transform": L.to_json(), "negative_part": neg.to_json(),
            "member": not neg}, text


def cmd_taylor(args):
    T = twisted_taylor(_main_poly(args))
    lines = [f"a{list(al)} = {a}" for al, a in sorted(T.coefficients.items())]
    return T.to_json(), "\n".join(lines) if lines else "0"


def cmd_member(args):
    f = _main_poly(args)
    rep = member_theta(f, witness=args.witness)
    lines = [f"member: {_bool(rep.is_member)}", f"E(f) = {rep.e_value}",
             f"hol Z(f) = {rep.z_holomorphic}"]
    if rep.witness is not None:
        lines += [f"w{i + 1} = {w}" for i, w in enumerate(rep.witness)]
    return rep.to_json(), "\n".join(lines)


def cmd_member_bf(args):
    f = _main_poly(args)
    if args.op:
        ops = [_op(args, t) for t in args.op]
        dz = args.dz if args.dz is not None else max(f.deg_z, 0)
        du = args.du if args.du is not None else max(f.deg_u, 0)
    else:
        ops = theta_ops(f.nvars, f.field)
        bz, bu = theta_witness_bounds(f)
        dz = args.dz if args.dz is not None else bz
        du = args.du if args.du is not None else bu
    wit = member_bruteforce(f, ops, dz, du)
    obj = {"found": wit is not None, "deg_bound_z": dz, "deg_bound_u": du,
           "witness": None if wit is None else [w.to_json() for w in wit]}
    if wit is None:
        text = f"witness: none within bounds (D_z={dz}, D_u={du})"
    else:
        text = "\n".join(["witness: found"] + [f"w{i + 1} = {w}" for i, w in enumerate(wit)])
    return obj, text


def _table(report, hyp_label, con_label):
    lines = [f"m  {hyp_label}  {con_label}"]
    for m, (h, c) in enumerate(zip(report.hypothesis, report.conclusion), 1):
        lines.append(f"{m}  {_bool(h)}  {_bool(c)}")
    lines.append(f"threshold: {report.threshold if report.threshold is not None else 'none within M'}")
    if report.hypothesis_violated:
        lines.append("hypothesis violated")
    return lines


def cmd_vc(args):
    if not args.lam:
        raise UsageError("vc needs --lambda")
    lam = ConstCoeffOp(_expr(args, args.lam))
    P = _main_poly(args)
    Q = _expr(args, args.q) if args.q else Poly.one(P.nvars, P.field)
    rep = vc_check(lam, P, Q, args.max_power)
    return rep.to_json(), "\n".join(_table(rep, "L^m(P^m)=0", "L^m(P^m Q)=0"))


def cmd_ic_check(args):
    f = _main_poly(args)
    g = _expr(args, args.g) if args.g else Poly.one(f.nvars, f.field)
    rep = ic_instance_check(f, g, args.max_power)
    return rep.to_json(), "\n".join(_table(rep, "f^m in im", "f^m g in im"))


def _map_arg(args) -> PolyMap:
    if args.map:
        return _map(args, args.map)
    if args.seed is not None:
        return random_triangular_map(random.Random(args.seed), args.nvars, _field(args))
    raise UsageError("need --map 'H1;...;Hn' or --seed S")


def cmd_jc_sums(args):
    H = _map_arg(args)
    sums = jc_power_sums(H, args.max_power)
    jac = jacobian_of_shift(H)
    lines = [f"H = {H}"] + [f"S{m} = {s}" for m, s in enumerate(sums, 1)]
    lines.append(f"j(z - H) = {jac}")
    return {"H": H.to_json(), "sums": [s.to_json() for s in sums],
            "all_zero": not any(sums), "jacobian": jac.to_json()}, "\n".join(lines)


def cmd_jc_invert(args):
    H = _map_arg(args)
    g = PolyMap([_expr(args, t) for t in args.g.split(";")]) if args.g else None
    G = ag_inverse(H, g, args.truncate)
    if isinstance(G, Poly):
        G = PolyMap([G])
    lines = [f"H = {H}"] + [f"G{i + 1} = {c}" for i, c in enumerate(G)]
    return {"H": H.to_json(), "truncate": args.truncate, "result": G.to_json()}, "\n".join(lines)


def cmd_hessian(args):
    P = _main_poly(args)
    Hs = hessian_matrix(P)
    nil = is_nilpotent_matrix(Hs)
    lap = ConstCoeffOp.laplacian(P.nvars, P.field)
    vanish = []
    Pm = Poly.one(P.nvars, P.field)
    for m in range(1, args.max_power + 1):
        Pm = Pm * P
        vanish.append(not apply_lambda(lap, Pm, m))
    lines = [matrix_text(Hs), f"nilpotent: {_bool(nil)}",
             "laplacian^m(P^m) = 0: " + " ".join(_bool(v) for v in vanish)]
    return {"hessian": matrix_to_json(Hs), "nilpotent": nil,
            "laplacian_vanishes": vanish}, "\n".join(lines)


def cmd_codim(args):
    q = _main_poly(args)
    degrees = [int(d) for d in args.degrees.split(",")]
    sweep = codim_sweep(q, degrees)
    lines = [f"D={d}  codim={c}" for d, c in zip(sweep.degrees, sweep.codims)]
    lines.append(sweep.verdict)
    return sweep.to_json(), "\n".join(lines)


def cmd_reduce(args):
    if not args.op:
        raise UsageError("reduce needs at least one --op")
    ops = [_op(args, t) for t in args.op]
    red = reduce_family(ops)
    fld = red.q.field
    lines = [f"k = {red.k}", "coord_change:"]
    for row in red.coord_change:
        lines.append("  [" + ", ".join(str(Poly.const(1, x, fld)) for x in row) + "]")
    lines.append(f"q = {red.q}")
    lines += [f"g{i + 1} = {g}" for i, g in enumerate(red.zero_order_gens)]
    return red.to_json(), "\n".join(lines)


# scripted examples --------------------------------------------------------


def example_nonconstant_leading(max_power: int = 5):
    """Phi = t d/dt - 1 on Q[t]: f = 1 + t^2 has every power in the image,
    t f^m never is."""
    n, fld = 1, QQ
    t = Poly.z(n, 0, fld)
    op = FirstOrderOp([t], Poly.const(n, -1, fld))
    f = t * t + 1
    rows = []
    fm = Poly.one(n, fld)
    for m in range(1, max_power + 1):
        fm = fm * f
        # Phi(t^k) = (k - 1) t^k keeps degrees, so deg(target) bounds a witness.
        a = member_bruteforce(fm, [op], fm.deg_z) is not None
        tf = t * fm
        b = member_bruteforce(tf, [op], tf.deg_z) is not None
        rows.append((m, a, b))
    obj = {"id": "2.6", "operator": "t*d/dt - 1", "f": str(f), "variable": "t = z1",
           "witness_degree_bound": "deg(target)",
           "rows": [{"m": m, "f^m": a, "t*f^m": b} for m, a, b in rows],
           "all_f_powers_member": all(a for _, a, _ in rows),
           "no_t_f_powers_member": not any(b for _, _, b in rows)}
    lines = ["operator: t*d/dt - 1 on Q[t], t = z1",
             f"f = {f}",
             "witness search: deg(u) <= deg(target), conclusive",
             "m  f^m in im  t*f^m in im"]
    lines += [f"{m}  {_bool(a)}  {_bool(b)}" for m, a, b in rows]
    lines.append(f"f^m in im for m = 1..{max_power}: {_bool(obj['all_f_powers_member'])}")
    lines.append(f"t*f^m outside im for m = 1..{max_power}: {_bool(obj['no_t_f_powers_member'])}")
    return obj, "\n".join(lines)


def example_positive_characteristic(p: int = 5):
    """d/dx on F_p[x]: 1 is in the image, x^(p-1) is not."""
    fld = PrimeField(p)
    n = 1
    op = FirstOrderOp([Poly.one(n, fld)], Poly.zero(n, fld))
    one = Poly.one(n, fld)
    g = Poly.z(n, 0, fld) ** (p - 1)
    w1 = member_bruteforce(one, [op], 2 * p)
    w2 = member_bruteforce(g, [op], 2 * p)
    obj = {"id": "2.7", "p": p, "operator": "d/dx", "variable": "x = z1",
           "one_member": w1 is not None, "one_witness": None if w1 is None else str(w1[0]),
           "g": str(g), "g_member": w2 is not None, "deg_bound": 2 * p}
    lines = [f"operator: d/dx on F_{p}[x], x = z1",
             f"1 in im: {_bool(w1 is not None)}" + (f" (witness {w1[0]})" if w1 else ""),
             f"{g} in im: {_bool(w2 is not None)} (searched deg <= {2 * p})",
             f"f = 1, g = {g}: f^m in im for all m, f^m g in im for no m"]
    return obj, "\n".join(lines)


def example_hessian_nilpotent(max_power: int = 4):
    from .fields import QQI
    n = 2
    P = parse_poly("(z1+i*z2)^4", n, QQI)
    lam = ConstCoeffOp.laplacian(n, QQI)
    rep = vc_check(lam, P, P, max_power)
    nil = is_nilpotent_matrix(hessian_matrix(P))
    lines = [f"P = {P}", f"hessian nilpotent: {_bool(nil)}"]
    lines += _table(rep, "L^m(P^m)=0", "L^m(P^m P)=0")
    return {"id": "hessian-nilpotent", "nilpotent": nil, **rep.to_json()}, "\n".join(lines)


def example_triangular_cubic(max_power: int = 4, trunc: int = 9):
    n = 2
    H = PolyMap([parse_poly("z2^3", n), Poly.zero(n)])
    sums = jc_power_sums(H, max_power)
    G = ag_inverse(H, None, trunc)
    f = Poly.u(n, 0) * H[0] + Poly.u(n, 1) * H[1]
    rep = ic_instance_check(f, Poly.z(n, 0), max_power)
    lines = [f"H = {H}", f"j(z - H) = {jacobian_of_shift(H)}",
             "power sums zero: " + " ".join(_bool(not s) for s in sums),
             f"G = {G}"]
    lines += _table(rep, "f^m in im", "f^m z1 in im")
    return {"id": "triangular-cubic", "H": H.to_json(), "G": G.to_json(),
            "sums_zero": [not s for s in sums], **rep.to_json()}, "\n".join(lines)


EXAMPLES = {
    "2.6": lambda a: example_nonconstant_leading(a.max_power),
    "2.7": lambda a: example_positive_characteristic(a.p),
    "hessian-nilpotent": lambda a: example_hessian_nilpotent(a.max_power),
    "triangular-cubic": lambda a: example_triangular_cubic(a.max_power, a.truncate),
}


def cmd_examples(args):
    if args.id not in EXAMPLES:
        raise UsageError(f"unknown example {args.id!r}; choose from {', '.join(EXAMPLES)}")
    return EXAMPLES[args.id](args)


COMMANDS = {
    "eval-e": (cmd_eval_e, "apply E: g(xi)h(z) -> g(d)h(z)"),
    "eval-z": (cmd_eval_z, "apply Z: g(xi)z^b -> b! g(1/z) z^b"),
    "laplace": (cmd_laplace, "symbolic Laplace transform in z"),
    "taylor": (cmd_taylor, "twisted Taylor coefficients a_alpha"),
    "member": (cmd_member, "decide membership in im Theta"),
    "member-bf": (cmd_member_bf, "bounded brute-force membership search"),
    "vc": (cmd_vc, "vanishing-conjecture instance table"),
    "jc-sums": (cmd_jc_sums, "power sums of d^alpha(H^alpha)/alpha!"),
    "jc-invert": (cmd_jc_invert, "truncated formal inverse of z - H"),
    "hessian": (cmd_hessian, "Hessian matrix and nilpotency"),
    "codim": (cmd_codim, "truncated codimension sweep"),
    "reduce": (cmd_reduce, "reduce a commuting constant-leading family"),
    "ic-check": (cmd_ic_check, "image-conjecture instance table"),
    "examples": (cmd_examples, "scripted worked examples"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nvars", type=int, default=1)
    common.add_argument("--field", default="rational", help="rational | gaussian | fp:P")
    src = common.add_mutually_exclusive_group()
    src.add_argument("--poly", help="polynomial expression")
    src.add_argument("--file", help="JSON polynomial file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-power", type=int, default=4)
    common.add_argument("--truncate", type=int, default=9)
    common.add_argument("--seed", type=int)

    parser = _Parser(prog="opimage", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_)
        if name in ("member-bf", "reduce"):
            sp.add_argument("--op", action="append",
                            help="operator 'a1,...,an;h' meaning sum a_i d_i + h (repeatable)")
        if name == "member-bf":
            sp.add_argument("--dz", type=int, help="z-degree bound for the witness")
            sp.add_argument("--du", type=int, help="u-degree bound for the witness")
        if name == "member":
            sp.add_argument("--witness", action="store_true")
        if name == "vc":
            sp.add_argument("--lambda", dest="lam", help="symbol in u1..un")
            sp.add_argument("--q", help="the polynomial Q")
        if name == "ic-check":
            sp.add_argument("--g", help="the polynomial g")
        if name in ("jc-sums", "jc-invert"):
            sp.add_argument("--map", help="components 'H1;...;Hn'")
        if name == "jc-invert":
            sp.add_argument("--g", help="components of g, ';'-separated (default: identity)")
        if name == "codim":
            sp.add_argument("--degrees", default="8,12,16")
        if name == "examples":
            sp.add_argument("--id", required=True)
            sp.add_argument("--p", type=int, default=5)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    if args.command == "examples" and args.max_power == 4 and args.id == "2.6":
        args.max_power = 5
    try:
        obj, text = handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"opimage: error: {exc}", file=sys.stderr)
        return 2
    except (errors.OpImageError, ZeroDivisionError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, errors.PolySyntaxError):
            err["offset"] = exc.offset
        if hasattr(exc, "pair"):
            err["pair"] = [i + 1 for i in exc.pair]
        print(_dump(err))
        return 1
    except OSError as exc:
        print(_dump({"error": "IOError", "message": str(exc)}))
        return 1
    print(_dump(obj) if args.format == "json" else text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
