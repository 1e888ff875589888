"""Command-line front end: ``quadlat <subcommand> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 parse, usage or
domain error, 3 an enumeration bound was exceeded.
"""
import argparse
import json
import sys
import warnings

from .catalog import (
    assignment_to_k3,
    bb_lattice,
    gamma_v,
    lagrangian_section_lattice,
    lambda8,
    lambda24,
    lambda26,
)
from .criteria import (
    MukaiVector,
    classify_mukai_vector,
    contains_U,
    embed_corank1,
    induced_check,
    mukai_pairing,
)
from .discform import TwoElemInvariants, discriminant_form, primitive_gluings
from .errors import CheckFailed, ParseError, QuadlatError, ResourceBoundExceeded
from .expr import lattice_from_expr
from .isometry import MINUS_IDENTITY, OTHER, TRIVIAL, disc_action, invariant_and_coinvariant, make_isometry
from .lattice import lattice_info
from .regression import verify_paper

OK, FAILED, USAGE, BOUND = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _num(x):
    return str(x)


def _gram(L):
    return [[_num(x) for x in row] for row in L.gram]


def _info(L):
    info = lattice_info(L)
    return {
        "rank": info.rank,
        "signature": list(info.signature),
        "determinant": _num(info.determinant),
        "even": info.even,
        "invariant_factors": [_num(d) for d in info.disc_summary],
    }


def _disc(L):
    A = discriminant_form(L)
    return {
        "orders": [_num(d) for d in A.orders],
        "q": [_num(A.q(g)) for g in A.generators()],
        "b": [[_num(A.b(x, y)) for y in A.generators()] for x in A.generators()],
        "length": A.length,
        "exponent": _num(A.exponent),
    }


def _verdict(v):
    out = {"state": v.state}
    if v.witness is not None:
        out["witness"] = [[_num(x) for x in w] for w in v.witness]
    if v.certificate is not None:
        out["certificate"] = v.certificate
    if v.bound is not None:
        out["bound"] = v.bound
    comp = v.detail.get("complement")
    if comp is not None:
        out["complement"] = _gram(comp)
    for k, val in v.detail.items():
        if k != "complement":
            out.setdefault("detail", {})[k] = val if isinstance(val, (bool, str)) else _num(val)
    return out


def _read_matrix(path):
    with open(path) as fh:
        return [[int(x) for x in line.split()] for line in fh if line.strip()]


def _ints(text):
    return [int(x) for x in text.split(",")]


# --- subcommands ----------------------------------------------------------------


def cmd_info(a):
    return _info(lattice_from_expr(a.expr)), OK


def cmd_disc(a):
    return _disc(lattice_from_expr(a.expr)), OK


def cmd_invariant(a):
    L = lattice_from_expr(a.expr)
    g = make_isometry(L, _read_matrix(a.isometry))
    T, S = invariant_and_coinvariant(L, [g])
    return {
        "order": g.order,
        "invariant": {"basis": [[_num(x) for x in r] for r in T.basis], "gram": _gram(T.lattice())},
        "coinvariant": {"basis": [[_num(x) for x in r] for r in S.basis], "gram": _gram(S.lattice())},
        "disc_action": disc_action(L, g).classification,
    }, OK


def cmd_gluings(a):
    T, W = lattice_from_expr(a.left), lattice_from_expr(a.right)
    out = [dict(_info(M), gram=_gram(M)) for M in primitive_gluings(T, W, a.torsion)]
    return {"gluings": out}, OK


def cmd_contains_u(a):
    v = contains_U(lattice_from_expr(a.expr), a.height, extended=a.extended)
    return _verdict(v), OK


_TARGETS = {"l24": lambda24, "l8": lambda8, "l26": lambda26}


def cmd_embed(a):
    v, S = embed_corank1(_TARGETS[a.target](), a.square)
    return {"v": [_num(x) for x in v], "complement": _info(S.lattice())}, OK


_ACTIONS = {"trivial": TRIVIAL, "minus": MINUS_IDENTITY, "other": OTHER}


def cmd_induced(a):
    mode = "symplectic" if a.mode == "sym" else "nonsymplectic"
    co = lattice_from_expr(a.coinvariant) if a.coinvariant else None
    rep = induced_check(a.type, a.n, lattice_from_expr(a.t), a.order, mode,
                        _ACTIONS[a.disc_action], coinvariant=co, height_bound=a.height)
    return {
        "disc_action": rep.disc_action,
        "candidates": [_gram(c) for c in rep.candidates],
        "verdicts": [_verdict(v) for v in rep.verdicts],
        "symplectic_minus2": rep.symplectic_minus2,
        "final": rep.final,
        "notes": list(rep.notes),
    }, OK


def cmd_lagrangian(a):
    s = lagrangian_section_lattice(a.type, a.n)
    return {"name": s.name, "gram": _gram(s.lattice), "raw_gram": [[_num(x) for x in r] for r in s.raw_gram],
            "divisibility": s.divisibility}, OK


def cmd_gamma_v(a):
    G = gamma_v()
    same = discriminant_form(G).is_isomorphic(discriminant_form(bb_lattice("Og10")))
    return dict(_info(G), disc_matches_og10=same), OK


def cmd_assign(a):
    out = assignment_to_k3(TwoElemInvariants(a.r, a.a, a.delta))
    return {"r": out.r, "a": out.a, "delta": out.delta}, OK


def _mukai(text, ns, effective):
    vals = _ints(text)
    if len(vals) != ns.rank + 2:
        raise ParseError(0, (f"{ns.rank + 2} comma-separated integers",), text)
    return MukaiVector(vals[0], tuple(vals[1:-1]), vals[-1], ns, effective)


def cmd_mukai(a):
    ns = lattice_from_expr(a.gram)
    v = _mukai(a.v, ns, a.v_effective)
    w = _mukai(a.w, ns, a.w_effective) if a.w else v
    return {
        "v_square": _num(v.square),
        "w_square": _num(w.square),
        "pairing": _num(mukai_pairing(v, w)),
        "v_class": classify_mukai_vector(v),
        "w_class": classify_mukai_vector(w),
    }, OK


def cmd_verify(a):
    try:
        records = verify_paper(a.check)
    except KeyError:
        raise ParseError(0, ("known check id",), a.check) from None
    return {"checks": records}, OK if all(r["pass"] for r in records) else FAILED


# --- plain-text rendering --------------------------------------------------------


def _render(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_short(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}- {_short(v)}")
    return lines


def _flat(v):
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)


def _short(v):
    if isinstance(v, list):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    return "-" if v is None else str(v)


def build_parser():
    p = _Parser(prog="quadlat", description="Exact computations with even lattices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("info", cmd_info, "rank, signature, determinant, parity")
    sp.add_argument("expr")
    sp = add("disc", cmd_disc, "discriminant quadratic form")
    sp.add_argument("expr")
    sp = add("invariant", cmd_invariant, "invariant and co-invariant lattices of an isometry")
    sp.add_argument("expr")
    sp.add_argument("--isometry", required=True, metavar="FILE")
    sp = add("gluings", cmd_gluings, "primitive gluings of two lattices")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--torsion", type=int)
    sp = add("contains-u", cmd_contains_u, "look for a hyperbolic-plane summand")
    sp.add_argument("expr")
    sp.add_argument("--height", type=int, default=2)
    sp.add_argument("--extended", action="store_true", help="also try the mod-p isotropy certificate")
    sp = add("embed-corank1", cmd_embed, "vector of given square and its complement")
    sp.add_argument("--target", choices=sorted(_TARGETS), required=True)
    sp.add_argument("--square", type=int, required=True)
    sp = add("induced-check", cmd_induced, "numerically induced test for a group of prime order")
    sp.add_argument("--type", choices=["k3n", "kum"], required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", required=True, metavar="EXPR")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--mode", choices=["sym", "nonsym"], required=True)
    sp.add_argument("--disc-action", choices=sorted(_ACTIONS), required=True)
    sp.add_argument("--coinvariant", metavar="EXPR")
    sp.add_argument("--height", type=int, default=2)
    sp = add("lagrangian", cmd_lagrangian, "lattice of fibre and section classes")
    sp.add_argument("--type", choices=["k3n", "kum", "og10"], required=True)
    sp.add_argument("--n", type=int)
    add("gamma-v", cmd_gamma_v, "index-2 gluing of v^perp with <-6>")
    sp = add("assign", cmd_assign, "(r, a, delta) -> (r-1, a+1, 1)")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--delta", type=int, choices=[0, 1], required=True)
    sp = add("mukai", cmd_mukai, "Mukai pairing and positivity")
    sp.add_argument("--gram", required=True, metavar="EXPR")
    sp.add_argument("--v", required=True, metavar="r,l...,s")
    sp.add_argument("--w", metavar="r,l...,s")
    sp.add_argument("--v-effective", action="store_true")
    sp.add_argument("--w-effective", action="store_true")
    sp = add("verify-paper", cmd_verify, "run the regression table")
    sp.add_argument("--check", metavar="ID")
    return p


def run_command(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            payload, code = args.fn(args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except CheckFailed as err:
        print(f"check failed: {err}", file=sys.stderr)
        return FAILED
    except ResourceBoundExceeded as err:
        print(f"resource bound exceeded: {err}", file=sys.stderr)
        return BOUND
    except (QuadlatError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    if args.json:
        print(json.dumps(payload, default=_num), file=out)
    elif args.command == "verify-paper":
        for r in payload["checks"]:
            print(f"{'PASS' if r['pass'] else 'FAIL'}  {r['id']}", file=out)
    else:
        print("\n".join(_render(payload)), file=out)
    return code


def main(argv=None):
    try:
        code = run_command(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else USAGE
    sys.exit(code)
