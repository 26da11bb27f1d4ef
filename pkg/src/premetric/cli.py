"""Command-line interface.

One executable exposing the library operations with stable JSON/CSV
payloads on stdout and diagnostics on stderr.  Exit codes: 0 success,
1 domain error (structured JSON object on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import closure as closure_mod
from . import fresnel as fresnel_mod
from . import polyalg, wavekernel
from .errors import PremetricError
from .fixtures import FIXTURES, fixture
from .fresnel import MULTI4
from .mediumio import (canonical_dumps, load_json, medium_from_json,
                       medium_to_json, metric_to_json, parse_metric_spec,
                       poly_from_json, poly_to_json, tr_to_json)
from .metric_hodge import hodge_star
from .scalars import GaussianRational
from .tensor_core import decompose


def _load_medium(spec: str, exact_required: bool):
    if spec in FIXTURES:
        kappa = fixture(spec)
    else:
        kappa = medium_from_json(load_json(spec))
    if exact_required and not kappa.exact:
        raise PremetricError("--exact requested but the medium has float scalars")
    return kappa


def _jsonable(x):
    if isinstance(x, (Fraction,)):
        return str(x)
    if isinstance(x, GaussianRational):
        return [str(x.re), str(x.im)]
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return float(x)


def _emit(obj):
    sys.stdout.write(canonical_dumps(_jsonable(obj)))


def _parse_vec(s: str, n: int):
    parts = [p.strip() for p in s.split(",")]
    if len(parts) != n:
        raise PremetricError(f"expected {n} comma-separated entries, got {len(parts)}")
    out = []
    for p in parts:
        try:
            out.append(Fraction(p))
        except ValueError:
            out.append(float(p))
    return tuple(out)


def cmd_medium(args):
    kappa = _load_medium(args.medium, args.exact)
    if args.op == "decompose":
        dec = decompose(kappa)
        _emit({"principal": medium_to_json(dec.principal)["payload"],
               "skewon": medium_to_json(dec.skewon)["payload"],
               "axion_coeff": dec.axion_coeff,
               "scalar": medium_to_json(kappa)["scalar"]})
    elif args.op == "blocks":
        _emit(medium_to_json(kappa, fmt="blocks"))
    return 0


def cmd_hodge(args):
    g = parse_metric_spec(args.metric)
    _emit(medium_to_json(hodge_star(g)))
    return 0


def cmd_fresnel(args):
    kappa = _load_medium(args.medium, args.exact)
    G = fresnel_mod.tamm_rubilar(kappa)
    if args.op == "tr":
        _emit(tr_to_json(G))
    elif args.op == "eval":
        xi = _parse_vec(args.xi, 4)
        _emit({"xi": list(xi), "value": fresnel_mod.fresnel_eval(G, xi)})
    elif args.op == "roots":
        q = _parse_vec(args.q, 3)
        quartic, roots = fresnel_mod.quartic_in_xi0(G, q)
        out = {"q": list(q),
               "coefficients": list(quartic.c),
               "roots": [{"re": z.real, "im": z.imag, "multiplicity": m}
                         for z, m in roots]}
        if kappa.exact and all(isinstance(x, (int, Fraction)) for x in q):
            out["exact_multiplicities"] = [
                {"multiplicity": m, "factor": [str(c) for c in f]}
                for m, f in fresnel_mod.exact_multiplicity_structure(quartic.c)]
        _emit(out)
    elif args.op == "sample":
        n = args.grid
        r = args.radius
        rows = []
        axis = np.linspace(-r, r, n)
        for x1 in axis:
            for x2 in axis:
                for x3 in axis:
                    v = fresnel_mod.fresnel_eval(G, (1.0, float(x1), float(x2), float(x3)))
                    rows.append((float(x1), float(x2), float(x3), float(v)))
        if args.output == "json":
            _emit({"slice": "xi0=1", "samples": rows})
        else:
            sys.stdout.write("xi1,xi2,xi3,f\n")
            for row in rows:
                sys.stdout.write(",".join(repr(v) for v in row) + "\n")
    elif args.op == "singular":
        rep = fresnel_mod.singular_points(G, args.quadrant)
        _emit({"points": [list(p) for p in rep.points],
               "curve_suspected": rep.curve_suspected,
               "used_square_reduction": rep.used_square_reduction})
    return 0


def cmd_wavekernel(args):
    kappa = _load_medium(args.medium, args.exact)
    xi = _parse_vec(args.xi, 4)
    rep = wavekernel.kernel_report(kappa, xi)
    _emit({"dim_ker_L": rep.dim_ker_L, "dim_V": rep.dim_V,
           "Q": [list(r) for r in rep.Q],
           "det_q": rep.det_q, "fresnel_value": rep.fresnel_value,
           "consistent": rep.consistent,
           "kernel_basis": [list(v) for v in rep.kernel_basis]})
    return 0


def cmd_closure(args):
    kappa = _load_medium(args.medium, args.exact)
    if args.op == "check":
        rep = closure_mod.closure_check(kappa)
        _emit({"holds": rep.holds, "f": rep.f, "residual": rep.residual,
               "skewon_free": closure_mod.skewon_free_check(kappa)})
        return 0 if rep.holds else 1
    rec = closure_mod.reconstruct_metric(kappa)
    _emit({"metric": metric_to_json(rec.g),
           "sign_factor": rec.sign_factor,
           "star_match": rec.star_match,
           "star_match_squared": rec.star_match_squared,
           "f": rec.f,
           "su_det_identity": rec.su_det_identity,
           "chart_jacobian": [list(r) for r in rec.chart_jacobian]})
    return 0


def cmd_invariance(args):
    kappa = _load_medium(args.medium, True) if args.medium else None
    rep = fresnel_mod.invariance_suite(kappa, Fraction(args.f),
                                       trials=args.trials, seed=args.seed)
    _emit({"media_checked": rep.media_checked, "ok": rep.ok,
           "failures": [[f[0], f[1], list(f[2])] for f in rep.failures]})
    return 0 if rep.ok else 1


def _component_arg(s: str):
    if s == "all":
        return list(MULTI4)
    if len(s) == 4 and all(ch in "0123" for ch in s):
        return [tuple(sorted(int(ch) for ch in s))]
    raise PremetricError("component must be four digits 0..3 or 'all'")


def _taylor_worker(payload):
    m, mask, k, threshold = payload
    expr = polyalg.big_identity_expr(*m, var_mask=mask)
    return (m, polyalg.taylor_zero_verify(expr, K=k, var_threshold=threshold))


def cmd_polyid(args):
    comps = _component_arg(args.component)
    mask = {"full": None, "12var": polyalg.MASK_12VAR}[args.mask]
    if args.mode == "pit":
        ok = polyalg.big_identity_pit_screen(trials=args.trials, seed=args.seed,
                                             components=comps)
        _emit({"mode": "pit", "components": ["".join(map(str, m)) for m in comps],
               "trials": args.trials, "seed": args.seed, "ok": ok})
        return 0 if ok else 1
    payloads = [(m, mask, args.k, args.threshold) for m in comps]
    if args.jobs > 1 and len(payloads) > 1:
        import multiprocessing
        with multiprocessing.Pool(args.jobs) as pool:
            results = pool.map(_taylor_worker, payloads)
    else:
        results = [_taylor_worker(p) for p in payloads]
    ok = all(r[1] for r in results)
    _emit({"mode": "taylor", "mask": args.mask, "k": args.k,
           "threshold": args.threshold,
           "results": [["".join(map(str, m)), good] for m, good in results],
           "ok": ok})
    return 0 if ok else 1


def cmd_groebner(args):
    doc = load_json(args.gens)
    vars = tuple(doc["vars"])
    gens = [poly_from_json({"vars": list(vars), "terms": t}) for t in doc["gens"]]
    order = polyalg.order_from_spec(args.order, vars)
    basis = polyalg.buchberger(gens, order, budget_seconds=args.budget)
    _emit({"vars": list(vars), "order": args.order,
           "basis": [poly_to_json(p)["terms"] for p in basis],
           "basis_pretty": [repr(p) for p in basis]})
    return 0


def _add_medium_opts(p, medium_required=True):
    p.add_argument("--medium", required=medium_required,
                   help="fixture name or medium JSON file")
    p.add_argument("--exact", action="store_true",
                   help="require exact rational scalars")
    p.add_argument("--output", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="premetric",
                                 description="Electromagnetic media, Fresnel "
                                             "surfaces, and medium reconstruction")
    sub = ap.add_subparsers(dest="group", required=True)

    p = sub.add_parser("medium", help="decompose | blocks")
    p.add_argument("op", choices=("decompose", "blocks"))
    _add_medium_opts(p)
    p.set_defaults(func=cmd_medium)

    p = sub.add_parser("hodge", help="star")
    p.add_argument("op", choices=("star",))
    p.add_argument("--metric", required=True,
                   help="minkowski | euclidean | diag:a,b,c,d | file.json")
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("fresnel", help="tr | eval | roots | sample | singular")
    p.add_argument("op", choices=("tr", "eval", "roots", "sample", "singular"))
    _add_medium_opts(p)
    p.add_argument("--xi", help="covector, four comma-separated values")
    p.add_argument("--q", help="spatial direction, three comma-separated values")
    p.add_argument("--grid", type=int, default=21)
    p.add_argument("--radius", type=float, default=2.0)
    p.add_argument("--quadrant", default=None, help="sign pattern like +++")
    p.set_defaults(func=cmd_fresnel)

    p = sub.add_parser("wavekernel", help="report")
    p.add_argument("op", choices=("report",))
    _add_medium_opts(p)
    p.add_argument("--xi", required=True)
    p.set_defaults(func=cmd_wavekernel)

    p = sub.add_parser("closure", help="check | reconstruct")
    p.add_argument("op", choices=("check", "reconstruct"))
    _add_medium_opts(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("invariance", help="run the four-identity suite")
    p.add_argument("op", choices=("run",))
    p.add_argument("--medium", default=None)
    p.add_argument("--f", default="7")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("polyid", help="verify the inverse-medium identity")
    p.add_argument("op", choices=("verify",))
    p.add_argument("--component", required=True, help="ijkl digits or 'all'")
    p.add_argument("--mode", choices=("pit", "taylor"), default="pit")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--threshold", type=int, default=27)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--budget", type=float, default=None)
    p.add_argument("--mask", choices=("full", "12var"), default="full")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_polyid)

    p = sub.add_parser("groebner", help="run Buchberger on a generator file")
    p.add_argument("op", choices=("run",))
    p.add_argument("--gens", required=True, help="JSON file with vars and gens")
    p.add_argument("--order", default="grevlex", help="lex:x,y,z or grevlex")
    p.add_argument("--budget", type=float, default=None)
    p.set_defaults(func=cmd_groebner)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except PremetricError as e:
        sys.stderr.write(canonical_dumps(e.payload()))
        return 1
    except FileNotFoundError as e:
        sys.stderr.write(canonical_dumps({"error": "file_not_found", "message": str(e)}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
