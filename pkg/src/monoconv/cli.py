"""Command-line front end: JSON measures/triples in, JSON/CSV out.

Exit codes: 0 success, 2 validation error (bad flags, bad JSON, invalid
parameters), 3 numeric failure (inversion/integration breakdown).
"""

import argparse
import json
import sys

import numpy as np

from . import atomic as atomic_mod
from . import boolean_free, bpmap, moments, semigroup, stable, transforms
from .errors import MonoconvError, UnnormalizedB
from .measures import (
    AtomicMeasure,
    Dirac,
    measure_from_json,
    measure_to_json,
)

CSV_FMT = "{:.17g}"


def _parse_complex(text):
    try:
        re_s, im_s = text.split(",")
        return complex(float(re_s), float(im_s))
    except Exception as exc:
        raise ValueError(f"expected complex flag as 're,im', got {text!r}") from exc


def _parse_grid(text):
    parts = text.split(",")
    if len(parts) not in (3, 4):
        raise ValueError(f"expected grid as 'lo,hi,n[,y0]', got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 2 or hi <= lo:
        raise ValueError("grid needs hi > lo and n >= 2")
    y0 = float(parts[3]) if len(parts) == 4 else None
    return np.linspace(lo, hi, n), y0


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _emit_json(obj, out_path=None):
    text = json.dumps(obj)
    if out_path:
        with open(out_path, "w", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _emit_csv(header, rows, out_path=None):
    lines = [header]
    for row in rows:
        lines.append(",".join(CSV_FMT.format(v) for v in row))
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _atoms_json(gm):
    return {"atoms": [[x, w] for x, w in gm.atoms.atoms]}


def _emit_density(gm, out, atoms_out):
    _emit_csv("x,density", zip(gm.xs.tolist(), gm.density.tolist()), out)
    payload = _atoms_json(gm)
    if atoms_out:
        _emit_json(payload, atoms_out)
    else:
        sys.stderr.write(json.dumps(payload) + "\n")


def _eps_schedule(args):
    lo = getattr(args, "tol_eps_min", None) or 1e-7
    hi = getattr(args, "tol_eps_max", None) or 1e-2
    n = max(3, int(round(2.0 * (np.log10(hi) - np.log10(lo)) + 1)))
    return np.geomspace(hi, lo, n)


def _add_tol_flags(p):
    p.add_argument("--tol-atom-threshold", type=float, default=None,
                   help="atom weight detection threshold (default 1e-5)")
    p.add_argument("--tol-flow-rtol", type=float, default=1e-10)
    p.add_argument("--tol-flow-atol", type=float, default=1e-10)
    p.add_argument("--tol-eps-max", type=float, default=None,
                   help="largest inversion offset (default 1e-2)")
    p.add_argument("--tol-eps-min", type=float, default=None,
                   help="smallest inversion offset (default 1e-7)")


def _is_exact_atomic(m):
    return isinstance(m, (AtomicMeasure, Dirac))


def _as_atomic(m):
    if isinstance(m, Dirac):
        return AtomicMeasure.dirac(m.a)
    return m


def cmd_convolve(args):
    left = measure_from_json(_load_json(args.left))
    right = measure_from_json(_load_json(args.right))
    if _is_exact_atomic(left) and _is_exact_atomic(right):
        out = atomic_mod.monotone_convolve_atomic(_as_atomic(left), _as_atomic(right))
        _emit_json(measure_to_json(out), args.out)
        return 0
    if args.order is None:
        raise ValueError("non-atomic convolution needs --order N (moment mode)")
    mm = moments.moments_of(left, args.order)
    mn = moments.moments_of(right, args.order)
    conv = moments.convolve_moments(mm, mn, args.order)
    _emit_json({"moments": conv.values.tolist()}, args.out)
    return 0


def cmd_bconvolve(args):
    left = measure_from_json(_load_json(args.left))
    right = measure_from_json(_load_json(args.right))
    if _is_exact_atomic(left) and _is_exact_atomic(right):
        out = boolean_free.boolean_convolve(_as_atomic(left), _as_atomic(right))
        _emit_json(measure_to_json(out), args.out)
        return 0
    if args.grid is None:
        raise ValueError("non-atomic boolean convolution needs --grid lo,hi,n")
    xs, _ = _parse_grid(args.grid)
    gm = boolean_free.boolean_convolve(left, right, xs)
    _emit_json(measure_to_json(gm), args.out)
    return 0


def cmd_evolve(args):
    V = semigroup.triple_from_json(_load_json(args.triple))
    rtol, atol = args.tol_flow_rtol, args.tol_flow_atol
    if args.z is not None:
        z0 = _parse_complex(args.z)
        val = complex(semigroup.flow(V, z0, args.t, rtol=rtol, atol=atol))
        _emit_csv("re,im", [(val.real, val.imag)], args.out)
        return 0
    if args.grid is None:
        raise ValueError("evolve needs --z or --grid")
    xs, y0 = _parse_grid(args.grid)
    y0 = 1e-6 if y0 is None else y0
    vals = semigroup.flow(V, xs + 1j * y0, args.t, rtol=rtol, atol=atol)
    _emit_csv("x,re,im", zip(xs.tolist(), vals.real.tolist(), vals.imag.tolist()), args.out)
    return 0


def cmd_density(args):
    V = semigroup.triple_from_json(_load_json(args.triple))
    xs, _ = _parse_grid(args.grid)
    gm = semigroup.markov_kernel(
        V, args.t, 0.0, xs, eps_schedule=_eps_schedule(args),
        flow_rtol=args.tol_flow_rtol, flow_atol=args.tol_flow_atol,
    )
    _emit_density(gm, args.out, args.atoms_out)
    return 0


def cmd_moments(args):
    if args.measure:
        m = measure_from_json(_load_json(args.measure))
        seq = moments.moments_of(m, args.order)
        _emit_json({"moments": seq.values.tolist()}, args.out)
        return 0
    if not args.triple:
        raise ValueError("moments needs --measure or --triple")
    V = semigroup.triple_from_json(_load_json(args.triple))
    r = moments.field_coefficients(V.gamma, V.tau, max(args.order, 1))
    vals = [moments.semigroup_moment(r, args.t, n) if n else 1.0 for n in range(args.order + 1)]
    _emit_json({"moments": vals}, args.out)
    return 0


def _check_injectivity(args):
    m = measure_from_json(_load_json(args.measure))
    h = transforms.as_evaluator(m)
    found = transforms.collision_search(h)
    result = {"injective": found is None, "collision": None, "not_n_divisible_for_n_gt": None}
    if found is not None:
        z1, z2 = found
        result["collision"] = [[z1.real, z1.imag], [z2.real, z2.imag]]
        try:
            rep = transforms.finite_variance_rep(m)
            result["not_n_divisible_for_n_gt"] = transforms.divisibility_bound(rep, found)
        except MonoconvError:
            pass
    return result


def _check_positivity(args):
    m = measure_from_json(_load_json(args.measure))
    if _is_exact_atomic(m):
        rep = transforms.nevanlinna_rep_atomic(_as_atomic(m))
        verdict = transforms.positivity_check(rep)
        return {
            "positive": verdict,
            "evidence": {"b": rep.b, "eta_atoms": [[x, w] for x, w in rep.eta.atoms]},
        }
    from .measures import support_bounds

    lo, hi = support_bounds(m)
    return {"positive": lo >= -1e-12, "evidence": {"support": [lo, hi]}}


def _check_symmetry(args):
    if args.triple:
        V = semigroup.triple_from_json(_load_json(args.triple))
        verdict = moments.symmetry_diagnostic(V.gamma, V.tau, args.order)
        return {"symmetric": verdict, "evidence": {"gamma": V.gamma}}
    m = measure_from_json(_load_json(args.measure))
    seq = moments.moments_of(m, args.order)
    odd = [seq[k] for k in range(1, args.order + 1, 2)]
    return {"symmetric": all(abs(v) < 1e-10 for v in odd), "evidence": {"odd_moments": odd}}


def _check_subordinator(args):
    V = semigroup.triple_from_json(_load_json(args.triple))
    verdict = semigroup.subordinator_check(V)
    failing = None
    if not verdict:
        from .measures import support_bounds, total_mass

        if total_mass(V.tau) > 0:
            lo, _ = support_bounds(V.tau)
            if lo < -1e-12:
                failing = "supp tau not in [0, inf)"
            else:
                inv = semigroup._tau_inverse_moment(V.tau)
                if not np.isfinite(inv):
                    failing = "integral (1/x) d tau diverges"
                else:
                    failing = f"gamma = {V.gamma} < integral (1/x) d tau = {inv}"
        else:
            failing = "negative drift"
    return {"subordinator": verdict, "failing_condition": failing}


def _check_bounded_below(args):
    V = semigroup.triple_from_json(_load_json(args.triple))
    return {"bounded_below": semigroup.bounded_below_check(V)}


def cmd_check(args):
    dispatch = {
        "injectivity": _check_injectivity,
        "positivity": _check_positivity,
        "symmetry": _check_symmetry,
        "subordinator": _check_subordinator,
        "bounded-below": _check_bounded_below,
    }
    result = dispatch[args.property](args)
    _emit_json(result, args.out)
    return 0


def cmd_stable(args):
    p = stable.StableParams(args.alpha, _parse_complex(args.b), _parse_complex(args.c), args.t)
    if args.case:
        sc = stable.stable_support_case(p)
        payload = {
            "case_id": sc.case_id,
            "ac_support": [sc.ac_lo, sc.ac_hi],
            "atom": None if sc.atom is None else [sc.atom[0], sc.atom[1]],
        }
        _emit_json(payload, args.out)
        return 0
    if args.density is None:
        raise ValueError("stable needs --case or --density lo,hi,n")
    xs, _ = _parse_grid(args.density)
    gm = stable.stable_density(p, xs)
    _emit_density(gm, args.out, args.atoms_out)
    return 0


def cmd_bpmap(args):
    obj = _load_json(args.classical)
    if args.reverse:
        V = semigroup.triple_from_json(obj)
        _emit_json(bpmap.triple_to_json(bpmap.lambda_M_inverse(V)), args.out)
    else:
        c = bpmap.triple_from_json(obj)
        _emit_json(semigroup.triple_to_json(bpmap.lambda_M(c)), args.out)
    return 0


def cmd_markov(args):
    V = semigroup.triple_from_json(_load_json(args.triple))
    xs, _ = _parse_grid(args.grid)
    gm = semigroup.markov_kernel(
        V, args.t, args.x, xs, eps_schedule=_eps_schedule(args),
        flow_rtol=args.tol_flow_rtol, flow_atol=args.tol_flow_atol,
    )
    _emit_density(gm, args.out, args.atoms_out)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="monoconv",
        description="Monotone convolution numerics: convolve, evolve, invert, check.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convolve", help="monotone convolution (exact when both atomic)")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--out")
    p.add_argument("--order", type=int, default=None, help="moment mode order for non-atomic input")
    p.set_defaults(fn=cmd_convolve)

    p = sub.add_parser("bconvolve", help="boolean convolution")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--out")
    p.add_argument("--grid", help="inversion grid lo,hi,n for non-atomic input")
    p.set_defaults(fn=cmd_bconvolve)

    p = sub.add_parser("evolve", help="flow H_t(z) of a vector-field triple")
    p.add_argument("--triple", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--z", help="single start point 're,im'")
    p.add_argument("--grid", help="start points lo,hi,n[,y0] on a horizontal line")
    p.add_argument("--out")
    _add_tol_flags(p)
    p.set_defaults(fn=cmd_evolve)

    p = sub.add_parser("density", help="density of the semigroup measure at time t")
    p.add_argument("--triple", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--grid", required=True, help="lo,hi,n")
    p.add_argument("--out")
    p.add_argument("--atoms-out")
    _add_tol_flags(p)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("moments", help="moments of a measure or semigroup member")
    p.add_argument("--measure")
    p.add_argument("--triple")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("check", help="property checks with evidence")
    p.add_argument("property", choices=["injectivity", "positivity", "symmetry",
                                        "subordinator", "bounded-below"])
    p.add_argument("--measure")
    p.add_argument("--triple")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("stable", help="strictly stable family: support case or density")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--b", required=True, help="'re,im'")
    p.add_argument("--c", required=True, help="'re,im'")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--case", action="store_true")
    p.add_argument("--density", help="lo,hi,n")
    p.add_argument("--out")
    p.add_argument("--atoms-out")
    p.set_defaults(fn=cmd_stable)

    p = sub.add_parser("bpmap", help="Bercovici-Pata map between classical and monotone pairs")
    p.add_argument("--classical", required=True)
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_bpmap)

    p = sub.add_parser("markov", help="Markov transition kernel mu_{t,x}")
    p.add_argument("--triple", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--grid", required=True, help="lo,hi,n")
    p.add_argument("--out")
    p.add_argument("--atoms-out")
    _add_tol_flags(p)
    p.set_defaults(fn=cmd_markov)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "tol_atom_threshold", None):
        transforms.ATOM_WEIGHT_THRESHOLD = args.tol_atom_threshold
    try:
        return args.fn(args)
    except UnnormalizedB as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MonoconvError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
