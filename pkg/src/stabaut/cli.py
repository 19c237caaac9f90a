"""Command-line interface: ``stabaut <group> <command> [flags]``.

Exit codes: 0 success, 1 failed check or failed computation, 2 usage or
input error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any

from . import acceptance
from .codes import Element, equals, tabulate
from .errors import CapacityError, StabautError
from .perms import dimension_rep
from .psi import admissible_levels, defect_scan, degree
from .serialize import element_from_dict, load_json, point_from_arg, psi_from_dict, subshift_from_dict, to_jsonable
from .subshifts import (finite_approximations, galois_check, is_chain_recurrent, language, markov_approximation,
                        metric, stabilizer_family, stp, verraum_subshift)
from .subshifts import fix as fix_subshift
from .symbolic import enumerate_periodic
from .twotrack import (commutator_identity_check, gamma, gamma_identity_check, g2_rigidity_check, make_g,
                       maximize_top_period, orbit_separation_check, trackswap)
from .verraum import (consistency_check, continuity_probe, freeness_check, global_verraum, local_verraum,
                      profinite_recovery, shift_commutation_check)


# -- argument helpers -----------------------------------------------------

def _alphabet(args, data: dict | None = None) -> int:
    if data is not None and "alphabet" in data:
        return int(data["alphabet"])
    if args.alphabet is None:
        raise ValueError("--alphabet is required here")
    return args.alphabet


def _elements(args) -> list[Element]:
    if not args.auto:
        raise ValueError("at least one --auto is required")
    out = []
    for src in args.auto:
        data = load_json(src)
        n = data.get("alphabet", args.alphabet) if isinstance(data, dict) else args.alphabet
        out.append(element_from_dict(data, n))
    return out


def _psi(args, n: int | None = None):
    if not args.psi:
        raise ValueError("--psi is required")
    data = load_json(args.psi)
    if n is not None and args.alphabet is None and "alphabet" not in data:
        return psi_from_dict(data, n)
    return psi_from_dict(data, _alphabet(args, data))


def _subshifts(args) -> list:
    if not args.input:
        raise ValueError("--in is required")
    return [subshift_from_dict(load_json(src)) for src in args.input]


def _point(args):
    if not args.point:
        raise ValueError("--point is required")
    return point_from_arg(args.point, args.alphabet)


def _need(value, flag: str):
    if value is None:
        raise ValueError(f"{flag} is required")
    return value


def _ints(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        return [int(a) for a in json.loads(text)]
    return [int(a) for a in text.split(",") if a]


def _word(text: str) -> tuple[int, ...]:
    return tuple(int(c, 36) for c in text)


def _check(report: dict, *keys: str) -> dict:
    report["_ok"] = all(bool(report[k]) for k in keys)
    return report


# -- handlers -------------------------------------------------------------

def per_enumerate(args):
    n, k = _alphabet(args), _need(args.level, "--level")
    pts = enumerate_periodic(n, k, capacity=args.capacity)
    return [{"index": i, "block": p.to_string(), "minimal_period": p.minimal_period} for i, p in enumerate(pts)]


def auto_apply(args):
    f = _elements(args)[0]
    x = _point(args)
    return {"input": x, "image": f.apply(x)}


def auto_compose(args):
    fs = _elements(args)
    word = Element([a for f in fs for a in f.atoms], n=fs[0].n)
    if args.tabulate:
        return tabulate(word).to_dict()
    return word


def auto_equals(args):
    fs = _elements(args)
    if len(fs) != 2:
        raise ValueError("equals takes exactly two --auto arguments")
    return {"equal": equals(fs[0], fs[1], args.capacity)}


def dim_rep(args):
    f = _elements(args)[0]
    v = dimension_rep(f)
    return {"primes": list(v.primes), "exponents": list(v.exponents), "inert": v.is_zero()}


def psi_degree(args):
    d, orientation = degree(_psi(args), capacity=args.capacity)
    return {"degree": d, "orientation": orientation}


def psi_defect(args):
    psi = _psi(args)
    k = _need(args.level, "--level")
    return {"level": k, "defective": defect_scan(psi, k, args.seed, args.capacity)}


def psi_iset(args):
    psi = _psi(args)
    return {"levels": admissible_levels(psi, args.max_level or 8, args.capacity)}


def verraum_local(args):
    psi = _psi(args)
    k = _need(args.level, "--level")
    t = local_verraum(psi, k, args.seed, capacity=args.capacity)
    smaller = [j for j in admissible_levels(psi, k, args.capacity) if j < k and k % j == 0]
    checks = dict(t.checks)
    checks["consistency"] = all(consistency_check(psi, j, k // j, args.capacity) for j in smaller)
    checks["shift_commutation"] = shift_commutation_check(psi, k, args.capacity)
    report = {"level": k, "table": t.table, "checks": checks}
    report["_ok"] = checks["consistency"] and checks["shift_commutation"]
    return report


def verraum_global(args):
    if args.alphabet is None and args.psi and "alphabet" in load_json(args.psi):
        args.alphabet = int(load_json(args.psi)["alphabet"])
    x = _point(args)
    psi = _psi(args, x.n)
    return {"input": x, "image": global_verraum(psi, x, args.capacity)}


def verraum_consistency(args):
    psi = _psi(args)
    levels = admissible_levels(psi, args.max_level or 8, args.capacity)
    rows = [{"small": k, "large": big, "holds": consistency_check(psi, k, big // k, args.capacity)}
            for k in levels for big in levels if big > k and big % k == 0]
    rows += [{"small": k, "large": k, "holds": shift_commutation_check(psi, k, args.capacity), "check": "shift"}
             for k in levels]
    return {"pairs": rows, "_ok": all(r["holds"] for r in rows)}


def verraum_profinite(args):
    psi = _psi(args)
    return {"residues": profinite_recovery(psi, args.max_level or 6, args.capacity)}


def verraum_probe(args):
    psi = _psi(args)
    rows = continuity_probe(psi, args.cutoff or 3, args.capacity)
    return [{"input_radius": r, "worst_output_radius": w} for r, w in rows]


def verraum_freeness(args):
    psi = _psi(args)
    f = _elements(args)[0]
    k = _need(args.level, "--level")
    return _check({"level": k, "holds": freeness_check(psi, f, k, args.capacity)}, "holds")


def subshift_language(args):
    y = _subshifts(args)[0]
    m = _need(args.level or args.cutoff, "--level")
    return {"length": m, "words": sorted("".join(map(str, w)) for w in language(y, m))}


def subshift_distance(args):
    ys = _subshifts(args)
    if len(ys) != 2:
        raise ValueError("distance takes exactly two --in arguments")
    d = metric(ys[0], ys[1], args.cutoff or 8)
    return {"distance": str(d.value), "exact": d.exact}


def subshift_markov(args):
    return markov_approximation(_subshifts(args)[0], _need(args.level, "--level"))


def subshift_chain_recurrent(args):
    return {"chain_recurrent": is_chain_recurrent(_subshifts(args)[0])}


def subshift_approx(args):
    return finite_approximations(_subshifts(args)[0], _need(args.level, "--level"))


def subshift_stp(args):
    y = _subshifts(args)[0]
    fam = stabilizer_family(y, args.cutoff or 4, seed=args.seed)
    members = stp(y, fam)
    return {"family": len(fam), "members": len(members), "stabilizers": members}


def subshift_fix(args):
    fs = _elements(args)
    return fix_subshift(fs, fs[0].n, args.capacity)


def subshift_galois(args):
    y = _subshifts(args)[0]
    cutoff = args.cutoff or 6
    rep = galois_check(y, stabilizer_family(y, cutoff, seed=args.seed), cutoff)
    return _check(rep, "holds")


def subshift_push(args):
    y = _subshifts(args)[0]
    psi = _psi(args, y.n)
    rep = verraum_subshift(psi, y, args.cutoff or 6, capacity=args.capacity)
    return {"kind": rep["kind"], "image": rep["image"]}


def _gadget(args, n: int) -> Element:
    data = load_json(_need(args.spec, "--spec"))
    kind = data.get("kind")
    ell = int(data.get("ell", 1))
    if kind == "g":
        return make_g(n, _word(data["w"]) if isinstance(data["w"], str) else data["w"], data["pi"], ell)
    if kind == "gamma":
        return gamma(n, ell, int(data.get("power", 1)))
    if kind == "trackswap":
        return trackswap(n, ell)
    raise ValueError(f"unknown gadget kind {kind!r}")


def gadget_element(args):
    n = _alphabet(args)
    f = _gadget(args, n)
    if args.point:
        x = point_from_arg(args.point, n)
        return {"input": x, "image": f.apply(x)}
    return f


def gadget_gamma(args):
    n = _alphabet(args)
    return _check({"identity": gamma_identity_check(n, capacity=args.capacity), "gamma": gamma(n)}, "identity")


def gadget_commutator(args):
    n = _alphabet(args)
    rep = {"convention": args.convention,
           "holds": commutator_identity_check(n, _word(_need(args.w1, "--w1")), _word(_need(args.w2, "--w2")),
                                              _ints(_need(args.pi1, "--pi1")), _ints(_need(args.pi2, "--pi2")),
                                              args.convention, capacity=args.capacity)}
    return _check(rep, "holds")


def gadget_maximize(args):
    x = _point(args)
    f, y = maximize_top_period(x)
    return {"input": x, "image": y, "element": f}


def gadget_separate(args):
    rep = orbit_separation_check(_need(args.level, "--level"), args.alphabet or 5, seed=args.seed)
    return _check(rep, "holds")


def gadget_rigidity(args):
    rep = g2_rigidity_check(_psi(args), bound=args.max_level or 4, capacity=args.capacity)
    return _check(rep, "holds")


def suite_acceptance(args):
    numbers = _ints(args.only) if args.only else None
    echo = args.output == "text"
    results = acceptance.run_all(numbers, echo=echo)
    rows = [r.to_dict() for r in results]
    return {"criteria": rows, "_ok": all(r["passed"] and r["within_budget"] for r in rows), "_echoed": echo}


COMMANDS = {
    "per": {"enumerate": per_enumerate},
    "auto": {"apply": auto_apply, "compose": auto_compose, "equals": auto_equals},
    "dim": {"rep": dim_rep},
    "psi": {"degree": psi_degree, "defect": psi_defect, "iset": psi_iset},
    "verraum": {"local": verraum_local, "global": verraum_global, "consistency": verraum_consistency,
                "profinite": verraum_profinite, "probe": verraum_probe, "freeness": verraum_freeness},
    "subshift": {"language": subshift_language, "distance": subshift_distance, "markov": subshift_markov,
                 "chain-recurrent": subshift_chain_recurrent, "approx": subshift_approx, "stp": subshift_stp,
                 "fix": subshift_fix, "galois": subshift_galois, "push": subshift_push},
    "gadget": {"g": gadget_element, "gamma": gadget_gamma, "commutator": gadget_commutator,
               "maximize": gadget_maximize, "separate": gadget_separate, "rigidity": gadget_rigidity},
    "suite": {"acceptance": suite_acceptance},
}


# -- parser and output ----------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alphabet", type=int, help="alphabet size n")
    p.add_argument("--level", type=int, help="period or level k")
    p.add_argument("--max-level", type=int, help="upper bound on levels")
    p.add_argument("--cutoff", type=int, help="word-length cutoff or probe depth")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    p.add_argument("--output", choices=["json", "csv", "text"], default="json")
    p.add_argument("--capacity", type=int, default=10**6, help="largest point set to enumerate")
    p.add_argument("--auto", action="append", help="element as inline JSON or a file (repeatable)")
    p.add_argument("--psi", help="group automorphism as inline JSON or a file")
    p.add_argument("--in", dest="input", action="append", help="subshift as inline JSON or a file (repeatable)")
    p.add_argument("--point", help="periodic point: a block like 0110, inline JSON or a file")
    p.add_argument("--spec", help="gadget spec as inline JSON or a file")
    p.add_argument("--w1")
    p.add_argument("--w2")
    p.add_argument("--pi1")
    p.add_argument("--pi2")
    p.add_argument("--convention", choices=["aba-1b-1", "a-1b-1ab"], default="aba-1b-1")
    p.add_argument("--tabulate", action="store_true", help="compose into one explicit block code")
    p.add_argument("--only", help="comma separated criterion numbers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabaut", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    for group, commands in COMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="command", required=True)
        for name, fn in commands.items():
            _common(sub.add_parser(name, help=(fn.__doc__ or "").strip() or None))
    return parser


def _csv(result: Any) -> str:
    buf = io.StringIO()
    rows = result
    if isinstance(result, dict):
        lists = [k for k, v in result.items() if isinstance(v, list) and v and isinstance(v[0], dict)]
        rows = result[lists[0]] if len(lists) == 1 else [{"key": k, "value": v} for k, v in result.items()]
    if not isinstance(rows, list):
        rows = [{"value": rows}]
    if rows and not isinstance(rows[0], dict):
        rows = [{"value": r} for r in rows]
    fields = sorted({k for r in rows for k in r}) if rows else ["value"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in r.items()})
    return buf.getvalue()


def emit(result: Any, fmt: str) -> None:
    data = to_jsonable(result)
    if fmt == "csv":
        sys.stdout.write(_csv(data))
    else:
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=None if fmt == "json" else 2) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fn = COMMANDS[args.group][args.command]
    try:
        result = fn(args)
    except CapacityError as exc:
        print(f"capacity exceeded (--capacity {args.capacity}): {exc}", file=sys.stderr)
        return 3
    except StabautError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    ok = True
    if isinstance(result, dict) and "_ok" in result:
        ok = bool(result.pop("_ok"))
        echoed = result.pop("_echoed", False)
        if echoed:
            return 0 if ok else 1
    emit(result, args.output)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
