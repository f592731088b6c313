"""Command-line interface.

Exit codes: 0 when the input is valid, 1 when it is well-formed but
mathematically invalid, 2 for usage, parse and schema errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Callable, Sequence

from . import __version__
from .abchars import FactoredElement, kummer_subgroup
from .decomp import (
    MetabelianCoverData,
    check_metabelian_cover_data,
    corollary_counts,
    decomposition_plan,
)
from .errors import (
    BoundExceeded,
    MetacoverError,
    ParseError,
    SchemaError,
    TowerError,
)
from .funfield import (
    alpha_of,
    define_sigma,
    define_tau,
    dicyclic_build,
    norm_alpha_identity,
    p_power_descent,
    t2_build,
    tower_build,
    verify_group_action,
    TowerSpec,
)
from .groups import (
    MetabelianPresentation,
    MetacyclicParams,
    iso_check,
    validate_metabelian,
    validate_metacyclic,
)
from .pardini import (
    BuildingData,
    ReducedBuildingData,
    canonical_classes,
    check_fundamental,
    complete_reduced,
    cover_equations,
    parse_building_json,
)
from .parser import parse_ratfunc
from .ratfunc import RatFunc
from .reps import character_table, irreps, nu_formula, orbits
from .schemas import validate as validate_schema

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class Invalid(Exception):
    """Raised by a handler to report mathematically invalid input (exit 1)."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload


def dump_json(obj) -> str:
    """Canonical JSON text: re-emitting a parsed document gives the same bytes."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _load(path: str, schema: str):
    data = _load_any(path)
    validate_schema(data, schema)
    return data


def _params(args) -> MetacyclicParams:
    return MetacyclicParams(args.m, args.k, args.t, args.r)


def _params_from_text(text: str) -> MetacyclicParams:
    try:
        m, k, t, r = (int(x) for x in text.split(","))
    except ValueError:
        raise SchemaError(f"expected m,k,t,r but got {text!r}") from None
    return MetacyclicParams(m, k, t, r)


def _require(p: MetacyclicParams) -> None:
    report = validate_metacyclic(p)
    if not report.valid:
        raise Invalid(
            f"{p} is not a valid presentation: " + "; ".join(c.symbol for c in report.failures),
            report.to_json(),
        )


# -- handlers: each returns (text, json_payload) ------------------------------


def cmd_group_info(args):
    p = _params(args)
    report = validate_metacyclic(p)
    payload = report.to_json()
    if not report.valid:
        raise Invalid(
            f"{p} invalid: " + "; ".join(c.symbol for c in report.failures), payload
        )
    lines = [
        f"{p}: valid",
        f"|G| = {p.order}",
        f"ord(τ) = {report.tau_order}",
        "split" if report.split else "nonsplit",
        "abelian" if report.abelian else "nonabelian",
    ]
    if report.cyclic:
        lines.append("cyclic (gcd(k, m) = 1)")
    if not report.t_minimal_heuristic:
        lines.append("note: a proper divisor t' of t also has r^t' ≡ 1 (mod m) (heuristic)")
    return "\n".join(lines), payload


def cmd_group_iso(args):
    p1, p2 = _params_from_text(args.p1), _params_from_text(args.p2)
    _require(p1)
    _require(p2)
    same = iso_check(p1, p2, bound=args.bound)
    payload = {"first": p1.to_json(), "second": p2.to_json(), "isomorphic": same}
    return f"{p1} {'≅' if same else '≇'} {p2}", payload


def cmd_reps_list(args):
    p = _params(args)
    _require(p)
    irr = irreps(p)
    payload = {
        "params": p.to_json(),
        "nu": len(irr),
        "nu_formula": nu_formula(p),
        "irreps": [ir.to_json() for ir in irr],
    }
    lines = [f"{p}: {len(irr)} irreducible representations (dims {','.join(str(ir.dim) for ir in irr)})"]
    for ir in irr:
        lines.append(
            f"  orbit {{{','.join(map(str, ir.orbit.elements))}}} theta=zeta({p.m * p.t})^{ir.theta_exponent} dim {ir.dim}"
        )
    return "\n".join(lines), payload


def cmd_reps_table(args):
    p = _params(args)
    _require(p)
    table = character_table(p, bound=args.bound)
    payload = table.to_json()
    payload["class_count"] = len(table.classes)
    return table.render(approx=args.approx), payload


def cmd_orbits(args):
    if args.m < 1 or math.gcd(args.r, args.m) != 1:
        raise Invalid(f"gcd(r, m) ≠ 1 for m={args.m}, r={args.r}")
    orbs = orbits(args.m, args.r)
    payload = {"m": args.m, "r": args.r, "orbits": [o.to_json() for o in orbs]}
    text = "\n".join("{" + ",".join(map(str, o.elements)) + f"}} size {o.size}" for o in orbs)
    return text, payload


def cmd_decompose(args):
    p = _params(args)
    _require(p)
    plan = decomposition_plan(p, bound=args.bound)
    return plan.render(), plan.to_json()


def cmd_corollary(args):
    p = _params(args)
    _require(p)
    counts = corollary_counts(p)
    payload = {"params": p.to_json(), **counts.to_json()}
    return f"{p}: b = {counts.b}, h = {counts.h}", payload


def _building(path: str):
    data = _load(path, "building_data")
    return data, parse_building_json(data)


def cmd_abelian_check(args):
    _, (group, model, labels, entries, _) = _building(args.file)
    bd = BuildingData(group, model, labels, dict(entries))
    bad = check_fundamental(bd)
    payload = {"valid": not bad, "violations": [v.to_json() for v in bad]}
    if bad:
        raise Invalid("fundamental relations fail:\n" + "\n".join(f"  {v}" for v in bad), payload)
    return f"building data valid ({group.order} characters, {len(labels)} labels)", payload


def _reduced(path: str):
    data, (group, model, labels, entries, k_w) = _building(path)
    rbd = ReducedBuildingData(group, model, labels, [c for c, _ in entries], [x for _, x in entries])
    return rbd, k_w


def cmd_abelian_complete(args):
    rbd, _ = _reduced(args.file)
    bd = complete_reduced(rbd)
    payload = bd.to_json()
    lines = [f"L_{chi} = {bd.L[chi]}" for chi in sorted(bd.L)]
    return "\n".join(lines), payload


def cmd_abelian_equations(args):
    _, (group, model, labels, entries, _) = _building(args.file)
    bd = BuildingData(group, model, labels, dict(entries))
    eqs = cover_equations(bd)
    return "\n".join(eqs), {"equations": eqs}


def cmd_abelian_canonical(args):
    rbd, k_w = _reduced(args.file)
    if k_w is None:
        raise SchemaError("canonical needs K_W in the input file")
    complete_reduced(rbd)
    cc = canonical_classes(rbd, k_w, rbd.group.order)
    payload = {"n": rbd.group.order, **cc.to_json()}
    text = "\n".join(
        [
            f"c1(L') = {cc.c1_Lprime}",
            f"K_V = f^*({cc.K_V_descent})",
            f"D = {cc.branch_total}",
            cc.pullback_rule,
        ]
    )
    if not cc.totally_ramified:
        text += "\nnote: some inertia group is a proper subgroup, so f^*D = n*R_red does not apply"
    return text, payload


def cmd_metabelian_check(args):
    raw = _load_any(args.file)
    if "presentation" in raw:
        validate_schema(raw, "metabelian_cover")
        cover = MetabelianCoverData.from_json(raw)
        pres_report = validate_metabelian(cover.presentation)
        if not pres_report.valid:
            raise Invalid("; ".join(pres_report.violations), pres_report.to_json())
        report = check_metabelian_cover_data(cover)
        payload = {"presentation": pres_report.to_json(), "cover_data": report.to_json()}
        if not report.valid:
            raise Invalid("\n".join(str(x) for x in report.mismatches), payload)
        return "presentation and cover data consistent", payload
    validate_schema(raw, "metabelian")
    pres = MetabelianPresentation.from_json(raw)
    report = validate_metabelian(pres)
    if not report.valid:
        raise Invalid("; ".join(report.violations), report.to_json())
    return f"valid metabelian presentation of order {pres.order} (associativity: {report.associativity})", report.to_json()


def _load_any(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from None
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    return data


def _construction_result(build):
    payload = build.to_json()
    if not build.valid:
        raise Invalid("failed: " + ", ".join(build.report.failures or ["defining relation"]), payload)
    checks = "\n".join(f"  {name}: ok" for name, _ in build.report.checks)
    return f"tower verified\n{checks}\n  {build.relation_text}: ok", payload


def cmd_field_t2(args):
    a = parse_ratfunc(args.a)
    if args.P_w is not None:
        P = (parse_ratfunc(args.P), parse_ratfunc(args.P_w))
        order = math.lcm(a.order, P[0].order, P[1].order)
        P = tuple(x.lift(order) for x in P)
    else:
        P = parse_ratfunc(args.P)
    f = parse_ratfunc(args.f) if args.f is not None else None
    return _construction_result(t2_build(args.m, args.k, args.r, a, P, f))


def cmd_field_dicyclic(args):
    c, d, f = (parse_ratfunc(x) for x in (args.c, args.d, args.f))
    return _construction_result(dicyclic_build(args.n, c, d, f))


def cmd_field_verify(args):
    data = _load(args.file, "tower")
    m, k, t, r = data["m"], data["k"], data["t"], data["r"]
    parsed = {
        "f": parse_ratfunc(data["f"]),
        "g": [parse_ratfunc(x) for x in data["g"]],
        "tau": {key: [parse_ratfunc(x) for x in val] for key, val in data["tau"].items()},
    }
    exprs = [parsed["f"], *parsed["g"], *(x for v in parsed["tau"].values() for x in v)]
    order = math.lcm(data.get("N", 1), m, t, *(x.order for x in exprs))

    def pad(items):
        items = [x.lift(order) for x in items]
        if len(items) > t:
            raise SchemaError(f"at most t = {t} coefficients in powers of w are allowed")
        return tuple(items) + (RatFunc.zero(order),) * (t - len(items))

    spec = TowerSpec(order, t, parsed["f"].lift(order), m, pad(parsed["g"]), r, k)
    alg = tower_build(spec)
    sigma = define_sigma(alg)
    if "alpha" in parsed["tau"]:
        tau = define_tau(alg, alpha=pad(parsed["tau"]["alpha"]))
    else:
        tau = define_tau(alg, P=pad(parsed["tau"]["P"]))
    report = verify_group_action(alg, sigma, tau, spec.params)
    payload = {"action": report.to_json()}
    if not report.valid:
        raise Invalid("group relations fail: " + ", ".join(report.failures), payload)
    alpha = alpha_of(alg, tau, sigma)
    norm_ok = norm_alpha_identity(alg, tau, alpha)
    descent = p_power_descent(alg, tau)
    payload.update(
        {
            "alpha": alpha.to_json(),
            "norm_identity": norm_ok,
            "P": descent.P.to_json(),
            "u": descent.u,
        }
    )
    if not norm_ok:
        raise Invalid("N(α)·g^c ≠ ζ_m^k", payload)
    text = "\n".join(
        [f"  {name}: ok" for name, _ in report.checks]
        + [f"  α = {alpha}", "  N(α)·g^c = ζ_m^k: ok", f"  P = {descent.P}, u = {descent.u}"]
    )
    return "tower verified\n" + text, payload


def cmd_kummer(args):
    data = _load(args.file, "kummer")
    elements = [FactoredElement.from_json(item) for item in data["elements"]]
    factors = kummer_subgroup(elements, data["n"])
    text = " × ".join(f"Z/{d}" for d in factors) if factors else "trivial group"
    return f"Δ ≅ {text}", {"n": data["n"], "invariant_factors": factors, "order": math.prod(factors)}


# -- argument parsing --------------------------------------------------------


def _add_params(p: argparse.ArgumentParser) -> None:
    for name in ("m", "k", "t", "r"):
        p.add_argument(f"--{name}", type=int, required=True)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="metacover", description=__doc__.splitlines()[0])
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def leaf(parent, name: str, handler: Callable, params: bool = False, file: bool = False, help: str = ""):
        p = parent.add_parser(name, help=help)
        _add_common(p)
        if params:
            _add_params(p)
        if file:
            p.add_argument("file")
        p.set_defaults(handler=handler)
        return p

    group = sub.add_parser("group", help="metacyclic presentations").add_subparsers(dest="action", required=True)
    leaf(group, "info", cmd_group_info, params=True, help="validate and describe G(m,k,t,r)")
    iso = leaf(group, "iso", cmd_group_iso, help="isomorphism test for orders ≤ 64")
    iso.add_argument("--p1", required=True, metavar="m,k,t,r")
    iso.add_argument("--p2", required=True, metavar="m,k,t,r")
    iso.add_argument("--bound", type=int, default=64)

    reps = sub.add_parser("reps", help="irreducible representations").add_subparsers(dest="action", required=True)
    leaf(reps, "list", cmd_reps_list, params=True, help="orbits, theta values and dimensions")
    table = leaf(reps, "table", cmd_reps_table, params=True, help="exact character table")
    table.add_argument("--approx", action="store_true", help="show floating-point values (display only)")
    table.add_argument("--bound", type=int, default=4096)

    orb = leaf(sub, "orbits", cmd_orbits, help="orbits of l -> r l on Z/m")
    orb.add_argument("--m", type=int, required=True)
    orb.add_argument("--r", type=int, required=True)
    dec = leaf(sub, "decompose", cmd_decompose, params=True, help="block plan of the pushforward")
    dec.add_argument("--bound", type=int, default=4096)
    leaf(sub, "corollary", cmd_corollary, params=True, help="b and h for prime t")

    ab = sub.add_parser("abelian", help="abelian building data").add_subparsers(dest="action", required=True)
    leaf(ab, "check", cmd_abelian_check, file=True, help="check the fundamental relations")
    leaf(ab, "complete", cmd_abelian_complete, file=True, help="extend L from generators to all characters")
    leaf(ab, "equations", cmd_abelian_equations, file=True, help="local cover equations")
    leaf(ab, "canonical", cmd_abelian_canonical, file=True, help="canonical-class bookkeeping")

    mb = sub.add_parser("metabelian", help="metabelian presentations").add_subparsers(dest="action", required=True)
    leaf(mb, "check", cmd_metabelian_check, file=True, help="validate a presentation or cover data")

    fld = sub.add_parser("field", help="function-field towers").add_subparsers(dest="action", required=True)
    t2 = leaf(fld, "t2", cmd_field_t2, help="tower for t = 2 from a and P")
    for name in ("m", "k", "r"):
        t2.add_argument(f"--{name}", type=int, required=True)
    t2.add_argument("--a", required=True, help="rational function in y")
    t2.add_argument("--P", required=True, help="P, or its constant part when --P-w is given")
    t2.add_argument("--P-w", dest="P_w", help="coefficient of w in P")
    t2.add_argument("--f", help="modulus w^2 = f (required when P involves w)")
    dic = leaf(fld, "dicyclic", cmd_field_dicyclic, help="dicyclic tower from c, d, f")
    dic.add_argument("--n", type=int, required=True)
    for name in ("c", "d", "f"):
        dic.add_argument(f"--{name}", required=True)
    leaf(fld, "verify", cmd_field_verify, file=True, help="verify a tower file")

    leaf(sub, "kummer", cmd_kummer, file=True, help="Galois group of a Kummer extension")
    return top


def _emit(text: str, payload, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(dump_json(payload) + "\n")
    else:
        stream.write(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format
    try:
        text, payload = args.handler(args)
    except (ParseError, SchemaError, BoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Invalid as exc:
        if fmt == "json" and exc.payload is not None:
            _emit("", {"error": str(exc), **exc.payload}, fmt, sys.stdout)
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (MetacoverError, TowerError) as exc:
        if fmt == "json":
            _emit("", {"error": str(exc)}, fmt, sys.stdout)
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(text, payload, fmt, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
