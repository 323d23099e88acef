"""Command-line front end: builds objects, runs check suites, and emits
deterministic text or JSON reports with pass/fail exit codes."""

import argparse
import json
import os
import sys

from . import __version__
from .errors import (
    BadFamily, BadN, ConditionFailed, NoPlaneConjugation, NotInvolution,
    QorthoError, Unclassifiable,
)
from .linalg import SqMat, classical_mat, rank
from .qplane import check_confluence, check_star_consistency, \
    plane_relations, quotient_check, rules_json
from .realforms import (
    CROSS, STAR, ConjugationSpec, auto_from_signs, canonical_D,
    check_auto_conditions, check_reality, classify, count_real_forms,
    enumerate_autos, plane_conjugation_matrix,
)
from .rmatrix import GroupShape, build_metric, build_projectors, build_R, \
    check_char_eq, check_r_reality, check_ybe
from .scalars import ConjRegime, Scalar

YBE_CAP = 12

CONJ_GRAMMAR = ("base:star|cross;autos:canonical[,dprime:<+-string>]"
                "[,dsecond:<+-string>];regime:real|unit")


class _UsageError(Exception):
    pass


def _parse_regime(text):
    try:
        return ConjRegime(text)
    except ValueError:
        raise _UsageError(f"regime must be real or unit, got {text!r}")


def parse_conjugation(text, N):
    """Conjugation spec from the compact grammar

    base:star|cross;autos:canonical[,dprime:<+->][,dsecond:<+->];regime:real|unit

    Sign strings give all N signs; the autos field may be empty or omitted.
    """
    base = regime = None
    autos = []
    seen = set()
    for field in text.split(";"):
        key, colon, value = field.partition(":")
        if not colon or key in seen:
            raise _UsageError(f"malformed conjugation field {field!r}")
        seen.add(key)
        if key == "base":
            if value not in (STAR, CROSS):
                raise _UsageError(f"base must be star or cross, got {value!r}")
            base = value
        elif key == "regime":
            regime = _parse_regime(value)
        elif key == "autos":
            for item in value.split(","):
                if not item:
                    continue
                name, _, signs = item.partition(":")
                if name == "canonical":
                    autos.append(canonical_D(N))
                elif name in ("dprime", "dsecond"):
                    if len(signs) != N or set(signs) - set("+-"):
                        raise _UsageError(
                            f"{name} needs {N} signs from +-, got {signs!r}")
                    autos.append(auto_from_signs(N, name, signs))
                else:
                    raise _UsageError(f"unknown automorphism {item!r}")
        else:
            raise _UsageError(f"unknown conjugation field {key!r}")
    if base is None or regime is None:
        raise _UsageError("conjugation spec needs base and regime fields")
    return ConjugationSpec(base, autos, regime)


# -- report assembly -----------------------------------------------------------


def _check(name, ok, witness=None, data=None):
    entry = {"name": name, "pass": bool(ok)}
    if witness is not None:
        entry["witness"] = witness
    if data is not None:
        entry["data"] = data
    return entry


def _report(command, n, checks, regime=None):
    rep = {"command": command, "n": n, "checks": checks,
           "version": __version__}
    if regime is not None:
        rep["regime"] = regime.value
    return rep


def _emit_report(rep, fmt, out):
    if fmt == "json":
        out.write(json.dumps(rep, indent=2, sort_keys=True) + "\n")
        return
    head = f"{rep['command']} N={rep['n']}"
    if "regime" in rep:
        head += f" regime={rep['regime']}"
    out.write(head + "\n")
    for c in rep["checks"]:
        out.write(f"check {c['name']}: {'pass' if c['pass'] else 'FAIL'}\n")
        if "witness" in c:
            out.write("  witness: "
                      + json.dumps(c["witness"], sort_keys=True) + "\n")
    ok = all(c["pass"] for c in rep["checks"])
    out.write(f"overall: {'pass' if ok else 'FAIL'}\n")


def _emit_table(result, N, regime, fmt, out, err):
    if fmt == "json":
        out.write(json.dumps(result.rows, indent=2, sort_keys=True) + "\n")
        if result.caveat:
            err.write(f"note: {result.caveat}\n")
        return
    out.write(f"real forms N={N} regime={regime.value}\n")
    for row in result.rows:
        sig = row["signature"]
        sig_txt = f"({sig[0]},{sig[1]})" if sig else "-"
        autos = ",".join(row["spec"]["autos"]) or "none"
        out.write(f"  {row['label']:<10} signature={sig_txt:<8} "
                  f"{row['spec']['base']};{autos}\n")
    out.write(f"total: {result.count}\n")
    if result.caveat:
        out.write(f"note: {result.caveat}\n")


# -- subcommand bodies -----------------------------------------------------------


def _require_n(n, minimum=3):
    if n < minimum:
        raise _UsageError(f"N must be at least {minimum}, got {n}")


def _metric_checks(N):
    shape = GroupShape(N)
    C = build_metric(N)
    I = SqMat.identity(N)
    perm = SqMat(N, {(a, shape.prime(a)): Scalar.one()
                     for a in range(1, N + 1)})
    anti = all(c == shape.prime(r) for r, c in C.entries)
    return [
        _check("metric_self_inverse", C * C == I),
        _check("metric_antidiagonal", anti),
        _check("metric_classical_limit", classical_mat(C) == perm),
    ]


def cmd_rmat(args):
    _require_n(args.n)
    R = build_R(args.n)
    checks = [_check("build", True,
                     data={"dimension": R.dim, "nonzero": len(R.entries)})]
    checks += _metric_checks(args.n)
    return _report("rmat", args.n, checks)


def cmd_ybe(args):
    _require_n(args.n)
    if args.n > YBE_CAP and not args.force:
        raise _UsageError(
            f"N={args.n} exceeds the cap {YBE_CAP}; pass --force to override")
    ok, witness = check_ybe(build_R(args.n), args.n)
    return _report("ybe", args.n, [_check("ybe", ok, witness)])


def _projector_checks(N):
    P0, PA, PS, _ = build_projectors(N)
    I = SqMat.identity(N * N)
    zero = SqMat(N * N, {})
    trace = Scalar.zero()
    for k in range(1, N * N + 1):
        trace = trace + P0.get(k, k)
    return [
        _check("p0_idempotent", P0 * P0 == P0),
        _check("pa_idempotent", PA * PA == PA),
        _check("pa_p0_orthogonal", PA * P0 == zero and P0 * PA == zero),
        _check("sum_is_identity", P0 + PA + PS == I),
        _check("trace_p0", trace == Scalar.one(),
               data={"trace": str(trace)}),
        _check("rank_pa", rank(PA) == N * (N - 1) // 2,
               data={"rank": rank(PA)}),
        _check("char_eq", check_char_eq(N)),
    ]


def cmd_projectors(args):
    _require_n(args.n)
    return _report("projectors", args.n, _projector_checks(args.n))


def cmd_classify(args):
    _require_n(args.n)
    spec = parse_conjugation(args.spec, args.n)
    try:
        label = classify(spec, args.n)
        sig = label.signature
        check = _check("classify", True,
                       data={"label": str(label),
                             "signature": list(sig) if sig else None})
    except (Unclassifiable, NotInvolution) as exc:
        check = _check("classify", False, witness={"error": str(exc)})
    return _report("classify", args.n, [check], spec.regime)


def cmd_table(args):
    _require_n(args.n)
    regime = _parse_regime(args.regime)
    return count_real_forms(args.n, regime), regime


def cmd_plane(args):
    _require_n(args.n)
    rs = plane_relations(args.n)
    ok, witness = check_confluence(rs)
    checks = [
        _check("relations", len(rs.pair_rules) == args.n * (args.n - 1) // 2,
               data={"count": len(rs.pair_rules), "rules": rules_json(rs)}),
        _check("confluent", ok, witness),
    ]
    return _report("plane", args.n, checks)


def cmd_plane_conj(args):
    _require_n(args.n)
    spec = parse_conjugation(args.spec, args.n)
    try:
        K = plane_conjugation_matrix(spec, args.n)
    except NoPlaneConjugation as exc:
        raise _UsageError(f"no plane conjugation: {exc}")
    rs = plane_relations(args.n)
    entries = {f"{r},{c}": str(v) for (r, c), v in sorted(K.entries.items())}
    ok = check_star_consistency(rs, K, spec.regime)
    return _report("plane-conj", args.n,
                   [_check("star_consistency", ok, data={"K": entries})],
                   spec.regime)


def cmd_quotient(args):
    sign = 1 if args.sign == "plus" else -1
    ok = quotient_check(sign, include_scaling=not args.no_scaling)
    return _report("quotient", 4,
                   [_check("quotient", ok,
                           data={"sign": args.sign,
                                 "scaling": not args.no_scaling})])


def _auto_suite_check(N):
    members = [canonical_D(N)] + enumerate_autos(N, "dprime")
    if N % 2 == 0:
        members += enumerate_autos(N, "dsecond")
    for m in members:
        try:
            check_auto_conditions(m, N)
        except ConditionFailed as exc:
            return _check("automorphism_families", False,
                          witness={"member": m.tag(), "condition": exc.name,
                                   "detail": exc.witness})
        for base in (STAR, CROSS):
            if not check_reality(m, base, N):
                return _check("automorphism_families", False,
                              witness={"member": m.tag(),
                                       "condition": f"reality_{base}"})
    return _check("automorphism_families", True,
                  data={"members": len(members)})


def cmd_verify_all(args):
    _require_n(args.n)
    if args.n > YBE_CAP and not args.force:
        raise _UsageError(
            f"N={args.n} exceeds the cap {YBE_CAP}; pass --force to override")
    N = args.n
    checks = _metric_checks(N)
    R = build_R(N)
    ok, witness = check_ybe(R, N)
    checks.append(_check("ybe", ok, witness))
    checks += _projector_checks(N)
    checks.append(_check("r_reality_real",
                         check_r_reality(R, ConjRegime.REAL_Q)))
    checks.append(_check("r_reality_unit",
                         check_r_reality(R, ConjRegime.UNIT_MODULUS_Q)))
    checks.append(_auto_suite_check(N))
    ok, witness = check_confluence(plane_relations(N))
    checks.append(_check("plane_confluent", ok, witness))
    return _report("verify-all", N, checks)


# -- driver ---------------------------------------------------------------------


def _build_parser():
    fmt_parent = argparse.ArgumentParser(add_help=False)
    fmt_parent.add_argument("--format", choices=("json", "text"),
                            default=argparse.SUPPRESS,
                            help="output format (overrides QORTHO_FORMAT)")
    p = argparse.ArgumentParser(
        prog="qortho",
        parents=[fmt_parent],
        description="Exact checks for quantum orthogonal groups, their real "
                    "forms, and quantum planes.",
        epilog=f"Conjugation grammar: {CONJ_GRAMMAR}. Sign strings list all "
               "N signs. Output format: --format or QORTHO_FORMAT "
               "(json|text, default text).")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, **flags):
        sp = sub.add_parser(name, parents=[fmt_parent])
        for flag, opts in flags.items():
            sp.add_argument(flag, **opts)
        sp.set_defaults(func=func)
        return sp

    add("rmat", cmd_rmat, **{"--n": {"type": int, "required": True}})
    add("ybe", cmd_ybe, **{"--n": {"type": int, "required": True},
                           "--force": {"action": "store_true"}})
    add("projectors", cmd_projectors,
        **{"--n": {"type": int, "required": True}})
    add("classify", cmd_classify,
        **{"--n": {"type": int, "required": True},
           "--spec": {"required": True, "help": CONJ_GRAMMAR}})
    add("table", cmd_table,
        **{"--n": {"type": int, "required": True},
           "--regime": {"required": True, "choices": ("real", "unit")}})
    add("plane", cmd_plane, **{"--n": {"type": int, "required": True}})
    add("plane-conj", cmd_plane_conj,
        **{"--n": {"type": int, "required": True},
           "--spec": {"required": True, "help": CONJ_GRAMMAR}})
    add("quotient", cmd_quotient,
        **{"--sign": {"required": True, "choices": ("plus", "minus")},
           "--no-scaling": {"action": "store_true"}})
    add("verify-all", cmd_verify_all,
        **{"--n": {"type": int, "required": True},
           "--force": {"action": "store_true"}})
    return p


def main(argv=None, out=None, err=None):
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    fmt = getattr(args, "format", None) or os.environ.get("QORTHO_FORMAT",
                                                          "text")
    if fmt not in ("json", "text"):
        err.write(f"error: QORTHO_FORMAT must be json or text, got {fmt!r}\n")
        return 2
    try:
        result = args.func(args)
    except _UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (BadFamily, BadN, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except QorthoError as exc:
        err.write(f"error: {exc}\n")
        return 1
    if args.command == "table":
        table, regime = result
        _emit_table(table, args.n, regime, fmt, out, err)
        return 0
    _emit_report(result, fmt, out)
    return 0 if all(c["pass"] for c in result["checks"]) else 1


def console():
    sys.exit(main())


if __name__ == "__main__":
    console()
