"""Command line interface: one subcommand per module, JSON or CSV out.

Exit codes: 0 success, 1 a verification failed, 2 usage error.  Every
rational is emitted as a "p/q" string so no consumer is tempted to parse it
into a float.  Output is deterministic: keys sorted, entries ordered.

Memo tables persist between runs when a cache directory is given, either
with --cache-dir or through QUANTCURVE_CACHE_DIR.  Cache files are
versioned JSON; anything unreadable or from another version is discarded
and recomputed, with a warning on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import catalan, freeenergy, gwp1, hurwitz, lattice, trres, wkb
from .exactnum import (
    bernoulli,
    dim_irrep,
    double_factorial,
    partitions_of,
    rat_from_str,
    rat_to_str,
)
from .polyseries import (
    HbarLaurent,
    LaurentPoly,
    RationalFunction,
    TruncSeries,
    poly_yun,
)

CACHE_VERSION = 1
CACHE_ENV = "QUANTCURVE_CACHE_DIR"

_F1 = Fraction(1)


# ---------------------------------------------------------------------------
# serialization


def _jsonify(val):
    if isinstance(val, bool) or val is None:
        return val
    if isinstance(val, int):
        return val
    if isinstance(val, Fraction):
        return rat_to_str(val)
    if isinstance(val, str):
        return val
    if hasattr(val, "to_json"):
        return val.to_json()
    if isinstance(val, dict):
        return {str(k): _jsonify(v) for k, v in val.items()}
    if isinstance(val, (list, tuple)):
        return [_jsonify(v) for v in val]
    return str(val)


def _emit(doc: dict, fmt: str) -> str:
    doc = _jsonify(doc)
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows: list[tuple[str, str]] = []

    def flatten(prefix: str, v) -> None:
        if isinstance(v, dict):
            for k in sorted(v):
                flatten(f"{prefix}.{k}" if prefix else str(k), v[k])
        elif isinstance(v, list):
            rows.append((prefix, json.dumps(v, sort_keys=True)))
        else:
            rows.append((prefix, json.dumps(v) if isinstance(v, bool) else str(v)))

    flatten("", doc)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# memo cache persistence


def _key_enc(k):
    if isinstance(k, tuple):
        return [_key_enc(x) for x in k]
    return k


def _key_dec(k):
    if isinstance(k, list):
        return tuple(_key_dec(x) for x in k)
    return k


_VAL_CODECS = {
    "int": (lambda v: v, lambda v: int(v)),
    "frac": (rat_to_str, rat_from_str),
    "laurent": (lambda v: v.to_json(), LaurentPoly.from_json),
}

# table name -> (live dict, value codec); single writer per table
_CACHE_TABLES = {
    "catalan": (catalan._MEMO, "int"),
    "freeenergy": (freeenergy._F_CACHE, "laurent"),
    "trres": (trres._W_CACHE, "laurent"),
    "lattice": (lattice._N_CACHE, "frac"),
    "hurwitz": (hurwitz._TABLE, "frac"),
}


def load_cache(cache_dir: str) -> None:
    for name, (table, kind) in _CACHE_TABLES.items():
        path = os.path.join(cache_dir, f"{name}.json")
        if not os.path.exists(path):
            continue
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
            if data.get("version") != CACHE_VERSION or data.get("kind") != name:
                print(
                    f"warning: cache {path} has a different version; recomputing",
                    file=sys.stderr,
                )
                continue
            dec = _VAL_CODECS[kind][1]
            table.update(
                {_key_dec(k): dec(v) for k, v in data["entries"]}
            )
        except (OSError, ValueError, KeyError, TypeError):
            print(f"warning: discarding unreadable cache {path}", file=sys.stderr)


def save_cache(cache_dir: str) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    for name, (table, kind) in _CACHE_TABLES.items():
        if not table:
            continue
        enc = _VAL_CODECS[kind][0]
        entries = sorted(
            ([_key_enc(k), enc(v)] for k, v in table.items()),
            key=lambda kv: json.dumps(kv[0]),
        )
        doc = {"version": CACHE_VERSION, "kind": name, "entries": entries}
        path = os.path.join(cache_dir, f"{name}.json")
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (document, ok)


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from exc


def _require_range(**named) -> None:
    # genus and sizes must be sane before dispatch; modules gate the rest
    for name, (value, floor) in named.items():
        if value < floor:
            raise ValueError(f"{name} must be >= {floor}, got {value}")


def cmd_catalan(args) -> tuple[dict, bool]:
    mu = _parse_ints(args.mu)
    if len(mu) != args.n:
        raise ValueError(f"mu has {len(mu)} entries, expected n = {args.n}")
    _require_range(g=(args.g, 0), n=(args.n, 1))
    value = catalan.catalan_general(args.g, args.n, mu)
    key = f"g={args.g} n={args.n} mu={','.join(map(str, mu))}"
    return {"key": key, "value": str(value)}, True


def cmd_freeenergy(args) -> tuple[dict, bool]:
    poly = freeenergy.F_coeff(args.g, args.n)
    doc: dict = {"g": args.g, "n": args.n, "F": poly}
    ok = True
    if args.check:
        checks = freeenergy.check_properties(args.g, args.n)
        doc["checks"] = checks
        ok = ok and all(checks.values())
    if args.laplace is not None:
        match = freeenergy.laplace_match(args.g, args.n, args.laplace)
        doc["laplace_match"] = match
        ok = ok and match
    return doc, ok


def _curve(name: str):
    if name == "airy":
        return trres.airy_curve()
    if name == "catalan":
        return trres.catalan_curve()
    raise ValueError(f"unknown curve {name!r}")


def cmd_tr(args) -> tuple[dict, bool]:
    doc: dict = {"curve": args.curve, "g": args.g, "n": args.n}
    if (args.g, args.n) == (0, 2):
        # the fixed second-kind kernel; not a Laurent polynomial
        doc["wform"] = None
        doc["note"] = "W_{0,2} is the kernel dt1 dt2 / (t1 - t2)^2"
        return doc, True
    doc["wform"] = trres.W_coeff(_curve(args.curve), args.g, args.n)
    return doc, True


def cmd_intersect(args) -> tuple[dict, bool]:
    dvec = _parse_ints(args.dvec)
    _require_range(g=(args.g, 0))
    value = trres.psi_intersection(args.g, dvec)
    return {"value": value}, True


def cmd_wkb(args) -> tuple[dict, bool]:
    if args.action == "airy-coeffs":
        coeffs = {}
        agree = True
        for m in range(1, args.m_max + 1):
            gamma = wkb.airy_wkb_coefficient(m, route="gamma")
            inter = wkb.airy_wkb_coefficient(m, route="intersection")
            agree = agree and gamma == inter
            coeffs[str(m)] = gamma
        return {"coefficients": coeffs, "routes_agree": agree}, agree
    if args.action == "rainbow":
        lhs, rhs = wkb.rainbow_check(args.m)
        return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}, lhs == rhs
    if args.action == "table1":
        specs = wkb.catalog()
        if not 1 <= args.row <= len(specs):
            raise ValueError(f"row must be 1..{len(specs)}")
        return wkb.analyze(specs[args.row - 1]), True
    if args.action == "verify-ode":
        with open(args.spec, encoding="utf-8") as fh:
            spec_doc = json.load(fh)
        with open(args.series, encoding="utf-8") as fh:
            series_doc = json.load(fh)
        op = _operator_from_json(spec_doc)
        psi = TruncSeries.from_json(series_doc)
        order = wkb.verify_ode_series(op, psi, descending=args.descending)
        return {"ok": True, "verified_through": order}, True
    raise ValueError(f"unknown wkb action {args.action!r}")


class _BareOperator:
    """Just the two symbol coefficients, for series verification."""

    __slots__ = ("name", "s1", "s2")

    def __init__(self, name, s1, s2):
        self.name = name
        self.s1 = s1
        self.s2 = s2


def _operator_from_json(doc: dict):
    if "operator" in doc:
        for spec in wkb.catalog():
            if spec.name == doc["operator"]:
                return spec
        raise ValueError(f"unknown operator {doc['operator']!r}")

    def rf(entry) -> RationalFunction:
        return RationalFunction(
            [rat_from_str(c) for c in entry["num"]],
            [rat_from_str(c) for c in entry.get("den", ["1"])],
        )

    return _BareOperator(doc.get("name", "custom"), rf(doc["s1"]), rf(doc["s2"]))


def cmd_lattice(args) -> tuple[dict, bool]:
    p = _parse_ints(args.p)
    if len(p) != args.n:
        raise ValueError(f"p has {len(p)} entries, expected n = {args.n}")
    value = lattice.lattice_N(args.g, args.n, p)
    return {"g": args.g, "n": args.n, "p": list(p), "value": value}, True


def cmd_chi(args) -> tuple[dict, bool]:
    value = lattice.harer_zagier_chi(args.g, args.n)
    return {"g": args.g, "n": args.n, "value": value}, True


def cmd_hurwitz(args) -> tuple[dict, bool]:
    if args.action == "qc-check":
        report = hurwitz.qc_series_check(args.r, args.xdeg, args.hdeg)
        return report, bool(report["ok"])
    if args.g is None or args.n is None or args.mu is None:
        raise ValueError("hurwitz needs --g, --n and --mu")
    mu = _parse_ints(args.mu)
    if len(mu) != args.n:
        raise ValueError(f"mu has {len(mu)} entries, expected n = {args.n}")
    value = hurwitz.hurwitz(args.r, args.g, args.n, mu)
    return {"r": args.r, "g": args.g, "n": args.n, "mu": list(mu), "value": value}, True


def cmd_gwp1(args) -> tuple[dict, bool]:
    doc: dict = {"d": args.d, "x_d": gwp1.x_d(args.d)}
    ok = True
    if args.verify:
        if args.d < 1:
            raise ValueError("--verify needs d >= 1")
        report = gwp1.verify_recursion(args.d)
        doc["recursion_ok"] = report["ok"]
        ok = bool(report["ok"])
    return doc, ok


# ---------------------------------------------------------------------------
# the verify suite: quick self-checks, module order fixed


def _suite_exactnum() -> bool:
    return (
        bernoulli(10) == Fraction(5, 66)
        and double_factorial(7) == 105
        and dim_irrep((2, 1)) == 2
        and len(partitions_of(5)) == 7
    )


def _suite_polyseries() -> bool:
    s = TruncSeries(8, {1: _F1, 2: Fraction(1, 3)})
    ok = s.exp().log() == s
    # (x - 1)(x + 1)^2, squarefree part split from the doubled factor
    p = [Fraction(-1), Fraction(-1), Fraction(1), Fraction(1)]
    ok = ok and poly_yun(p) == [
        ([Fraction(-1), _F1], 1),
        ([_F1, _F1], 2),
    ]
    return ok


def _suite_catalan() -> bool:
    ok = all(
        catalan.catalan_general(0, 1, (2 * m,)) == catalan.catalan_closed(m)
        for m in range(1, 7)
    )
    return ok and catalan.c02_closed(3, 5) == catalan.catalan_general(0, 2, (3, 5))


def _suite_freeenergy() -> bool:
    checks = freeenergy.check_properties(1, 1)
    return all(checks.values()) and freeenergy.laplace_match(0, 3, 4)


def _suite_trres() -> bool:
    anchors = {
        (0, (0, 0, 0)): _F1,
        (1, (1,)): Fraction(1, 24),
        (1, (0, 2)): Fraction(1, 24),
        (1, (1, 1)): Fraction(1, 24),
        (0, (0, 0, 0, 1)): _F1,
    }
    return all(trres.psi_intersection(g, dv) == v for (g, dv), v in anchors.items())


def _suite_wkb() -> bool:
    lhs, rhs = wkb.rainbow_check(2)
    ok = lhs == rhs == Fraction(5, 16)
    ok = ok and all(wkb.catalan_wkb_check(3).values())
    genera = [wkb.analyze(s)["geometric_genus"] for s in wkb.catalog()]
    return ok and genera == [0, 0, 0, 0, 1]


def _suite_lattice() -> bool:
    ok = lattice.euler_consistency(1, 1)["ok"]
    ok = ok and lattice.lattice_N(0, 3, (2, 2, 2)) == 1
    return ok and lattice.lattice_N(0, 3, (1, 2, 2)) == 0


def _suite_hurwitz() -> bool:
    ok = all(
        hurwitz.hurwitz(1, g, len(mu), mu) == hurwitz.brute_oracle(g, len(mu), mu)
        for g in range(2)
        for total in range(1, 5)
        for mu in partitions_of(total)
    )
    return ok and hurwitz.qc_series_check(1, 4, 2)["ok"]


def _suite_gwp1() -> bool:
    table: dict = {}
    ok = all(gwp1.verify_recursion(d, table)["ok"] for d in range(1, 4))
    expect = RationalFunction([0, 1], [HbarLaurent.h(), HbarLaurent.const(1)])
    return ok and gwp1.x_d(1) == expect


_SUITES = [
    ("exactnum", _suite_exactnum),
    ("polyseries", _suite_polyseries),
    ("catalan", _suite_catalan),
    ("freeenergy", _suite_freeenergy),
    ("trres", _suite_trres),
    ("wkb", _suite_wkb),
    ("lattice", _suite_lattice),
    ("hurwitz", _suite_hurwitz),
    ("gwp1", _suite_gwp1),
]


def cmd_verify(args) -> tuple[dict, bool]:
    names = [n for n, _ in _SUITES]
    wanted = names if args.suite == "all" else [args.suite]
    unknown = [w for w in wanted if w not in names]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; choices: all, {', '.join(names)}")
    items = []
    for name, fn in _SUITES:
        if name not in wanted:
            continue
        try:
            good = bool(fn())
        except (ArithmeticError, ValueError):
            good = False
        items.append({"name": name, "ok": good})
    all_ok = all(item["ok"] for item in items)
    return {"suite": args.suite, "items": items, "ok": all_ok}, all_ok


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--cache-dir", default=None, help=f"memo cache; or ${CACHE_ENV}")
    top = argparse.ArgumentParser(
        prog="quantcurve",
        description="exact topological recursion, free energies, quantum curves",
        parents=[common],
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("catalan", help="generalized Catalan number")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.set_defaults(handler=cmd_catalan)

    p = add_parser("freeenergy", help="free energy coefficient polynomial")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", action="store_true")
    p.add_argument("--laplace", type=int, default=None, metavar="MU_MAX")
    p.set_defaults(handler=cmd_freeenergy)

    p = add_parser("tr", help="topological recursion invariant")
    p.add_argument("--curve", choices=("airy", "catalan"), required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_tr)

    p = add_parser("intersect", help="psi-class intersection number")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--dvec", required=True)
    p.set_defaults(handler=cmd_intersect)

    p = add_parser("wkb", help="WKB and operator geometry reports")
    p.add_argument("action", choices=("airy-coeffs", "rainbow", "table1", "verify-ode"))
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--m-max", type=int, default=4, dest="m_max")
    p.add_argument("--row", type=int, default=1)
    p.add_argument("--spec", default=None)
    p.add_argument("--series", default=None)
    p.add_argument("--descending", action="store_true")
    p.set_defaults(handler=cmd_wkb)

    p = add_parser("lattice", help="lattice point count")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True)
    p.set_defaults(handler=cmd_lattice)

    p = add_parser("chi", help="orbifold Euler characteristic")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_chi)

    p = add_parser("hurwitz", help="Hurwitz numbers and quantum curve check")
    p.add_argument("action", nargs="?", choices=("qc-check",), default=None)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--xdeg", type=int, default=4)
    p.add_argument("--hdeg", type=int, default=2)
    p.set_defaults(handler=cmd_hurwitz)

    p = add_parser("gwp1", help="degree marker of GW(P1)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(handler=cmd_gwp1)

    p = add_parser("verify", help="self-check suites")
    p.add_argument("--suite", default="all")
    p.set_defaults(handler=cmd_verify)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV)
    if cache_dir:
        load_cache(cache_dir)
    try:
        doc, ok = args.handler(args)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, ZeroDivisionError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    if cache_dir:
        save_cache(cache_dir)
    sys.stdout.write(_emit(doc, args.format))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
