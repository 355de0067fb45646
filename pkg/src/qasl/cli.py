"""Command-line interface.

Every command prints one deterministic report (JSON or a fixed-width table)
and exits 0 on success, 1 when a certificate fails and 2 on invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Hashable, List, Optional, Sequence, TextIO

from qasl.hilbert import GKDimensionMismatch, gk_dimension, gorenstein_test, hilbert_report, hilbert_series
from qasl.laurent import LaurentPoly
from qasl.linalg import IntegralityError, NotInSpan
from qasl.poset import (
    PosetError,
    index_pairs,
    is_distributive_lattice,
    label,
    pi_ideal,
    rank,
)
from qasl.qmatrix import IndexPair, ShapeError, laplace_expand, quantum_minor
from qasl.straighten import (
    AlgebraConfig,
    CertificateError,
    ConfigError,
    _check_independence,
    _commute,
    _straighten,
    config_poset,
    element_degree,
    engine,
    ideal_membership,
    normalizing_sequence_check,
    realize,
    standard_monomials,
    verify_asl,
    verify_dehom_plucker,
)


class UsageError(ValueError):
    """Bad flag values; reported with exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# parsing helpers

def parse_int_list(text: str, what: str) -> tuple:
    try:
        vals = tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None
    if not vals:
        raise UsageError(f"{what} is empty")
    return vals


def _parse_index_set(tok: str) -> tuple:
    tok = tok.strip()
    parts = tok.split("-") if "-" in tok else list(tok)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"cannot read index set {tok!r}") from None


def parse_element(tok: str, config: AlgebraConfig) -> Hashable:
    """'14' or '1-4' for index sets, '12|13' for index pairs."""
    if config.ambient_kind == "grassmannian":
        if "|" in tok:
            raise UsageError(f"{tok!r}: grassmannian generators are index sets like 14")
        e = _parse_index_set(tok)
    else:
        if tok.count("|") != 1:
            raise UsageError(f"{tok!r}: matrix generators are index pairs like 12|13")
        r, c = tok.split("|")
        try:
            e = IndexPair(_parse_index_set(r), _parse_index_set(c))
        except ShapeError as exc:
            raise UsageError(str(exc)) from None
    if e not in engine(config).ambient_poset:
        raise UsageError(f"{tok!r} is not a generator of {config.describe()}")
    return e


def parse_elements(text: str, config: AlgebraConfig) -> List[Hashable]:
    return [parse_element(t, config) for t in text.split(",") if t.strip()]


def build_config(args) -> AlgebraConfig:
    if args.kind is None or args.m is None or args.n is None:
        raise UsageError("--kind, --m and --n are required")
    gamma = parse_int_list(args.gamma, "--gamma") if args.gamma else None
    try:
        return AlgebraConfig(args.kind, args.m, args.n, gamma=gamma, t=args.t)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None


def coeff_formatter(q: Optional[str]) -> Callable[[LaurentPoly], object]:
    if q is None:
        return lambda c: c.to_json()
    try:
        v = Fraction(q)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--q must be a rational number, got {q!r}") from None
    if v == 0:
        raise UsageError("--q must be nonzero")
    return lambda c: str(c.specialize(v))


def coeff_text(c) -> str:
    if isinstance(c, str):
        return c
    return str(LaurentPoly.from_json(c))


# ---------------------------------------------------------------------------
# relation records

def _chain_json(terms, order, fmt) -> List[dict]:
    pos = {c: i for i, c in enumerate(order)}
    chains = sorted(terms, key=lambda c: (len(c), [pos.get(x, len(pos)) for x in c]))
    return [{"chain": [label(e) for e in c], "coeff": fmt(terms[c])} for c in chains]


def straightening_record(a, b, config: AlgebraConfig, fmt) -> dict:
    order = config_poset(config).elements
    try:
        comb, cert = _straighten(a, b, config)
    except (NotInSpan, IntegralityError) as exc:
        return {"lhs": [label(a), label(b)], "f": None, "rhs": [], "certified": False, "error": str(exc)}
    rec = {"lhs": [label(a), label(b)], "f": None, "rhs": _chain_json(comb.terms, order, fmt),
           "certified": cert.ok}
    if not cert.ok:
        rec["violations"] = cert.violations
    return rec


def commutation_record(a, b, config: AlgebraConfig, fmt) -> dict:
    order = config_poset(config).elements
    try:
        rel = _commute(a, b, config)
    except (CertificateError, NotInSpan, IntegralityError) as exc:
        return {"lhs": [label(a), label(b)], "f": None, "rhs": [], "certified": False, "error": str(exc)}
    rec = {"lhs": [label(a), label(b)], "f": rel.exponent,
           "rhs": _chain_json(rel.lower_terms.terms, order, fmt), "certified": rel.certificate.ok}
    if not rel.certificate.ok:
        rec["violations"] = rel.certificate.violations
    return rec


def relation_records(config: AlgebraConfig, max_degree: Optional[int] = None, fmt=None) -> List[dict]:
    """Straightening records for incomparable pairs, then commutation records for ordered pairs."""
    fmt = fmt or coeff_formatter(None)
    poset = config_poset(config)
    els = poset.elements

    def keep(a, b):
        return max_degree is None or element_degree(a, config) + element_degree(b, config) <= max_degree

    recs = []
    for i, a in enumerate(els):
        for b in els[i + 1:]:
            if not poset.comparable(a, b) and keep(a, b):
                recs.append(straightening_record(a, b, config, fmt))
    for a in els:
        for b in els:
            if keep(a, b):
                recs.append(commutation_record(a, b, config, fmt))
    return recs


def _dump_records(recs: Sequence[dict]) -> str:
    if not recs:
        return "[]\n"
    return "[\n" + ",\n".join(json.dumps(r) for r in recs) + "\n]\n"


def export_relation_table(config: AlgebraConfig, max_degree: Optional[int], stream: TextIO,
                          q: Optional[str] = None) -> int:
    """Write the relation table as a JSON array, one record per line; returns the record count."""
    recs = relation_records(config, max_degree, coeff_formatter(q))
    stream.write(_dump_records(recs))
    return len(recs)


def records_table(recs: Sequence[dict]) -> str:
    rows = [("lhs", "f", "coeff", "chain", "ok")]
    for r in recs:
        lhs = "".join(r["lhs"])
        f = "-" if r["f"] is None else str(r["f"])
        ok = "yes" if r["certified"] else "NO"
        if not r["rhs"]:
            rows.append((lhs, f, "0", "", ok))
        for k, t in enumerate(r["rhs"]):
            rows.append((lhs if k == 0 else "", f if k == 0 else "", coeff_text(t["coeff"]),
                         "".join(t["chain"]) or "1", ok if k == 0 else ""))
    return _fixed_width(rows)


def _fixed_width(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands; each returns (report, text_table, exit_code)

def _two_elements(args, config) -> tuple:
    if not args.lhs:
        raise UsageError("--lhs is required, e.g. --lhs 14,23")
    els = parse_elements(args.lhs, config)
    if len(els) != 2:
        raise UsageError("--lhs needs exactly two generators")
    poset = config_poset(config)
    for e in els:
        if e not in poset:
            raise UsageError(f"{label(e)} vanishes in {config.describe()}")
    return els[0], els[1]


def cmd_minor(args):
    if args.m is None or args.n is None or not args.rows or not args.cols:
        raise UsageError("minor needs --m, --n, --rows and --cols")
    try:
        pair = IndexPair(parse_int_list(args.rows, "--rows"), parse_int_list(args.cols, "--cols"))
        shape = (args.m, args.n)
        elem = quantum_minor(pair, shape)
    except ShapeError as exc:
        raise UsageError(str(exc)) from None
    fmt = coeff_formatter(args.q)
    agrees = None if pair.size < 2 else laplace_expand(pair, shape) == elem
    terms = elem.terms
    report = {
        "shape": list(shape),
        "pair": pair.label(),
        "element": [{"word": [[i, j] for i, j in w], "coeff": fmt(terms[w])} for w in sorted(terms)],
        "laplace_agrees": agrees,
    }
    rows = [("coeff", "word")] + [
        (coeff_text(t["coeff"]), "*".join(f"X{i},{j}" for i, j in t["word"])) for t in report["element"]
    ]
    table = f"minor {pair.label()} in shape {shape}\n" + _fixed_width(rows)
    return report, table, 1 if agrees is False else 0


def cmd_straighten(args):
    config = build_config(args)
    a, b = _two_elements(args, config)
    if config_poset(config).comparable(a, b):
        raise UsageError(f"{label(a)} and {label(b)} are comparable; nothing to straighten")
    rec = straightening_record(a, b, config, coeff_formatter(args.q))
    return [rec], records_table([rec]), 0 if rec["certified"] else 1


def cmd_commute(args):
    config = build_config(args)
    a, b = _two_elements(args, config)
    rec = commutation_record(a, b, config, coeff_formatter(args.q))
    return [rec], records_table([rec]), 0 if rec["certified"] else 1


def cmd_relations(args):
    config = build_config(args)
    recs = relation_records(config, args.degree, coeff_formatter(args.q))
    return recs, records_table(recs), 0 if all(r["certified"] for r in recs) else 1


def cmd_verify_asl(args):
    config = build_config(args)
    degree = 3 if args.degree is None else args.degree
    if degree < 2:
        raise UsageError("--degree must be at least 2 for verify-asl")
    report = verify_asl(config, degree, full_span=not args.skip_full_span)
    rows = [("condition", "verdict")] + [(k, v.verdict) for k, v in report.conditions.items()]
    table = f"{config.describe()} up to degree {degree}\n" + _fixed_width(rows) + f"verdict: {report.verdict}\n"
    return report.to_json(), table, 1 if report.verdict == "fail" else 0


def cmd_schubert_basis(args):
    if args.kind not in (None, "schubert"):
        raise UsageError("schubert-basis works on --kind schubert")
    args.kind = "schubert"
    config = build_config(args)
    degree = 2 if args.degree is None else args.degree
    if degree < 0:
        raise UsageError("--degree must be nonnegative")
    monos = standard_monomials(config, degree)
    full = AlgebraConfig("grassmannian", config.m, config.n)
    fpos = config_poset(full)
    filtered = [c for c in standard_monomials(full, degree) if not c or fpos.le(config.gamma, c[0])]
    matches = filtered == monos
    indep = _check_independence(config, degree, True)["ok"] if degree > 0 else True
    report = {
        "config": config.to_json(),
        "degree": degree,
        "count": len(monos),
        "monomials": [[label(e) for e in c] for c in monos],
        "matches_grassmannian_filter": matches,
        "independent_modulo_ideal": indep,
    }
    rows = [("#", "monomial")] + [(str(i), "".join(label(e) for e in c) or "1") for i, c in enumerate(monos)]
    table = (f"{config.describe()} degree {degree}: {len(monos)} standard monomials\n" + _fixed_width(rows)
             + f"matches filter: {matches}\nindependent modulo ideal: {indep}\n")
    return report, table, 0 if matches and indep else 1


def cmd_ideal_check(args):
    gamma_text = args.gamma
    if args.kind == "schubert":
        raise UsageError("ideal-check works in the ambient algebra; use --kind grassmannian with --gamma")
    args.gamma = None
    config = build_config(args)
    poset = config_poset(config)
    if gamma_text:
        gamma = parse_int_list(gamma_text, "--gamma")
        if gamma not in poset:
            raise UsageError(f"gamma {label(gamma)} is not in the poset of {config.describe()}")
        omega = pi_ideal(poset, [gamma], mode="cogenerated")
    elif args.omega is not None:
        try:
            omega = pi_ideal(poset, parse_elements(args.omega, config), mode="generated")
        except PosetError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("ideal-check needs --omega generators or --gamma")
    fmt = coeff_formatter(args.q)
    members = omega.sorted()
    report = {"config": config.to_json(), "omega": [label(e) for e in members]}
    if args.lhs:
        els = parse_elements(args.lhs, config)
        elem = realize(els, config)
        member, parts = ideal_membership(elem, omega, config)
        report["element"] = [label(e) for e in els]
        report["member"] = member
        report["inside"] = _chain_json(parts["inside"].terms, poset.elements, fmt)
        report["outside"] = _chain_json(parts["outside"].terms, poset.elements, fmt)
    order = [e for e in poset.linear_extension() if e in omega]
    norm = normalizing_sequence_check(omega, order, config, max_degree=1)
    report["normalizing"] = norm.to_json()
    lines = [f"omega = {{{', '.join(report['omega'])}}} in {config.describe()}"]
    if "member" in report:
        lines.append(f"{''.join(report['element'])} in ideal: {report['member']}")
    lines.append(f"normalizing sequence: {'pass' if norm.ok else 'FAIL'} ({norm.checks} checks)")
    return report, "\n".join(lines) + "\n", 0 if norm.ok else 1


def cmd_hilbert(args):
    config = build_config(args)
    order = 6 if args.degree is None else args.degree
    if order < 0:
        raise UsageError("--degree must be nonnegative")
    report = hilbert_report(config, order)
    h = hilbert_series(config)
    table = (f"{config.describe()}\nH(t) = {h.series}\ncoefficients: {report['coefficients']}\n"
             f"GK dimension: {report['gk_dim']} (poset rank {report['poset_rank']})\n"
             f"gorenstein: {report['gorenstein']} shift: {report['shift']}\n")
    return report, table, 0


def cmd_gorenstein(args):
    config = build_config(args)
    h = hilbert_series(config)
    gk_dimension(h, config)
    g = gorenstein_test(h)
    full = hilbert_report(config, 1)
    report = {"config": config.to_json(), "gorenstein": g.gorenstein, "shift": g.shift, "sign": g.sign,
              "proviso": full["proviso"]}
    table = f"{config.describe()}: gorenstein={g.gorenstein} shift={g.shift} sign={g.sign}\n"
    return report, table, 0


def cmd_dehom_check(args):
    if args.m is None or args.n is None:
        raise UsageError("dehom-check needs --m and --n")
    m, n = args.m, args.n
    if not (1 <= m <= n):
        raise UsageError(f"need 1 <= m <= n, got m={m}, n={n}")
    if args.rows or args.cols:
        if not (args.rows and args.cols):
            raise UsageError("give both --rows and --cols")
        try:
            pairs = [IndexPair(parse_int_list(args.rows, "--rows"), parse_int_list(args.cols, "--cols"))]
        except ShapeError as exc:
            raise UsageError(str(exc)) from None
        if pairs[0].size < 2 or not pairs[0].fits((m, n)):
            raise UsageError("the pair must have size at least 2 and fit the shape")
    else:
        if m < 2:
            raise UsageError("no index pairs of size at least 2 when m = 1")
        pairs = sorted(index_pairs(m, n, 2))
    checks = [{"pair": p.label(), "holds": verify_dehom_plucker(p.rows, p.cols, m, n)} for p in pairs]
    ok = all(c["holds"] for c in checks)
    report = {"m": m, "n": n, "checks": checks, "all_hold": ok}
    rows = [("pair", "holds")] + [(c["pair"], str(c["holds"])) for c in checks]
    return report, _fixed_width(rows), 0 if ok else 1


def cmd_poset(args):
    config = build_config(args)
    poset = config_poset(config)
    dist, witness = is_distributive_lattice(poset)
    report = {
        "config": config.to_json(),
        "poset": poset.to_json(),
        "rank": rank(poset),
        "distributive_lattice": dist,
        "witness": None if witness is None else [witness[0]] + [label(x) for x in witness[1:]],
    }
    if args.dot:
        return report, poset.to_dot(), 0
    rows = [("element", "degree", "covers")]
    covers = poset.cover_relations()
    for e in poset.elements:
        rows.append((label(e), str(poset.degree[e]), " ".join(label(b) for a, b in covers if a == e)))
    table = _fixed_width(rows) + f"rank: {report['rank']}\ndistributive lattice: {dist}\n"
    return report, table, 0


COMMANDS = {
    "minor": (cmd_minor, "expand a quantum minor and compare with its Laplace expansion"),
    "straighten": (cmd_straighten, "straightening relation for an incomparable pair"),
    "commute": (cmd_commute, "commutation relation for an ordered pair"),
    "relations": (cmd_relations, "full relation table of a configuration"),
    "verify-asl": (cmd_verify_asl, "check the five straightening-law conditions"),
    "schubert-basis": (cmd_schubert_basis, "standard monomials of a quantum Schubert variety"),
    "ideal-check": (cmd_ideal_check, "membership and normalising sequence for a Pi-ideal"),
    "hilbert": (cmd_hilbert, "Hilbert series, GK dimension and Gorenstein test"),
    "gorenstein": (cmd_gorenstein, "Gorenstein functional-equation test"),
    "dehom-check": (cmd_dehom_check, "Pluecker identity behind dehomogenisation"),
    "poset": (cmd_poset, "the poset of a configuration"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qasl", description="Quantum straightening laws: relations, bases and Hilbert series.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, (_fn, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--kind", choices=["grassmannian", "matrix", "schubert", "detring"])
        p.add_argument("--m", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--t", type=int)
        p.add_argument("--gamma", help="comma-separated index set, e.g. 1,4")
        p.add_argument("--degree", type=int)
        p.add_argument("--q", help="specialize q to this rational number")
        p.add_argument("--format", choices=["json", "table"], default="json")
        p.add_argument("--out", help="write the report to this file instead of standard output")
        p.add_argument("--lhs", help="generators, e.g. 14,23 or 12|12,1|1")
        p.add_argument("--rows")
        p.add_argument("--cols")
        p.add_argument("--omega", help="generators of a Pi-ideal (downward closure is taken)")
        p.add_argument("--skip-full-span", action="store_true", help="verify-asl: skip the all-words rank check")
        p.add_argument("--dot", action="store_true", help="poset: emit Graphviz DOT")
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required; see --help")
        fn = COMMANDS[args.command][0]
        report, table, code = fn(args)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except (ConfigError, PosetError, ShapeError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except (CertificateError, GKDimensionMismatch, NotInSpan, IntegralityError) as exc:
        stderr.write(f"certificate failure: {exc}\n")
        return 1
    if args.format == "table" or (args.command == "poset" and args.dot):
        text = table
    elif isinstance(report, list):
        text = _dump_records(report)
    else:
        text = json.dumps(report, indent=2) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            stderr.write(f"error: cannot write {args.out}: {exc}\n")
            return 2
    else:
        stdout.write(text)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
