import argparse
import logging
import sys
from math import gcd
from typing import Dict, List, Optional

# ================= IMPORTS =================
from core.cyclic_enum import (
    Lambda_bar,
    build_selection_set_A,
    count_selfdual_cyclic,
    count_selfdual_theta_cyclic,
    selection_to_generator,
    selfdual_cyclic_exists,
)
from core.errors import PreconditionError
from core.gf_core import Automorphism, prime_power
from core.oracle import enumerate_selfdual_cyclic, enumerate_theta_cyclic_selfdual
from core.polyring import factor_xn_minus_1
from core.quasicyclic import CASES, RhoInputs, proposition_counts

from utils.config import DEFAULT_LOG_LEVEL, FORMATS, RunConfig, parse_range
from utils.reports import EXIT_DISAGREE, failure, ok, render, table_data

logger = logging.getLogger("selfdual")


# ================= COUNT =================

def _theta_order(q: int, r: int) -> int:
    _, m = prime_power(q)
    if not 1 <= r <= m:
        raise PreconditionError(f"r={r} must lie in [1, {m}] for q={q}")
    return m // gcd(m, r)


def count_row(q: int, n: int, r: int) -> Dict:
    """One row of counts for (q, n, r); zeros when no self-dual cyclic code exists."""
    order = _theta_order(q, r)
    row = {
        "q": q,
        "n": n,
        "r": r,
        "theta_order": order,
        "gcd_n_theta": gcd(n, order),
        "selfdual_cyclic_count": 0,
        "Lambda_bar": 0,
        "theta_cyclic_count": 0,
    }
    if not selfdual_cyclic_exists(q, n):
        logger.warning("q=%d, n=%d: self-dual cyclic codes need q a power of 2 and n even", q, n)
        return row
    row["selfdual_cyclic_count"] = count_selfdual_cyclic(q, n)
    row["Lambda_bar"] = Lambda_bar(build_selection_set_A(q, n), r)
    row["theta_cyclic_count"] = count_selfdual_theta_cyclic(q, n, r)
    return row


def cmd_count(config: RunConfig) -> Dict:
    q = config.field_spec().q
    row = count_row(q, _required(config.n, "n"), config.r or 1)
    row["regime_holds"] = row["gcd_n_theta"] == 1
    return ok(row)


def cmd_verify(config: RunConfig) -> Dict:
    spec = config.field_spec()
    n, r = _required(config.n, "n"), config.r or 1
    row = count_row(spec.q, n, r)
    codes = enumerate_theta_cyclic_selfdual(spec, n, r, guard=config.guard, jobs=config.jobs)
    data = {
        "q": spec.q,
        "n": n,
        "r": r,
        "gcd_n_theta": row["gcd_n_theta"],
        "regime_holds": row["gcd_n_theta"] == 1,
        "formula": row["theta_cyclic_count"],
        "oracle": len(codes),
        "agree": row["theta_cyclic_count"] == len(codes),
        "oracle_codes": [c.to_dict() for c in codes],
    }
    if selfdual_cyclic_exists(spec.q, n):
        cyclic = enumerate_selfdual_cyclic(spec, n)
        data["cyclic_formula"] = row["selfdual_cyclic_count"]
        data["cyclic_oracle"] = len(cyclic)
    if not data["agree"]:
        logger.warning("Formula %d and oracle %d disagree for q=%d, n=%d, r=%d",
                       data["formula"], data["oracle"], spec.q, n, r)
        if config.strict:
            return ok(data, EXIT_DISAGREE)
    return ok(data)


# ================= TABLE =================

def cmd_table(config: RunConfig) -> Dict:
    qs = parse_range(config.ranges.get("q"), "q")
    ns = parse_range(config.ranges.get("n"), "n")
    rs = parse_range(config.ranges.get("r") or "1", "r")
    rows = []
    for q in qs:
        try:
            _, m = prime_power(q)
        except PreconditionError:
            logger.info("Skipping q=%d: not a prime power", q)
            continue
        for n in ns:
            for r in rs:
                if not 1 <= r <= m:
                    logger.info("Skipping r=%d for q=%d", r, q)
                    continue
                logger.info("Row q=%d, n=%d, r=%d", q, n, r)
                rows.append(count_row(q, n, r))
    return ok(table_data(rows))


# ================= QUASI-CYCLIC =================

def cmd_qc(config: RunConfig) -> Dict:
    case = config.case
    if case not in CASES:
        raise PreconditionError(f"--case must be one of {', '.join(CASES)}")
    q = config.field_spec().q
    size = _required(config.m if case == "P5" else config.d, "m" if case == "P5" else "d")
    rho_inputs = RhoInputs(config.rho_g, config.rho_h, config.rho_hh)
    report = proposition_counts(case, q, size, config.r or 1, rho_inputs,
                                guard=config.guard, jobs=config.jobs)
    if config.strict and report["agree"] is False:
        return ok(report, EXIT_DISAGREE)
    return ok(report)


# ================= EXPORTS =================

def cmd_selections(config: RunConfig) -> Dict:
    spec = config.field_spec()
    n, r = _required(config.n, "n"), config.r or 1
    theta = Automorphism(spec, r)
    selections = build_selection_set_A(spec.q, n)
    entries = []
    for sel in selections:
        generator = selection_to_generator(sel, spec)
        entries.append({
            "multiplicities": sel.to_dict(),
            "degree": sel.degree(),
            "generator": generator.to_json(),
            "generator_text": str(generator),
            "fixed_by_Lambda": sel.relabel(r) == sel,
        })
    return ok({"q": spec.q, "n": n, "r": r, "theta_order": theta.order,
               "count": len(entries), "selections": entries})


def cmd_factor(config: RunConfig) -> Dict:
    spec = config.field_spec()
    return ok(factor_xn_minus_1(spec, _required(config.n, "n")).to_dict())


def _required(value: Optional[int], name: str) -> int:
    if value is None:
        raise PreconditionError(f"--{name} is required")
    return value


COMMANDS = {
    "count": cmd_count,
    "verify": cmd_verify,
    "table": cmd_table,
    "qc": cmd_qc,
    "selections": cmd_selections,
    "factor": cmd_factor,
}


# ================= ARGUMENTS =================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfdual",
        description="Count and enumerate Euclidean self-dual theta-cyclic codes over finite fields.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="Output format (default json).")
    common.add_argument("--guard", type=int, default=None, help="Ceiling on exhaustive search candidates.")
    common.add_argument("--strict", action="store_true", help="Exit 4 when formula and oracle disagree.")
    common.add_argument("--no-meta", action="store_true", help="Leave out the metadata block.")
    common.add_argument("--jobs", type=int, default=None, help="Worker processes for oracle searches.")
    common.add_argument("--log-level", default=DEFAULT_LOG_LEVEL, help="Logging level (stderr).")

    fields = argparse.ArgumentParser(add_help=False)
    fields.add_argument("--q", type=int, help="Field size q = p^m.")
    fields.add_argument("--p", type=int, help="Field characteristic.")
    fields.add_argument("--m", type=int, help="Field extension degree (co-index for qc).")
    fields.add_argument("--modulus", help="Comma-separated modulus coefficients, lowest degree first.")
    fields.add_argument("--r", type=int, help="Frobenius exponent of theta (default 1).")

    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("count", "Self-dual cyclic and theta-cyclic counts."),
        ("verify", "Compare the theta-cyclic count with the skew-divisor oracle."),
        ("selections", "Export the generator selections of all self-dual cyclic codes."),
        ("factor", "Factor x^n - 1 into self-reciprocal factors and reciprocal pairs."),
    ):
        cmd = sub.add_parser(name, parents=[common, fields], help=help_text)
        cmd.add_argument("--n", type=int, help="Code length.")

    qc = sub.add_parser("qc", parents=[common, fields], help="Quasi-cyclic count formulas.")
    qc.add_argument("--case", choices=CASES, required=True)
    qc.add_argument("--d", type=int, help="Index of the quasi-cyclic code (P6 to P10).")
    qc.add_argument("--rho-g", type=int, nargs="*", help="rho_G values for i = 1 .. d/2 - 1.")
    qc.add_argument("--rho-h", type=int, nargs="*", help="rho_H' values for i = 1 .. d/2 - 1.")
    qc.add_argument("--rho-hh", type=int, help="rho_{H', H''} value.")

    table = sub.add_parser("table", parents=[common], help="Sweep counts over a (q, n, r) grid.")
    table.add_argument("--q", required=True, help="Range a[:b[:step]] of field sizes.")
    table.add_argument("--n", required=True, help="Range a[:b[:step]] of lengths.")
    table.add_argument("--r", help="Range of Frobenius exponents (default 1).")
    return parser


def run(argv: Optional[List[str]] = None) -> Dict:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    config = None
    try:
        config = RunConfig.from_namespace(args).validate()
        result = COMMANDS[config.command](config)
    except Exception as e:
        result = failure(e)
    result["command"] = args.command
    result["format"] = config.format if config else "json"
    result["meta"] = config.meta if config else True
    return result


def main(argv: Optional[List[str]] = None) -> int:
    result = run(argv)
    print(render(result, result["format"], result["command"], result["meta"]))
    return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
