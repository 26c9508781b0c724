"""Command line interface.

Exit codes: 0 success / verdict true, 1 verdict false or witness of failure,
2 input error (bad arguments, unreadable file, invalid algebra).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import congruences as cg
from . import products as pr
from .core import (
    FiniteSemiring,
    SemiringError,
    direct_product,
    is_idempotent,
    is_unitary,
    load,
    serialize,
)
from .ideals import enumerate_ideal_masks, ideal_lattice
from .lattice import FiniteLattice, find_pentagon, is_distributive, is_modular, to_dot
from .malcev import (
    DDCK_UNITARY,
    DIST0_IDEMPOTENT,
    SignatureError,
    TermSyntaxError,
    parse_term,
    verify_dist0_scheme,
    verify_ddck_scheme,
)
from .numeric import DomainError, NumericProduct, principal_membership

SCHEMA_VERSION = 1


class InputError(Exception):
    pass


class Outcome:
    def __init__(self, command: str, json_mode: bool):
        self.command = command
        self.json_mode = json_mode
        self.lines: list[str] = []
        self.data: dict = {"schema_version": SCHEMA_VERSION, "command": command}
        self.code = 0

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def render(self) -> str:
        if self.json_mode:
            self.data["exit_code"] = self.code
            return json.dumps(self.data, indent=2) + "\n"
        return "\n".join(self.lines) + "\n"


def _load(spec: str) -> FiniteSemiring:
    try:
        return load(spec)
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror or exc}") from None
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    except SemiringError as exc:
        raise InputError(f"{spec}: {exc}") from None


def _yes(flag: bool) -> str:
    return "true" if flag else "false"


def _lattice_summary(out: Outcome, L: FiniteLattice) -> None:
    mod, mod_w = is_modular(L)
    dist, dist_w = is_distributive(L)
    pent = find_pentagon(L)
    lab = L.labels
    out.say("hasse:")
    for lo, hi in L.hasse:
        out.say(f"  {lab[lo]} -> {lab[hi]}")
    out.say(f"modular: {_yes(mod)}" + ("" if mod else f" (a={lab[mod_w[0]]} b={lab[mod_w[1]]} x={lab[mod_w[2]]})"))
    out.say(f"distributive: {_yes(dist)}")
    if pent:
        out.say("pentagon: " + " ".join(f"{k}={lab[v]}" for k, v in zip(("bottom", "top", "x", "y", "z"), pent)))
    else:
        out.say("pentagon: none")
    out.data["lattice"] = {
        "hasse": [[lab[lo], lab[hi]] for lo, hi in L.hasse],
        "modular": mod,
        "modular_witness": [lab[i] for i in mod_w] if mod_w else None,
        "distributive": dist,
        "distributive_witness": [lab[i] for i in dist_w] if dist_w else None,
        "pentagon": [lab[i] for i in pent] if pent else None,
    }


# -- commands ------------------------------------------------------------------

def cmd_check(args, out: Outcome) -> None:
    S = _load(args.alg)
    unit = is_unitary(S)
    idem = is_idempotent(S)
    out.say(f"{S.name}: valid commutative semiring with {S.n} elements")
    out.say(f"unit: {S.elem_names[unit] if unit is not None else 'none'}")
    out.say(f"idempotent: {_yes(idem)}")
    out.data.update(
        name=S.name, valid=True, n=S.n, elements=list(S.elem_names),
        unit=S.elem_names[unit] if unit is not None else None, idempotent=idem,
    )


def cmd_ideals(args, out: Outcome) -> None:
    S = _load(args.alg)
    IL = ideal_lattice(S)
    out.say(f"{S.name}: {len(IL.ideals)} ideals")
    for m in IL.ideals:
        out.say(f"  {S.format_set(m)}")
    out.data.update(name=S.name, ideals=[S.names_of(m) for m in IL.ideals])
    if args.lattice:
        _lattice_summary(out, IL.lattice)
    if args.dot:
        Path(args.dot).write_text(to_dot(IL.lattice, f"Id {S.name}"), encoding="utf-8")
        out.say(f"dot: {args.dot}")


def cmd_congruences(args, out: Outcome) -> None:
    S = _load(args.alg)
    congs = cg.enumerate_congruences(S)
    out.say(f"{S.name}: {len(congs)} congruences")
    for c in congs:
        out.say(f"  {c}  kernel {cg.render_kernel(c)}")
    out.data.update(
        name=S.name,
        congruences=[{"blocks": str(c), "kernel": S.names_of(cg.kernel(c))} for c in congs],
    )
    if args.lattice:
        _lattice_summary(out, cg.congruence_lattice(S, congs))


def cmd_kernels(args, out: Outcome) -> None:
    S = _load(args.alg)
    congs = cg.enumerate_congruences(S)
    fam = cg.enumerate_kernels(S, congs)
    chain = fam.lattice.is_chain()
    out.say(f"{S.name}: {len(fam.kernels)} kernels" + (" (chain)" if chain else ""))
    for m in fam.kernels:
        out.say(f"  {S.format_set(m)}")
    failure = cg.kernel_map_join_failure(S, congs)
    if failure:
        t, p = failure
        lhs = S.format_set(cg.kernel(cg.join(t, p)))
        rhs = S.format_set(fam.join(cg.kernel(t), cg.kernel(p)))
        out.say(f"join failure: Theta={t} Phi={p}: [0](Theta v Phi) = {lhs} != {rhs}")
    else:
        out.say("join failure: none")
    out.data.update(
        name=S.name,
        kernels=[S.names_of(m) for m in fam.kernels],
        chain=chain,
        join_failure=[str(failure[0]), str(failure[1])] if failure else None,
    )
    if args.lattice:
        _lattice_summary(out, fam.lattice)


def cmd_product(args, out: Outcome) -> None:
    P = direct_product(_load(args.alg1), _load(args.alg2))
    text = serialize(P.base)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        out.say(f"{P.base.name}: {P.base.n} elements written to {args.out}")
    else:
        out.say(text.rstrip("\n"))
    out.data.update(name=P.base.name, n=P.base.n, semiring=json.loads(text))


def cmd_decompose(args, out: Outcome) -> None:
    P = direct_product(_load(args.alg1), _load(args.alg2))
    base = P.base
    if args.ideals:
        masks = enumerate_ideal_masks(base)
        skew = pr.skew_ideals(P)
        out.say(f"{base.name}: {len(masks)} ideals, {len(skew)} skew")
        for m in skew:
            out.say(f"  {base.format_set(m)}")
        out.data.update(name=base.name, ideals=len(masks), skew=[base.names_of(m) for m in skew])
        out.code = 1 if skew else 0
    else:
        audit = pr.audit_kernels(P, pr.thread_count())
        not_direct = [r for r in audit.rows if not r.conditions["T3.direct"]]
        not_strong = [r for r in audit.rows if not r.conditions["T2.strong"]]
        out.say(
            f"{base.name}: {len(audit.rows)} congruences, "
            f"{len(not_direct)} kernels not directly decomposable, "
            f"{len(not_strong)} not strongly decomposable"
        )
        for r in not_strong:
            tag = "not direct" if not r.conditions["T3.direct"] else "direct only"
            out.say(f"  {r.subject}  kernel {base.format_set(r.mask)}  ({tag})")
        out.data.update(
            name=base.name,
            congruences=len(audit.rows),
            not_directly_decomposable=[r.subject for r in not_direct],
            not_strongly_decomposable=[r.subject for r in not_strong],
        )
        out.code = 1 if not_strong else 0


def cmd_audit(args, out: Outcome) -> None:
    P = direct_product(_load(args.alg1), _load(args.alg2))
    workers = pr.thread_count()
    t1 = pr.audit_theorem1(P, workers)
    kern = pr.audit_kernels(P, workers)
    out.say(f"{P.base.name}: condition chain (iii)<=>(i)=>(iv)=>(ii) holds on all {len(t1.rows)} ideals")
    out.say(f"  skew ideals: {len(t1.skew)}")
    out.say(f"  strictness witnesses ((ii) true, (iii) false): {len(t1.strictness_witnesses)}")
    for r in t1.strictness_witnesses:
        out.say(f"    {r.subject}")
    out.say(f"kernel conditions checked on all {len(kern.rows)} congruences")
    for c in pr.KERNEL_CONDITIONS:
        out.say(f"  {c}: {sum(r.conditions[c] for r in kern.rows)}/{len(kern.rows)}")
    if args.csv:
        Path(args.csv).write_text(pr.audit_csv(P, t1.rows, pr.T1_CONDITIONS), encoding="utf-8")
        out.say(f"csv: {args.csv}")
    if args.kernel_csv:
        Path(args.kernel_csv).write_text(pr.audit_csv(P, kern.rows, pr.KERNEL_CONDITIONS), encoding="utf-8")
        out.say(f"kernel csv: {args.kernel_csv}")

    def rows_json(rows, names):
        return [
            {
                "subject": r.subject,
                "conditions": {c: r.conditions[c] for c in names},
                "witness": list(r.witness) if r.witness else None,
            }
            for r in rows
        ]

    out.data.update(
        name=P.base.name,
        ideals=rows_json(t1.rows, pr.T1_CONDITIONS),
        strictness_witnesses=[r.subject for r in t1.strictness_witnesses],
        kernels=rows_json(kern.rows, pr.KERNEL_CONDITIONS),
    )


def cmd_malcev(args, out: Outcome) -> None:
    S = _load(args.alg)
    try:
        if args.scheme == "dist0":
            texts = args.terms or list(DIST0_IDEMPOTENT)
            report = verify_dist0_scheme(S, [parse_term(t) for t in texts])
        else:
            if args.terms:
                m = args.m
                if m is None or len(args.terms) <= 2 * m:
                    raise InputError("ddck needs --m M and 2M+N terms: s1..sM t1..tM u1..uN")
                texts = args.terms
                s, t, u = texts[:m], texts[m:2 * m], texts[2 * m:]
            else:
                s, t, u = (list(DDCK_UNITARY[k]) for k in ("s", "t", "u"))
            report = verify_ddck_scheme(
                S, [parse_term(x) for x in s], [parse_term(x) for x in t], [parse_term(x) for x in u]
            )
    except TermSyntaxError as exc:
        raise InputError(f"term syntax: {exc}") from None
    except SignatureError as exc:
        raise InputError(f"signature error: {exc}") from None
    for r in report.identities:
        line = f"  {r.name}: {'holds' if r.holds else 'fails'}"
        if r.witness:
            line += " at " + ", ".join(f"{k}={v}" for k, v in r.witness.items())
        out.say(line)
    out.lines.insert(0, f"{S.name}: scheme {report.scheme} {'passes' if report.passed else 'fails'}")
    out.data.update(
        name=S.name, scheme=report.scheme, passed=report.passed,
        identities=[{"name": r.name, "holds": r.holds, "witness": r.witness} for r in report.identities],
    )
    out.code = 0 if report.passed else 1


def _pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def cmd_numeric(args, out: Outcome) -> None:
    try:
        ctx = NumericProduct(*args.bases)
        member = principal_membership(ctx, args.gen, args.query)
    except DomainError as exc:
        raise InputError(str(exc)) from None
    out.say(f"member: {_yes(member)}")
    out.data.update(bases=list(args.bases), gen=list(args.gen), query=list(args.query), member=member)
    out.code = 0 if member else 1


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="structured output")
    parser = argparse.ArgumentParser(prog="semiring-lab", description="Finite commutative semiring workbench")
    parser.add_argument("--json", action="store_true", help="structured output")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    alg_help = "JSON file or builtin:NAME"

    p = sub.add_parser("check", parents=[common], help="validate an algebra")
    p.add_argument("alg", help=alg_help)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("ideals", parents=[common], help="enumerate ideals")
    p.add_argument("alg", help=alg_help)
    p.add_argument("--lattice", action="store_true")
    p.add_argument("--dot", metavar="PATH")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("congruences", parents=[common], help="enumerate congruences")
    p.add_argument("alg", help=alg_help)
    p.add_argument("--lattice", action="store_true")
    p.set_defaults(func=cmd_congruences)

    p = sub.add_parser("kernels", parents=[common], help="enumerate congruence kernels")
    p.add_argument("alg", help=alg_help)
    p.add_argument("--lattice", action="store_true")
    p.set_defaults(func=cmd_kernels)

    p = sub.add_parser("product", parents=[common], help="form a direct product")
    p.add_argument("alg1", help=alg_help)
    p.add_argument("alg2", help=alg_help)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("decompose", parents=[common], help="direct decomposability")
    p.add_argument("alg1", help=alg_help)
    p.add_argument("alg2", help=alg_help)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--ideals", action="store_true")
    mode.add_argument("--kernels", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("audit", parents=[common], help="audit all decomposability conditions")
    p.add_argument("alg1", help=alg_help)
    p.add_argument("alg2", help=alg_help)
    p.add_argument("--csv", metavar="PATH", help="write the ideal audit as CSV")
    p.add_argument("--kernel-csv", metavar="PATH", help="write the kernel audit as CSV")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("malcev", parents=[common], help="verify a term scheme")
    p.add_argument("alg", help=alg_help)
    p.add_argument("--scheme", choices=("dist0", "ddck"), required=True)
    p.add_argument("--terms", nargs="+", metavar="TERM")
    p.add_argument("--m", type=int, help="number of s (and t) terms for ddck")
    p.set_defaults(func=cmd_malcev)

    p = sub.add_parser("numeric", parents=[common], help="membership in a principal ideal of a1N x a2N")
    p.add_argument("--bases", type=_pair, required=True)
    p.add_argument("--gen", type=_pair, required=True)
    p.add_argument("--query", type=_pair, required=True)
    p.set_defaults(func=cmd_numeric)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Outcome(args.command, args.json)
    try:
        pr.thread_count()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SemiringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except pr.ImplicationViolation as exc:
        print(f"implication violated: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out.render())
    return out.code


if __name__ == "__main__":
    sys.exit(main())
