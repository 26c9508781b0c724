"""Survey decomposability across all pairs of catalogue algebras.

For each product up to a size cap, count skew ideals, kernels that fail
direct / strong decomposability, and whether the product is distributive
at 0. Prints a CSV table to stdout.

    python scripts/survey_products.py --max-size 16
"""

from __future__ import annotations

import argparse
import csv
import itertools
import sys
from dataclasses import dataclass

from semiring_lab import congruences as cg
from semiring_lab import products as pr
from semiring_lab.core import BUILTIN_NAMES, builtin, direct_product, is_idempotent, is_unitary


@dataclass(frozen=True)
class SurveyConfig:
    max_size: int = 16
    # distributivity at 0 is cubic in the number of congruences
    dist0_max_size: int = 8


def survey_row(cfg: SurveyConfig, left: str, right: str) -> dict:
    P = direct_product(builtin(left), builtin(right))
    congs = cg.enumerate_congruences(P.base)
    t1 = pr.audit_theorem1(P)
    kern = pr.audit_kernels(P)
    d0 = cg.is_distributive_at_zero(P.base, congs)[0] if P.base.n <= cfg.dist0_max_size else ""
    return {
        "product": P.base.name,
        "n": P.base.n,
        "case": pr.corollary_case(P.left, P.right) or "",
        "ideals": len(t1.rows),
        "skew": len(t1.skew),
        "strict_ii_not_iii": len(t1.strictness_witnesses),
        "congruences": len(congs),
        "not_direct": sum(not r.conditions["T3.direct"] for r in kern.rows),
        "not_strong": sum(not r.conditions["T2.strong"] for r in kern.rows),
        "t4_sufficient": sum(r.conditions["T4.sufficient"] for r in kern.rows),
        "dist0": d0,
        "unitary": is_unitary(P.base) is not None,
        "idempotent": is_idempotent(P.base),
    }


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--max-size", type=int, default=SurveyConfig.max_size)
    args = parser.parse_args(argv)
    cfg = SurveyConfig(max_size=args.max_size)
    pairs = [
        (a, b)
        for a, b in itertools.combinations_with_replacement(BUILTIN_NAMES, 2)
        if builtin(a).n * builtin(b).n <= cfg.max_size
    ]
    writer = None
    for a, b in pairs:
        row = survey_row(cfg, a, b)
        if writer is None:
            writer = csv.DictWriter(sys.stdout, fieldnames=list(row), lineterminator="\n")
            writer.writeheader()
        writer.writerow(row)


if __name__ == "__main__":
    main()
