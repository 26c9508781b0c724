"""Regenerate every worked example and write the artifacts to an output directory.

    python scripts/reproduce_examples.py --out results/
"""

from __future__ import annotations

import argparse
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from semiring_lab import congruences as cg
from semiring_lab import products as pr
from semiring_lab.core import builtin, direct_product
from semiring_lab.ideals import ideal_lattice
from semiring_lab.lattice import find_pentagon, is_modular, to_dot
from semiring_lab.malcev import (
    SignatureError,
    idempotent_dist0_terms,
    unitary_ddck_terms,
    verify_dist0_scheme,
    verify_ddck_scheme,
)
from semiring_lab.numeric import NumericProduct, principal_membership

log = logging.getLogger("reproduce")


@dataclass
class Config:
    out: Path = Path("results")
    audit_pairs: list[tuple[str, str]] = field(
        default_factory=lambda: [("R2", "D2"), ("R4", "D2"), ("D2", "D2"), ("D2", "D3"), ("S8", "Z2F")]
    )
    numeric_queries: list[tuple[int, int]] = field(
        default_factory=lambda: [(4, 0), (0, 6), (4, 6), (8, 12), (12, 18), (8, 6)]
    )


def lattice_figures(cfg: Config, summary: dict) -> None:
    S8 = builtin("S8")
    IL = ideal_lattice(S8)
    (cfg.out / "id_s8.dot").write_text(to_dot(IL.lattice, "Id S8"))
    pent = find_pentagon(IL.lattice)
    summary["id_s8"] = {
        "ideals": [S8.format_set(m) for m in IL.ideals],
        "covers": len(IL.lattice.hasse),
        "modular": is_modular(IL.lattice)[0],
        "pentagon": [IL.lattice.labels[i] for i in pent] if pent else None,
    }

    D3 = builtin("D3")
    congs = cg.enumerate_congruences(D3)
    (cfg.out / "con_d3.dot").write_text(to_dot(cg.congruence_lattice(D3, congs), "Con D3"))
    fam = cg.enumerate_kernels(D3, congs)
    (cfg.out / "ker_d3.dot").write_text(to_dot(fam.lattice, "Ker D3"))
    t, p = cg.kernel_map_join_failure(D3, congs)
    summary["con_d3"] = {
        "congruences": [str(c) for c in congs],
        "kernels": list(fam.lattice.labels),
        "join_failure": [str(t), str(p)],
    }


def product_audits(cfg: Config, summary: dict) -> None:
    rows = {}
    for a, b in cfg.audit_pairs:
        P = direct_product(builtin(a), builtin(b))
        t1 = pr.audit_theorem1(P, pr.thread_count())
        kern = pr.audit_kernels(P, pr.thread_count())
        stem = f"{a}x{b}"
        (cfg.out / f"audit_{stem}_ideals.csv").write_text(pr.audit_csv(P, t1.rows, pr.T1_CONDITIONS))
        (cfg.out / f"audit_{stem}_kernels.csv").write_text(pr.audit_csv(P, kern.rows, pr.KERNEL_CONDITIONS))
        rows[stem] = {
            "ideals": len(t1.rows),
            "skew": [r.subject for r in t1.skew],
            "strictness_witnesses": [r.subject for r in t1.strictness_witnesses],
            "congruences": len(kern.rows),
            **{c: sum(r.conditions[c] for r in kern.rows) for c in pr.KERNEL_CONDITIONS},
        }
        log.info("%s: %d ideals, %d skew, %d congruences", stem, len(t1.rows), len(t1.skew), len(kern.rows))
    summary["audits"] = rows


def schemes(summary: dict) -> None:
    out = {}
    s, t, u = unitary_ddck_terms()
    for name in ("D2", "D3", "R2", "Z2F"):
        S = builtin(name)
        dist0 = verify_dist0_scheme(S, idempotent_dist0_terms())
        try:
            ddck = verify_ddck_scheme(S, s, t, u).passed
        except SignatureError:
            ddck = "signature error"
        out[name] = {
            "dist0": dist0.passed,
            "dist0_failures": [[f.name, f.witness] for f in dist0.failures()],
            "ddck": ddck,
        }
    summary["schemes"] = out


def numeric(cfg: Config, summary: dict) -> None:
    ctx = NumericProduct(2, 2)
    summary["numeric_I46"] = {
        f"{q}": principal_membership(ctx, (4, 6), q) for q in cfg.numeric_queries
    }


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Config.out)
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    cfg = Config(out=args.out)
    cfg.out.mkdir(parents=True, exist_ok=True)
    summary: dict = {}
    lattice_figures(cfg, summary)
    product_audits(cfg, summary)
    schemes(summary)
    numeric(cfg, summary)
    (cfg.out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    log.info("wrote %s", cfg.out / "summary.json")


if __name__ == "__main__":
    main()
