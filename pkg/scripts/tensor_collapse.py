"""Show that Z tensored with Z over F_1 collapses back to Z."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from genring.presentations import derive_equal, find_countermodel, parse_term, tensor_presentation
from genring.presentations.library import library


@dataclass
class CollapseConfig:
    left: str = "Z"
    right: str = "Z"
    depth: int = 2
    max_size: int = 3
    goals: tuple[tuple[str, str], ...] = (
        ("add_1(x1, x2)", "add_2(x1, x2)"),
        ("neg_1(x1)", "neg_2(x1)"),
    )


def run(cfg: CollapseConfig) -> bool:
    p = tensor_presentation(library(cfg.left), library(cfg.right))
    print(p.to_text())
    ok = True
    for lhs, rhs in cfg.goals:
        a, b = parse_term(lhs, p), parse_term(rhs, p)
        proof = derive_equal(p, a, b, budget=cfg.depth)
        model = find_countermodel(p, a, b, cfg.max_size)
        print(f"{lhs} = {rhs}: {proof.status} (depth {proof.depth}, "
              f"{proof.instances} instances); countermodel up to size {cfg.max_size}: "
              f"{'none' if model is None else model.size}")
        ok &= proof.proven and model is None
    return ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=2)
    ap.add_argument("--size", type=int, default=3)
    args = ap.parse_args()
    raise SystemExit(0 if run(CollapseConfig(depth=args.depth, max_size=args.size)) else 1)


if __name__ == "__main__":
    main()
