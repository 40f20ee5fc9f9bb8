"""Print the hypo/hyperadditivity table for the standard examples."""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field

from genring.classify import classify_additivity, find_pseudoaddition, format_table
from genring.errors import InputError
from genring.registry import monad_from_ident


@dataclass
class TableConfig:
    monads: list[str] = field(default_factory=lambda: [
        "Z", "N", "Zinf", "Fempty", "F1", "F1n:2", "F1n:3", "F1n:6", "Finf",
        "AN:2", "AN:3", "AN:6", "BN:2", "BN:6",
    ])
    n_max: int = 3
    box: int = 2
    as_json: bool = False


def build_rows(cfg: TableConfig):
    return [classify_additivity(monad_from_ident(i), cfg.n_max, cfg.box) for i in cfg.monads]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--arity", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("monads", nargs="*")
    args = ap.parse_args()
    cfg = TableConfig(n_max=args.arity, as_json=args.json)
    if args.monads:
        cfg.monads = args.monads
    rows = build_rows(cfg)
    if cfg.as_json:
        print(json.dumps([r.row() for r in rows], indent=2))
        return
    print(format_table(rows))
    print()
    for ident in cfg.monads:
        try:
            pa = find_pseudoaddition(monad_from_ident(ident))
        except InputError:
            continue
        if pa.element is not None:
            print(f"pseudoaddition in {ident}: {pa.element}")


if __name__ == "__main__":
    main()
