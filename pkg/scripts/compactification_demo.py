"""Walk through Spec-hat^(N): points, opens, stalks, Proj R and Pic."""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from genring import spectra as sp
from genring.picard_arakelov import pic_group
from genring.projgraded import proj_is_compactification


@dataclass
class DemoConfig:
    N: int = 6
    prime_bound: int = 20
    open_bound: int = 13
    samples: int = 300
    probes: tuple[str, ...] = ("1/2", "5/6", "7/3", "1/5")


def run(cfg: DemoConfig) -> None:
    s = sp.compactified(cfg.N)
    print(f"{s.name}: points up to {cfg.prime_bound}")
    print("  " + ", ".join(str(p) for p in sp.points(s, cfg.prime_bound)))
    for pt in (sp.prime_point(2), sp.prime_point(5), sp.INF_PT):
        print(f"  closure({pt}) = {sp.closure(s, pt)}")

    print("\nopen sets")
    for comp in (["inf"], ["5"], ["2", "3"], ["5", "inf"]):
        u = sp.OpenSubset.avoiding(s, map(sp.parse_point, comp))
        print(f"  complement {{{', '.join(comp)}}}: {'open' if sp.is_open(s, u) else 'not open'}")
    tr, opens = sp.truncated_topology(s, [2, 3, 5, 7])
    print(f"  brute force on {len(tr.pts)} points: {len(opens)} opens, "
          f"topology: {sp.is_topology(tr.full, opens)}")

    print("\nstalk at infinity")
    stalk = sp.stalk(s, sp.INF_PT)
    for x in cfg.probes:
        print(f"  {x} in {stalk.name}: {sp.membership(stalk, Fraction(x))}")

    rep = proj_is_compactification(cfg.N, cfg.prime_bound, cfg.samples, open_bound=cfg.open_bound)
    print(f"\nProj R for N={cfg.N}: isomorphic = {rep.isomorphic}")
    for c in rep.charts:
        print(f"  {c.label}: sections {c.sections.name}")

    G = pic_group(cfg.N)
    print(f"\nPic has rank {G.rank} with basis {', '.join(G.labels)}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("N", type=int, nargs="?", default=6)
    ap.add_argument("--bound", type=int, default=20)
    args = ap.parse_args()
    run(DemoConfig(N=args.N, prime_bound=args.bound))


if __name__ == "__main__":
    main()
