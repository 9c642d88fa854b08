"""Stab growth and bandwidth of the spiral family G^n.

For each n prints the labeling bandwidth, the dimensions in which the u/v
pairs meet, and the largest number of v-boxes stabbed by one line. With
--svg, also writes the representation of G^k for the given k.

    python scripts/spiral_growth.py --ns 1 2 4 8 16 32 64 100 --svg 3 --out spiral3.svg
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from boxkit import verify
from boxkit.graph import bandwidth_of_labeling
from boxkit.gadgets import build_gn, gn_box_representation, gn_labeling, stab_analysis, uv_dimensions
from boxkit.svg import render_svg


@dataclass
class SpiralConfig:
    ns: list[int] = field(default_factory=lambda: [1, 2, 4, 8, 16, 32, 64, 100])
    svg: int | None = None
    out: str = "spiral.svg"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ns", type=int, nargs="+", default=SpiralConfig().ns)
    parser.add_argument("--svg", type=int, default=None, metavar="K")
    parser.add_argument("--out", default=SpiralConfig.out)
    cfg = SpiralConfig(**vars(parser.parse_args()))
    print(f"{'n':>4} {'|V|':>5} {'bw':>3} {'stab':>5} {'stab/n':>7}  uv dims")
    for n in cfg.ns:
        gadget = build_gn(n)
        rep = gn_box_representation(n)
        assert verify(gadget.graph, rep)
        bw = bandwidth_of_labeling(gadget.graph, gn_labeling(n))
        _, _, count = stab_analysis(rep, gadget.named("v"))
        dims = "".join(map(str, uv_dimensions(gadget, rep)))
        print(f"{n:>4} {gadget.graph.n:>5} {bw:>3} {count:>5} {count / n:>7.3f}  {dims[:40]}")
    if cfg.svg is not None:
        Path(cfg.out).write_text(render_svg(gn_box_representation(cfg.svg)))
        print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
