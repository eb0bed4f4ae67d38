"""Any elementary rule from a single 1; prints the space-time diagram.

    python scripts/rule110.py --rule 110 --steps 16
"""
import argparse

from catca import render
from catca.ca import SparseConfig, elementary_ca, iterate
from catca.groups import ZPower

ap = argparse.ArgumentParser()
ap.add_argument("--rule", type=int, default=110)
ap.add_argument("--steps", type=int, default=16)
ap.add_argument("--pgm", help="also write a PGM here")
args = ap.parse_args()

Z = ZPower(1)
tau = elementary_ca(args.rule)
cells = render.window_cells(Z, args.steps)
frames = [c.window(cells) for c in iterate(tau, SparseConfig(Z, tau.A, {(0,): 1}, 0), args.steps)]
print(render.text_frames(Z, tau.A, cells, frames).replace("0", ".").replace("1", "#"), end="")
if args.pgm:
    with open(args.pgm, "wb") as fh:
        fh.write(render.pgm_frames(Z, tau.A, cells, frames)[0])
