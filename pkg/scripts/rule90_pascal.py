"""Rule 90 (linear over F_2) from a single 1, checked against binomial parity.

    python scripts/rule90_pascal.py --rows 64 --out out/rule90
"""
import argparse
from pathlib import Path

from catca import render
from catca.ca import SparseConfig, iterate, linear_ca
from catca.groups import ZPower


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=64)
    ap.add_argument("--out", default="out/rule90")
    args = ap.parse_args()

    Z = ZPower(1)
    tau = linear_ca(Z, 2, [(-1,), (1,)], [1, 1])
    c0 = SparseConfig(Z, tau.A, {(0,): (1,)}, (0,))
    cells = render.window_cells(Z, args.rows - 1)
    frames = [c.window(cells) for c in iterate(tau, c0, args.rows - 1)]

    bad = 0
    for t, row in enumerate(frames):
        for (x,), v in zip(cells, row):
            k2 = x + t
            odd = k2 % 2 == 0 and 0 <= k2 // 2 <= t and (k2 // 2 & t) == k2 // 2
            bad += (v == (1,)) != odd
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "rule90.pgm").write_bytes(render.pgm_frames(Z, tau.A, cells, frames)[0])
    (out / "rule90.txt").write_text(render.text_frames(Z, tau.A, cells, frames))
    print(f"{args.rows} rows, {bad} cells disagree with binomial parity; wrote {out}")
    return int(bad != 0)


if __name__ == "__main__":
    raise SystemExit(main())
