"""Mediator into (A x B)^{Z2 * Z3}: print the diagram values on the radius-2 ball
for every configuration in C^{Z6}, and count equation failures (should be 0).

    python scripts/weak_product_trace.py --c 3 --show 2
"""
import argparse
import itertools

import numpy as np

from catca.ca import DenseConfig, apply
from catca.categories import FINSET
from catca.gca import make_gca, weak_product, weak_product_mediator
from catca.groups import Subset, TableHom, ball, cyclic
from catca.sampling import random_morphism

ap = argparse.ArgumentParser()
ap.add_argument("--c", type=int, default=3, help="size of C")
ap.add_argument("--seed", type=int, default=0)
ap.add_argument("--show", type=int, default=1, help="configurations to print in full")
args = ap.parse_args()

rng = np.random.default_rng(args.seed)
G, H, K = cyclic(2), cyclic(3), cyclic(6)
A = B = FINSET.obj(2)
C = FINSET.obj(args.c)
phi, psi = TableHom(G, K, [0, 3]), TableHom(H, K, [0, 2, 4])
S, T = Subset(K, [0, 1]), Subset(K, [5, 0])
alpha = make_gca(K, G, phi, C, A, S, random_morphism(FINSET.power(C, S).carrier, A, rng))
beta = make_gca(K, H, psi, C, B, T, random_morphism(FINSET.power(C, T).carrier, B, rng))
m = weak_product_mediator(alpha, beta)
iota_A, iota_B = weak_product(A, B, G, H)
_, pA, pB = FINSET.product(A, B)
words = ball(m.H, 2)

bad = 0
for n, values in enumerate(itertools.product(range(args.c), repeat=6)):
    c = DenseConfig(K, C, list(values))
    mc = apply(m, c)
    la, lb = apply(iota_A, mc), apply(iota_B, mc)
    ac, bc = apply(alpha, c), apply(beta, c)
    bad += sum(la.at(g) != ac.at(g) for g in G.elements())
    bad += sum(lb.at(h) != bc.at(h) for h in H.elements())
    if n < args.show:
        print("c =", values)
        for w in words:
            v = mc.at(w)
            print(f"  {str(w):40s} gamma={m.phi(w)}  (a, b) = ({FINSET.apply(pA, v)}, {FINSET.apply(pB, v)})")
print(f"{args.c ** 6} configurations, {bad} equation failures")
