"""Which fundamental weights are pseudo-minuscule, and how big is B_1 for them.

Prints one line per (type, node) with (lambda, theta), det B, <L|L> and dim B_1,
and compares dim B_1 with the Weyl orbit size.  The two differ exactly for the
pseudo-minuscule weights that are not minuscule (B_r with Lambda_1, C_r with Lambda_r).
"""
import time

import numpy as np

from tha_forge import rootsys, superlocal

TYPES = [("A", r) for r in range(1, 6)] + [("B", r) for r in range(2, 5)] + \
        [("C", r) for r in range(2, 5)] + [("D", r) for r in range(4, 7)] + \
        [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]

rows = []
t0 = time.perf_counter()
for t, r in TYPES:
    c = rootsys.build_cartan(t, r)
    nodes = rootsys.pseudo_minuscule_nodes(c)
    if not nodes:
        print(f"{c.label:4s}  none")
    for k in nodes:
        lab = [int(i == k - 1) for i in range(r)]
        w = rootsys.make_weight(c, lab, "auto")
        ext = rootsys.build_B(c, w)
        tb = superlocal.build_local_part(c, w, ext)
        orbit = len(rootsys.weyl_orbit(c, lab))
        rows.append((tb.n1, orbit))
        print(f"{c.label:4s}  L{k}  (l,theta)={rootsys.lambda_theta(c, w)}  detB={ext.det}"
              f"  <L|L>={rootsys.L_norm(ext)}  dim B1={tb.n1}  |W.l|={orbit}")

dims = np.array(rows)
print(f"\n{len(rows)} cases in {time.perf_counter() - t0:.1f}s;"
      f" dim B1 exceeds the orbit in {int((dims[:, 0] > dims[:, 1]).sum())} of them")
