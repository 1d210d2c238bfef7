"""Compare V / D_max with the local part of W(n) for A_{n-1}, Lambda_1.

Nothing here is asserted: this is a probe.  V is built up to a filtration
cutoff and the table says whether that cutoff was ever reached.
"""
from tha_forge import setup, tha

for r in (1, 2, 3):
    tables, eng = setup("A", r, [1] + [0] * (r - 1))
    rep = tha.conjecture_probe(tables, eng, cutoff=2)
    print(f"A{r}, Lambda_1")
    for row in rep["table"]:
        print(f"  degree {row['degree']:+d}: V={row['V']:3d}  D={row['D']:3d}  V/D={row['V/D']:3d}"
              f"  W={row['W']}  agree={row['agree']}")
    print("  " + rep["caveat"])
