"""Map the W presentation into the commutator algebra and reduce every relation.

Usage: python3 demos/theorem_check.py [TYPE RANK LABELS [CUTOFF]]
e.g.   python3 demos/theorem_check.py A 3 0,1,0 3
"""
import sys

from tha_forge import setup, tha

args = sys.argv[1:] or ["A", "2", "1,0"]
t, r, labels = args[0], int(args[1]), [int(x) for x in args[2].split(",")]
cutoff = int(args[3]) if len(args) > 3 else 4

tables, eng = setup(t, r, labels)
w = tha.w_element(eng)
print("w =", w.render(tables))

lem = tha.lemma42_check(tables, eng)
print("[x, w] = 0 for every x in B_1:", lem["passed"])

rep = tha.thm43_check(tables, eng, cutoff=cutoff)
print(f"special node {rep['special_node']}, V dims {rep['V_dims']}, ideal dims {rep['ideal']['dims']},"
      f" maximal peripheral {rep['maximal_peripheral_dims']}")
for g, counts in rep["groups"].items():
    print(f"  {g:6s} {counts}")
shown = 0
for row in rep["relations"]:
    if row["status"] == "in_ideal" and shown < 4:
        print(f"  {row['relation']}\n      residue {row['residue']}")
        shown += 1
print("all relations zero modulo the ideal of w:", rep["passed"])
