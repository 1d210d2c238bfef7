"""A1 with lambda = Lambda_1, by hand.

The smallest case: B_0 is sl2 plus h0, B_1 and B_-1 are two-dimensional.
We print the tables, multiply a few elements, and watch the two associativity
laws that are *not* imposed fail.
"""
from tha_forge import setup
from tha_forge.focal import check_assoc_extra, check_focal

tables, eng = setup("A", 1, [1])

print("B =", [[str(x) for x in row] for row in tables.ext.B])
print("L =", " + ".join(f"{c}*h{i}" for i, c in tables.L.items()))
for d in (1, 0, -1):
    print(f"degree {d:+d}:", tables.names[d])

g = eng.gen
show = lambda x: x.render(tables)
print()
print("f0 e0       =", show(eng.product(g("f0"), g("e0"))))
print("e0 f0       =", show(eng.product(g("e0"), g("f0"))))
print("[e0, f0]    =", show(eng.commutator(g("e0"), g("f0"))))
print("L e0        =", show(eng.product(eng.L, g("e0"))))
print("f1 e1       =", show(eng.product(g("f1"), g("e1"))))

# with a degree-0 factor anywhere, (xy)z = x(yz) ...
rep = check_focal(eng, cutoff=3, samples=200, seed=1)
print("\nfocal identities:", rep["violations"], "violations over",
      sum(r["exhaustive"] for r in rep["identities"]), "basis triples")

# ... but (x y) z = x (y z) with all three in degrees +-1 does not hold
extra = check_assoc_extra(eng, cutoff=1, samples=0)
for row in extra["identities"]:
    w = row["witness"]
    if w:
        print("config", row["config"], "fails, e.g.", w["args"], "->", w["lhs"], "vs", w["rhs"])
