"""Classify the built-in groups: which are conjugacy separable in finite p-groups?

The criterion has two clauses: the torsion subgroup must be a p-group, and
the quotient by torsion must be abelian.  Both clauses are decided exactly,
and every failure names the clause that broke.
"""

from conjsep import classify, preset, preset_names

print(f"{'group':12s} {'p':>2s}  {'torsion':>8s}  {'abelian':>7s}  verdict")
print("-" * 64)
for name in preset_names():
    for p in (2, 3):
        group = preset(name)
        v = classify(group, p)
        torsion = f"{v.torsion_order}" + ("" if v.torsion_is_p_group else "!")
        abelian = "yes" if v.quotient_abelian else "NO"
        verdict = "separable" if v.separable else "not separable"
        print(f"{name:12s} {p:2d}  {torsion:>8s}  {abelian:>7s}  {verdict}")

print()
print("A '!' marks a torsion order that is not a power of p.")
print()

# the two failure modes, spelled out
heis = classify(preset("heisenberg"), 2)
print("heisenberg at p=2:", heis.reason)
zxc3 = classify(preset("zxc3"), 2)
print("zxc3 at p=2:      ", zxc3.reason)
