"""Scan pairs of Heisenberg elements through the congruence tower mod 2^k.

Three behaviours show up:
  - a genuinely conjugate pair is conjugate at every level,
  - a pair that dies in the abelianization separates at a finite level
    predicted by 2-adic valuations,
  - the witness pair never separates, at any depth.
"""

from conjsep import (
    UTMatrix,
    coords_to_element,
    heisenberg_spec,
    make_witness,
    residual_depth,
    scan_tower,
)

spec = heisenberg_spec()
ident = UTMatrix.identity(3)
c = spec.center_gens[0]
w = make_witness(spec, 2)

pairs = [
    ("a vs a*c (conjugate by b)", coords_to_element(spec, (1, 0, 0)),
     coords_to_element(spec, (1, 0, 1)), None),
    ("identity vs c^8 (separates at depth 4)", ident, c**8, None),
    ("a vs b (separates in the abelianization)", coords_to_element(spec, (1, 0, 0)),
     coords_to_element(spec, (0, 1, 0)), None),
    ("witness pair u vs u*c", w.u, w.v, w),
]

for label, x, y, witness in pairs:
    scan = scan_tower(spec, x, y, 2, 6, witness=witness)
    print(label)
    for lv in scan.levels:
        state = {True: "conjugate", False: "SEPARATED", None: "undecided"}[lv.conjugate]
        print(f"  2^{lv.level}: {state:10s} [{lv.method}]")
    print(f"  => {scan.summary}")
    print()

print(f"residual depth of c^8 at p=2: {residual_depth(c**8, 2)}")
print("(one plus the 2-adic valuation of the entry 8: the first level where it survives)")
