"""Constructive separation in Z x D4 at p = 2.

This group satisfies both clauses of the criterion (torsion D4 is a
2-group, the free part is abelian), so every non-conjugate pair can be
separated in some finite 2-quotient.  The procedure picks the quotient,
and the certificate is re-verified by an independent orbit search.
"""

from conjsep import (
    AreConjugate,
    coords_to_element,
    parse_element,
    preset,
    separate_elements,
)

group = preset("zxd4")
spec = group.matrix_part
d4 = group.finite_part

cases = [
    ("0|r", "0|s", "same free coordinate, non-conjugate reflections vs rotations"),
    ("0|r", "0|r3", "r and r^3 are conjugate in D4 (by s)"),
    ("1|e", "3|e", "free coordinates 1 and 3 agree mod 2 but not mod 4"),
]

for a_text, b_text, blurb in cases:
    a = parse_element(group, a_text)
    b = parse_element(group, b_text)
    print(f"pair {a_text!r} vs {b_text!r}: {blurb}")
    try:
        cert = separate_elements(group, a, b, 2)
    except AreConjugate as err:
        mpart, fpart = err.conjugator
        print(f"  -> conjugate; a verifying conjugator has finite part {d4.label(fpart)}")
    else:
        print(
            f"  -> separated at level {cert.level} ({cert.branch} branch); "
            f"quotient order {cert.quotient.order}"
        )
        labels = [cert.quotient.label(img) for img in cert.images]
        print(f"     images {labels[0]} vs {labels[1]}, re-verified non-conjugate")
    print()

# the hypotheses matter: a torsion part that is not a p-group is out of scope
from conjsep import NotApplicable

zxc3 = preset("zxc3")
zero = coords_to_element(zxc3.matrix_part, (0,))
try:
    separate_elements(zxc3, (zero, 0), (zero, 1), 2)
except NotApplicable as err:
    print(f"zxc3 at p=2 -> not applicable: {err}")
