"""
Face types and the region diagram
=================================

Faces spanned by a connected matroid M and a rank-1 matroid fall into a few
types.  On a Matus-type face the entropic points lie on or above a staircase;
on a Chen-Yeung-type face only on vertical rays a = ln v.  For U_{2,4} the
values v = 2 and v = 6 are missing from the characteristic set, which leaves
Unknown pieces in the diagram.
"""

import math

from polyface import classify_face, region_boundary_data, region_membership, uniform
from polyface.classify import DEFAULT_CHI
from polyface.setfn import mask_of

faces = [(uniform(2, 3), [1, 2]), (uniform(2, 3), [1]),
         (uniform(2, 4), [1, 2, 3]), (uniform(2, 4), [1, 2])]
for M, alpha in faces:
    report = classify_face(M, mask_of(alpha))
    print(f"(U_{{{M.rank},{M.n}}}, U_1,{len(alpha)} on {alpha}): {report.face_type.value}")

# plot data for the Matus face of U_{2,4}, up to a = ln 7
M = uniform(2, 4)
chi = DEFAULT_CHI.for_matroid(M)
report = classify_face(M, mask_of([1, 2, 3]))
for piece in region_boundary_data(report.face_type, chi, math.log(7)):
    print(f"{piece.kind:>9}  {piece.label:<28} a in [{piece.x1:.3f}, {piece.x2:.3f}]")

# a few points on the same face
for a, b in [(0.5, 0.4), (0.5, 0.7), (1.2, 0.2), (1.5, 0.1)]:
    print(f"({a}, {b}):", region_membership(report.face_type, chi, a, b).value)
