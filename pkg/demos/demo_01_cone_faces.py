"""
Faces of the Shannon cone
=========================

A point of the cone lies in the relative interior of exactly one face, and the
dimension of that face is the nullity of the elemental inequalities that are
tight at the point.  Sums of two extreme rays tell us whether the pair spans a
2-dimensional face.
"""

from polyface import enumerate_facets, is_extreme_ray, minimal_face_dim, tight_set, uniform
from polyface.setfn import mask_of

# number of elemental inequalities for small ground sets
for n in range(2, 7):
    print(f"n={n}: {len(enumerate_facets(n))} elemental inequalities")

# the rank function of U_{2,3} is tight on six of the nine facets
u23 = uniform(2, 3).rank_vector
print("tight at U_{2,3}:", ", ".join(str(f) for f in tight_set(u23)))
print("extreme ray:", is_extreme_ray(u23))

# adding a rank-1 matroid on one element gives a 2-face, on all three does not
for alpha in ([1], [1, 2], [1, 2, 3]):
    u = uniform(1, mask_of(alpha), 3).rank_vector
    print(f"U_{{2,3}} + U_1,{len(alpha)} on {alpha}: face dim {minimal_face_dim(u23 + u)}")
