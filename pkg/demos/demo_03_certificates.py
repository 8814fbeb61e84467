"""
Entropic certificates
=====================

Every entropic claim is backed by an explicit joint distribution.  Here we
build the parity triple, a Reed-Solomon distribution for U_{2,4}, and the
boundary distribution that walks along the segment a + b = ln v of the face
(U_{2,3}, U_{1,2}).
"""

import math

import numpy as np

from polyface import entropy_vector, matus_boundary_dist, uniform, uniform_matroid_dist

# three bits with X3 = X1 xor X2
D = uniform_matroid_dist(2, 3, 2)
print("parity triple:", D.support)
print("h / ln 2 =", np.round(entropy_vector(D).values / math.log(2), 12))

# U_{2,4} over a ternary alphabet: nine codewords of a [4,2] MDS code
D = uniform_matroid_dist(2, 4, 3)
h = entropy_vector(D)
print("U_{2,4} over GF(3), residual:",
      h.max_abs_diff(math.log(3) * uniform(2, 4).rank_vector.as_float()))

# slide a from 0 to ln 2 along the boundary of the face (U_{2,3}, U_{1,2}^3)
for a in np.linspace(0.1, math.log(2), 5):
    cert = matus_boundary_dist(uniform(2, 3), 0b011, 2, a)
    print(f"a={cert.a:.4f} b={cert.b:.4f} residual={cert.residual:.1e}")
