"""
Matroids as extreme rays
========================

A matroid rank function spans an extreme ray of the Shannon cone exactly when
the matroid is connected after its loops are deleted.  We check that on the
bundled catalog and look at a few circuit families.
"""

from polyface.matroid import catalog, circuits, extend, is_connected_after_loop_deletion, uniform
from polyface.setfn import format_set
from polyface.sweep import run_all

# circuits of U_{2,4} with a parallel copy of element 1 and a loop
M = extend(uniform(2, 4), [1, 2, 3, 4, 1, 0])
print("circuits:", " ".join(format_set(c) for c in circuits(M)))
print("connected after deleting loops:", is_connected_after_loop_deletion(M))

cat = catalog(6)
print(f"catalog: {len(cat)} matroids on at most 6 elements, "
      f"{sum(is_connected_after_loop_deletion(M) for M in cat)} connected")

# the full set of catalog property sweeps on n <= 4 (takes a second)
for res in run_all(4):
    print(res.line())
