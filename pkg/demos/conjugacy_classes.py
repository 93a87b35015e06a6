"""Conjugacy invariants for involutions, Klein four-groups and dihedral groups."""

from soq import TernaryForm
from soq.conjugacy import (
    conjugacy_summary,
    dihedral_class,
    dihedral_classes,
    dihedral_representative,
    dihedral_same_class,
    involution_class,
    klein_classes,
    representative_involution,
)
from soq.embedding import Cyclic, Dihedral
from soq.field import GF

q0 = TernaryForm((1, 1, 1))

# %% involutions over Q are classified by a represented square class
for d in (1, 2, 3, 5, 6, 10):
    gs = representative_involution(d, q0)
    back = involution_class(gs.gens[0], q0)
    print(f"d = {d:>2}: axis {[str(x) for x in back.axis]}, class {back.d}")

# %% D8 over Q: classes are cosets of <2> inside D(<1,1>)
print("\n5 ~ 10 for D8:", dihedral_same_class(5, 10, 4, q0))
print("1 ~ 5  for D8:", dihedral_same_class(1, 5, 4, q0))
desc, gs = dihedral_representative(13, 4, q0)
print("representative for 13 has class", [str(c) for c in dihedral_class(gs, 4, q0).coset])

# %% over F_p everything is a finite count
for p in (5, 7, 11, 13):
    k = GF(p)
    q = TernaryForm((1, 1, 1), k)
    line = [f"C2: {conjugacy_summary(Cyclic(2), q).count}", f"V4: {len(klein_classes(q))}"]
    for n in range(3, p + 2):
        if n % p and conjugacy_summary(Dihedral(n), q).count:
            line.append(f"D{2 * n}: {len(dihedral_classes(n, k))}")
    print(f"F_{p}:", ", ".join(line))
