"""Which finite groups sit inside SO(q) over Q, with explicit matrices."""

from soq import TernaryForm, embeds, synthesize_generators, verify_subgroup
from soq.embedding import A4, A5, S4, Cyclic, Dihedral
from soq.quadform import isometric, represents

# %% two disc-1 forms that are not isometric
q0 = TernaryForm((1, 1, 1))
h = TernaryForm((-1, -1, 1))
print("q0 ~ h ?", isometric(q0, h))

# %% the decision table
groups = [Cyclic(n) for n in (2, 3, 4, 6)] + [Dihedral(n) for n in (2, 3, 4, 6)] + [A4, S4, A5]
for q in (q0, h):
    print(f"\nSO({q}):")
    for G in groups:
        d = embeds(G, q)
        print(f"  {G.label:<4} {'yes' if d else 'no '}  {'; '.join(d.reasons)}")

# %% C4 needs q to represent 1, C3 needs q to represent 3
for d in [(1, 2, 2), (-1, -3, 3), (2, 5, 10), (3, 7, 21)]:
    q = TernaryForm(d)
    print(q, "represents 1:", represents(q, 1), " C4:", bool(embeds(Cyclic(4), q)),
          "| represents 3:", represents(q, 3), " C3:", bool(embeds(Cyclic(3), q)))

# %% generators for S4 on q0 and D8 on h, re-verified by closure
for G, q in [(S4, q0), (Dihedral(4), h), (Dihedral(3), TernaryForm((2, 3, 6)))]:
    gs = synthesize_generators(G, q)
    rep = verify_subgroup(gs.gens, q)
    print(f"\n{G.label} in SO({q}): closure order {rep.order}, type {rep.iso_type.label}")
    for g in gs.gens:
        for row in g.M:
            print("   ", [str(x) for x in row])
        print()
