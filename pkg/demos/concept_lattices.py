"""
Concept lattices of weighted contexts
=====================================

A context relates objects to attributes with values in a quantale.  Its
stable pairs (extent, intent) form the MacNeille completion, itself a space
over the same quantale.
"""

from qcanext import LawvereChain
from qcanext.macneille import Context, enumerate_concepts, mc_embed_x, to_dot
from qcanext.oracle import oracle_concepts

# three documents scored against three topics, 0 = perfect match
q = LawvereChain(4)
I = Context.discrete(q, ["doc1", "doc2", "doc3"], ["algebra", "logic", "order"],
                     [[0, 2, 4], [3, 0, 1], [4, 1, 0]])
M = enumerate_concepts(I)
print(len(M), "concepts; oracle agrees:",
      [(k.extent, k.intent) for k in M.concepts] == oracle_concepts(q, I.matrix))

for name, k in zip(M.points, M.concepts):
    print(f"  {name}: extent {k.extent}  intent {k.intent}")

# each object sits in the completion as the concept generated by its row
for x in I.X.points:
    k = mc_embed_x(I, I.X.idx(x))
    print(x, "->", M.points[M.find(k)])

# the Hasse diagram of the underlying order, ready for graphviz
print(to_dot(M, "documents").splitlines()[0], "...")
