"""
Automata as spaces over languages
=================================

States of an automaton form a space whose distances are the sets of words
leading from one state to another.  Accepted and reaching languages are
weighted colimits and limits of the representables.
"""

from qcanext import LanguageTrunc, generated_space, self_enrichment
from qcanext.limits import observability, reachability, tensor

q = LanguageTrunc("ab", 3)
states = ["p", "q", "r"]
none, a, b = q.lang(), q.lang("a"), q.lang("b")
A = generated_space(q, states, [[none, a, none], [a, none, b], [none, none, a]])
for s in states:
    print(s, "->", {t: q.format(A(s, t)) for t in states})

final = (q.bottom, q.bottom, q.unit)
initial = (q.unit, q.bottom, q.bottom)
for s, acc, reach in zip(states, observability(A, final), reachability(A, initial)):
    print(f"{s}: accepts {q.format(acc):24} reached by {q.format(reach)}")

# in the quantale acting on itself, tensoring a language with a word removes
# that word as a prefix; words too long to see are kept vacuously
q2 = LanguageTrunc("ab", 2)
S = self_enrichment(q2, 2)
print("{ab} ⋆ a =", S.points[tensor(S, q2.format(q2.lang("ab")), q2.lang("a"))[0]])
