"""Normal forms in the box category.

Words are read in point order: the first letter touches a vertex first.
"""

import itertools

from cubical import boxcat as bc

for text, dom in [("n1.n1", 3), ("f1:1.n1", 1), ("s2.f1:0.f3:1", 3), ("p1.s1", 2)]:
    f = bc.from_word(bc.parse_word(text), dom)
    print(f"{text:>14} from [1]^{dom}  ->  {f}   ([1]^{f.dom} -> [1]^{f.cod})")

# The standard form is determined by what the map does to vertices.
f = bc.from_word(bc.parse_word("n1.n1"), 3)
for v in itertools.product((0, 1), repeat=3):
    print(v, "->", bc.evaluate(f, v))

print("maps [1]^n -> [1]^i made of negative connections:")
for n in range(1, 7):
    print(n, [len(bc.enumerate_morphisms(n, i, {bc.Kind.NEG})) for i in range(1, n + 1)])
