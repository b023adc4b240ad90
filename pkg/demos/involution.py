"""Why strictification needs a power sketch.

The involution sketch has a single object whose product cone projects
along the involution itself.  Between the trivial involution and the swap
on the free-standing isomorphism there are pseudo transformations, but no
transformation with strict tight witnesses.
"""
from esketch.builders import trivial_and_swap
from esketch.enhanced import Weakness as W
from esketch.errors import NotAPowerTheory
from esketch.models import check_transformation, enumerate_transformations
from esketch.power import is_power_theory, strictify

M, N = trivial_and_swap()
print("involution is a power sketch:", is_power_theory(M.sketch))

strict = enumerate_transformations(M, N, W.S, W.P)
pseudo = enumerate_transformations(M, N, W.P, W.P)
print(f"transformations with strict tight witnesses: {len(strict)}")
print(f"transformations with invertible tight witnesses: {len(pseudo)}")

for t in pseudo:
    print("  component picks object", t.components["Star"].ob[0],
          "- witness", t.witnesses["i"].components, "-", check_transformation(t))
    try:
        strictify(t)
    except NotAPowerTheory as exc:
        print("  strictify refuses:", exc)
