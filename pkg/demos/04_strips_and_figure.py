"""Strip decompositions of the unit square over an exchange, with SVG output.

The square over the interval decomposes into vertical strips swept out by
the orbit of 0; refining the decomposition level by level produces
identity-plus-one-unit incidence matrices between consecutive levels.
Run from the repository root; writes strips_level*.svg next to this file.
"""

from pathlib import Path

from ietlab import iet_new, permutation, radical, render_strip_level, strip_decomposition

r2 = radical(2)
T = iet_new(permutation(2, 1), [r2 - 1, 2 - r2])

levels = strip_decomposition(T, 3)
for level in levels:
    print(f"level {level.level}: orbit depth K={level.K} (raw {level.raw_K})")
    for strip in level.strips:
        print(f"  strip {strip.index}: height {strip.height}, "
              f"visit word {strip.visit_word}")
    if level.incidence_to_previous is not None:
        print("  incidence to previous level:", level.incidence_to_previous)

here = Path(__file__).parent
for level in levels:
    target = here / f"strips_level{level.level}.svg"
    target.write_text(render_strip_level(T, level))
    print("wrote", target.name)
