"""Reference decompositions checked by ``gcjohnson validate`` and the acceptance tests.

Stable Sp-multiplicities in bracket notation, keyed by weight (and loop order
and degree where relevant).
"""

from .partitions import MultiplicityVector

# gr^W H^1 of the one-loop part
ONE_LOOP_H1 = {
    3: "[3]",
    4: "[21^2] + [2] + [1^2]",
    5: "[5] + [32] + [2^21] + 2[21] + [1^5] + 2[1^3] + 3[1]",
    6: "2[41^2] + [3^2] + [321] + [31^3] + [2^21^2] + 2[4] + 4[31] + 3[2^2] + 3[21^2] + [1^4]"
       " + 2[2] + 4[1^2] + 2[0]",
}

# (W, loop, k) -> gr^W H^k of the given loop order; absent triples vanish for W <= 6
HIGHER_LOOP = {
    (4, 2, 2): "[1^2] + [0]",
    (6, 2, 1): "[1^4] + [1^2] + [0]",
    (6, 2, 2): "[31] + [2]",
    (4, 3, 3): "[0]",
    (5, 3, 2): "[1]",
}

COKERNEL = {
    3: "[3]",
    4: "[21^2] + [2]",
    5: "[5] + [32] + [2^21] + 2[21] + [1^5] + 2[1^3] + 2[1]",
    6: "2[41^2] + [3^2] + [321] + [31^3] + [2^21^2] + 2[4] + 3[31] + 3[2^2] + 3[21^2] + [1^4]"
       " + [2] + 4[1^2] + 2[0] + [1^4] + [1^2] + [0]",
    7: "2[52] + 6[41] + 11[3] + [7] + [43] + 6[32] + 13[21] + 4[1] + 3[421] + 11[31^2]"
       " + [41^3] + 3[32^2] + 6[2^21] + 2[321^2] + 5[21^3] + 3[1^3] + 3[31^4] + [2^31]",
    8: "2[53] + 17[42] + 38[31] + 27[2] + 3[61^2] + 2[6] + 8[51] + 4[521] + 15[41^2]"
       " + 7[4] + 2[51^3] + 5[431] + 6[3^2] + 27[321] + 17[2^2] + 40[21^2] + 17[1^2]"
       " + [42^2] + 7[421^2] + 18[31^3] + [41^4] + 4[3^22] + 10[2^3] + 3[3^21^2] + 13[2^21^2]"
       " + 9[1^4] + 4[32^21] + 4[321^3] + 9[21^4] + [31^5] + 3[2^31^2] + [2^21^4] + [1^6] + [21^6] + [0]",
}

# part of gr^6 of the cokernel surviving from loop order 2
COKERNEL_W6_TWO_LOOP = "[1^4] + [1^2] + [0]"

PRESENTATION = {1: "[1^3] + [1]", 2: "[0] + [1^2] + [2^2]"}


def table(text: str) -> MultiplicityVector:
    return MultiplicityVector.parse(text)
