"""Frozen generator matrices of short intersecting codes.

Tokens: integers are prime-subfield elements, ``a`` is the primitive element
(the class of x modulo the Conway polynomial) and ``aN`` is its N-th power.
Any edit changes ``CATALOGUE_SHA256`` and fails the checksum test.
"""

CATALOGUE_TEXT = """\
[q3k3] q=3 k=3 n=6 d=3
1 0 0 1 0 2
0 1 0 2 2 1
0 0 1 1 1 1

[q4k4] q=4 k=4 n=8 d=4
1 0 0 0 0 1 1 1
0 1 0 0 1 1 1 0
0 0 1 0 1 0 1 a
0 0 0 1 0 a a2 1

[q5k4] q=5 k=4 n=8 d=4
1 0 0 0 1 0 3 4
0 1 0 0 4 2 4 0
0 0 1 0 0 4 2 4
0 0 0 1 4 1 3 4

[q3k5] q=3 k=5 n=10 d=5
1 0 0 0 0 1 2 2 2 1
0 1 0 0 0 1 1 1 0 1
0 0 1 0 0 1 1 0 2 2
0 0 0 1 0 2 1 2 2 0
0 0 0 0 1 0 2 1 2 2

[q4k5] q=4 k=5 n=10 d=5
1 0 0 0 0 a 0 1 a2 a
0 1 0 0 0 a a2 a a2 0
0 0 1 0 0 0 a a2 a a2
0 0 0 1 0 a2 a 1 0 a2
0 0 0 0 1 a2 1 1 a 1

[q5k5] q=5 k=5 n=10 d=5
1 0 0 0 0 0 1 1 1 1
0 1 0 0 0 1 0 2 4 3
0 0 1 0 0 4 2 1 4 3
0 0 0 1 0 4 1 2 3 4
0 0 0 0 1 4 3 0 1 4

[q7k5] q=7 k=5 n=10 d=5
1 0 0 0 0 0 1 1 1 1
0 1 0 0 0 1 3 6 6 3
0 0 1 0 0 3 4 2 5 1
0 0 0 1 0 5 5 0 4 2
0 0 0 0 1 6 1 6 6 0

[q3k6] q=3 k=6 n=13 d=6
1 0 0 0 0 0 2 1 1 0 0 2 2
0 1 0 0 0 0 2 0 2 1 0 2 1
0 0 1 0 0 0 1 1 2 2 1 1 0
0 0 0 1 0 0 0 1 1 2 2 1 1
0 0 0 0 1 0 1 2 0 1 2 0 2
0 0 0 0 0 1 2 2 0 0 1 1 2

[q9k6] q=9 k=6 n=12 d=6
1 0 0 0 0 0 a7 2 a6 a3 a6 0
0 1 0 0 0 0 2 a a7 a 1 a
0 0 1 0 0 0 2 a7 2 a a6 a2
0 0 0 1 0 0 a6 0 a2 1 1 a
0 0 0 0 1 0 a3 a2 1 a a6 2
0 0 0 0 0 1 a3 a6 a a a a3

[q7k7] q=7 k=7 n=14 d=7
1 0 0 0 0 0 0 3 3 4 3 2 2 6
0 1 0 0 0 0 0 6 3 3 4 3 2 2
0 0 1 0 0 0 0 2 6 3 3 4 3 2
0 0 0 1 0 0 0 2 2 6 3 3 4 3
0 0 0 0 1 0 0 3 2 2 6 3 3 4
0 0 0 0 0 1 0 4 3 2 2 6 3 3
0 0 0 0 0 0 1 3 4 3 2 2 6 3
"""

CATALOGUE_SHA256 = "6cdab104c0452824d7cc438996161662597cebdb2fdf8ee0039f58d99d974ef7"
