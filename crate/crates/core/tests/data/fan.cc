# three quadrants around a shared ray, plus one detached quadrant
vertices: a b c d e f

simplex: a b
simplex: a c
simplex: a d
simplex: e f
