vertices: a b c
simplex: a b
simplex: b c d
