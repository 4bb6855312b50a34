"""Frozen expected cycle data for the bundled examples.

The cycles below are the published orbit lists of the corresponding worked
examples, transcribed onto the arrow names of the bundled ``.gtq`` files
(each tuple is one cycle, given up to rotation).
"""

# Thirteen f-cycles of the thirteen-block example ex23.gtq.
EX23_F_ORBITS = (
    ("V.phi", "V.epsilon", "V.psi"),
    ("P.alpha", "P.beta", "P.gamma"),
    ("IV1.nu", "IV1.delta", "IV1.tau"),
    ("IV2.nu", "IV2.delta", "IV2.tau"),
    ("IV3.nu", "IV3.delta", "IV3.tau"),
    ("G1.alpha", "G1.beta", "G1.gamma"),
    ("G2.alpha", "G2.beta", "G2.gamma"),
    ("G3.alpha", "G3.beta", "G3.gamma"),
    ("G4.alpha", "G4.beta", "G4.gamma"),
    ("U1.alpha", "U1.beta", "U1.gamma"),
    ("U2.alpha", "U2.beta", "U2.gamma"),
    ("T.loop", "T.alpha", "T.beta"),
    ("I1.loop",),
)

# Five g-cycles of ex23.gtq, lengths 15, 17, 2, 2, 1.
EX23_G_ORBITS = (
    ("V.phi", "V.epsilon", "V.psi", "P.beta", "G3.alpha", "G4.alpha", "U2.beta",
     "IV3.tau", "IV2.tau", "IV1.nu", "IV1.delta", "U1.beta", "G1.alpha",
     "G2.alpha", "P.alpha"),
    ("P.gamma", "G2.beta", "G1.gamma", "U1.gamma", "I1.loop", "U1.alpha",
     "IV1.tau", "IV2.nu", "IV2.delta", "IV3.nu", "IV3.delta", "U2.gamma",
     "T.beta", "T.alpha", "U2.alpha", "G4.beta", "G3.gamma"),
    ("G3.beta", "G4.gamma"),
    ("G1.beta", "G2.gamma"),
    ("T.loop",),
)

# The eleven-arrow g-cycle of ex33.gtq starting at the border loop.
EX33_BIG_CYCLE = (
    "I1.loop", "B.beta", "F.nu", "F.delta", "C.gamma", "A.gamma",
    "V.phi", "V.epsilon", "V.psi", "A.alpha", "B.alpha",
)
