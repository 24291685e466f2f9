"""Frozen oracle values; regenerate with python3 tests/gen_oracles.py.

Every number is an independent mpmath evaluation (series, closed
form, or adaptive quadrature), recorded here so the test suite never
recomputes its own reference with the code under test.
"""

# E_alpha(x) on the negative axis: (alpha, x) -> value
ML_NEG = {
    (0.25, -0.5): 0.6376705192003933,
    (0.25, -3.0): 0.2190044275604068,
    (0.25, -10.0): 0.07623703523972164,
    (0.25, -30.0): 0.026584961365091656,
    (0.3, -1.0): 0.45659440832969067,
    (0.3, -8.0): 0.08949309581862072,
    (0.4, -1.0): 0.4420633596852235,
    (0.4, -20.0): 0.03301089796175726,
    (0.6, -0.5): 0.6094758219562,
    (0.6, -4.0): 0.11953416195706788,
    (0.6, -25.0): 0.018295717331791216,
    (0.75, -1.0): 0.39310830281575404,
    (0.75, -6.0): 0.05476907913875855,
    (0.75, -30.0): 0.009516692693117128,
    (0.9, -2.0): 0.16352830001693006,
    (0.9, -15.0): 0.007928602432344447,
    (0.75, -0.5): 0.6037903450952468,
    (0.75, -2.8117066259517456): 0.13604903558280393,
    (0.75, -88.91397050194614): 0.003138095993146594,
    (0.6, -31.547867224009657): 0.014456839893115286,
    (0.4, -7.924465962305568): 0.08099153903454664,
    (0.25, -2.8117066259517456): 0.23055017180861367,
}

# E_beta(x) for beta in (1, 2): (beta, x) -> value
ML_WIDE = {
    (1.1, -0.5): 0.6125308121724148,
    (1.1, -8.0): -0.018472525872902174,
    (1.1, -60.0): -0.0016203536171315674,
    (1.25, -1.0): 0.3655344400252503,
    (1.25, -40.0): -0.005379675938258542,
    (1.25, -400.0): -0.0005126907764310306,
    (1.5, -2.0): 0.02943068560282647,
    (1.5, -80.0): -0.003634655086758034,
    (1.75, -5.0): -0.5254797834731216,
    (1.75, -150.0): -0.005941871601944629,
    (1.9, -3.0): -0.19800617221635836,
    (1.9, -300.0): 0.07072167024850404,
}

# Mainardi function M(z, gamma): (gamma, z) -> value
MAINARDI = {
    (0.2, 0.1): 0.7940043527769459,
    (0.2, 0.5): 0.5750388492106434,
    (0.2, 1.0): 0.3776478982578919,
    (0.2, 2.0): 0.15488200075163783,
    (0.2, 4.0): 0.022063108364387924,
    (0.2, 8.0): 0.00027170745716613393,
    (0.25, 0.1): 0.7610082322273136,
    (0.25, 0.5): 0.5679688188407696,
    (0.25, 1.0): 0.38333541657068354,
    (0.25, 2.0): 0.16125108345458586,
    (0.25, 4.0): 0.02198996334047836,
    (0.25, 8.0): 0.00018711315303530202,
    (0.4, 0.1): 0.6489085985290718,
    (0.4, 0.5): 0.5466638813296959,
    (0.4, 1.0): 0.4102335940438268,
    (0.4, 2.0): 0.18558227451010914,
    (0.4, 4.0): 0.017703699590908645,
    (0.4, 8.0): 1.2574911565294458e-05,
    (0.6, 0.1): 0.4670690619621377,
    (0.6, 0.5): 0.5074192668251636,
    (0.6, 1.0): 0.48323543334806185,
    (0.6, 2.0): 0.23387335110670507,
    (0.6, 4.0): 0.002054362698080632,
    (0.6, 8.0): 2.2673977499675397e-15,
    (0.75, 0.1): 0.3052957509442536,
    (0.75, 0.5): 0.4450248412387367,
    (0.75, 1.0): 0.606598543590276,
    (0.75, 2.0): 0.2251400701489675,
    (0.75, 4.0): 4.504628075192352e-12,
    (0.75, 6.0): 1.5582441410762934e-59,
    (0.8, 0.1): 0.2468298310489603,
    (0.8, 0.5): 0.4081222713349697,
    (0.8, 1.0): 0.682033699356931,
    (0.8, 2.0): 0.13288480043900966,
    (0.8, 4.0): 1.892567545946232e-36,
}

# central values c(gamma) per family
C_MAINARDI = {
    0.2: 0.42946850961233374,
    0.25: 0.40802446954913146,
    0.4: 0.33575248622103665,
    0.5: 0.28209479177387814,
    0.6: 0.22541209959720554,
    0.75: 0.13790783141510465,
}
C_LEVY = {
    0.55: 0.41424193939046594,
    0.6: 0.4310921773385054,
    0.75: 0.4920029230003147,
    0.9: 0.5712766422961,
}

# heavy-tailed profile rho(1, z): (gamma, z) -> value
LEVY_RHO = {
    (0.6, 0.0): 0.4310921773385054,
    (0.6, 1.0): 0.2183118103607128,
    (0.6, 3.0): 0.010596017145461357,
    (0.6, 10.0): 0.00027359990844167477,
    (0.75, 0.0): 0.4920029230003147,
    (0.75, 1.0): 0.17648631368944342,
    (0.75, 3.0): 0.014922506189239666,
    (0.75, 10.0): 0.0007914343618183806,
}

# absolute moments at t = 1: (family, gamma, n) -> value
ABS_MOMENTS = {
    ('mainardi', 0.25, 1): 1.1032626513208372,
    ('mainardi', 0.25, 2): 2.256758334191025,
    ('mainardi', 0.4, 2): 2.1473425480616686,
    ('mainardi', 0.6, 1): 1.1191749540701224,
    ('mainardi', 0.75, 3): 2.353626989484453,
    ('levy', 0.75, 1): 1.3724252551186522,
    ('levy', 0.9, 1): 3.2455910779575037,
}

# limit covariance of the rescaled noise: (family, gamma, s, t) -> value
Z_COV = {
    ('mainardi', 0.6, 1.0, 2.0): 2.681027584514869,
    ('mainardi', 0.6, 0.5, 3.0): 1.3366654924845134,
    ('mainardi', 0.75, 1.0, 2.0): 3.2709589293567647,
    ('mainardi', 0.75, 0.5, 3.0): 1.6460699058816841,
    ('levy', 0.6, 1.0, 2.0): 0.7330193625119997,
    ('levy', 0.6, 0.5, 3.0): 0.36545751817398064,
    ('levy', 0.75, 1.0, 2.0): 0.256990804436762,
    ('levy', 0.75, 0.5, 3.0): 0.12932746586178234,
}

# Green function F(t) for the mainardi family: (gamma, t) -> value
GREEN_MAINARDI = {
    (0.25, 1.0): 0.6037903450952468,
    (0.25, 1000.0): 0.003138095993146594,
    (0.4, 1000.0): 0.014456839893115286,
    (0.6, 1000.0): 0.08099153903454664,
    (0.75, 2.0): 0.5958220751023339,
}

# int_0^t F(s)^2 ds at gamma = 1/2 (F = erfcx(sqrt(s)/2) exactly)
XI_VAR_GAUSS = {
    1.0: 0.5245511612021372,
    10.0: 2.062669926998699,
}
