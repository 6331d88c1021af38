"""Butcher tableaus of the embedded explicit Runge-Kutta pairs.

``b_error`` rows are weight differences whose product with the stage
derivatives (including the derivative at the new point, last column) gives
the local error estimate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Tableau:
    name: str
    order: int
    error_order: int
    c: np.ndarray
    a: np.ndarray
    b: np.ndarray
    b_error: tuple[np.ndarray, ...]


DOPRI5 = Tableau(
    name="dopri5",
    order=5,
    error_order=4,
    c=np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0]),
    a=np.array(
        [
            [0, 0, 0, 0, 0, 0],
            [1 / 5, 0, 0, 0, 0, 0],
            [3 / 40, 9 / 40, 0, 0, 0, 0],
            [44 / 45, -56 / 15, 32 / 9, 0, 0, 0],
            [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729, 0, 0],
            [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656, 0],
        ]
    ),
    b=np.array([35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
    b_error=(
        np.array([71 / 57600, 0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]),
    ),
)

# Dormand-Prince 8(5,3); coefficients from Hairer, Norsett & Wanner, "Solving
# Ordinary Differential Equations I", 2nd ed.  The 5th and 3rd order error
# estimates are blended as in the reference DOP853 code.
_A853 = np.zeros((12, 12))
_A853[1, 0] = 0.05260015195876773
_A853[2, 0] = 0.0197250569845379
_A853[2, 1] = 0.0591751709536137
_A853[3, 0] = 0.02958758547680685
_A853[3, 2] = 0.08876275643042054
_A853[4, 0] = 0.2413651341592667
_A853[4, 2] = -0.8845494793282861
_A853[4, 3] = 0.924834003261792
_A853[5, 0] = 0.037037037037037035
_A853[5, 3] = 0.17082860872947386
_A853[5, 4] = 0.12546768756682242
_A853[6, 0] = 0.037109375
_A853[6, 3] = 0.17025221101954405
_A853[6, 4] = 0.06021653898045596
_A853[6, 5] = -0.017578125
_A853[7, 0] = 0.03709200011850479
_A853[7, 3] = 0.17038392571223998
_A853[7, 4] = 0.10726203044637328
_A853[7, 5] = -0.015319437748624402
_A853[7, 6] = 0.008273789163814023
_A853[8, 0] = 0.6241109587160757
_A853[8, 3] = -3.3608926294469414
_A853[8, 4] = -0.868219346841726
_A853[8, 5] = 27.59209969944671
_A853[8, 6] = 20.154067550477894
_A853[8, 7] = -43.48988418106996
_A853[9, 0] = 0.47766253643826434
_A853[9, 3] = -2.4881146199716677
_A853[9, 4] = -0.590290826836843
_A853[9, 5] = 21.230051448181193
_A853[9, 6] = 15.279233632882423
_A853[9, 7] = -33.28821096898486
_A853[9, 8] = -0.020331201708508627
_A853[10, 0] = -0.9371424300859873
_A853[10, 3] = 5.186372428844064
_A853[10, 4] = 1.0914373489967295
_A853[10, 5] = -8.149787010746927
_A853[10, 6] = -18.52006565999696
_A853[10, 7] = 22.739487099350505
_A853[10, 8] = 2.4936055526796523
_A853[10, 9] = -3.0467644718982196
_A853[11, 0] = 2.273310147516538
_A853[11, 3] = -10.53449546673725
_A853[11, 4] = -2.0008720582248625
_A853[11, 5] = -17.9589318631188
_A853[11, 6] = 27.94888452941996
_A853[11, 7] = -2.8589982771350235
_A853[11, 8] = -8.87285693353063
_A853[11, 9] = 12.360567175794303
_A853[11, 10] = 0.6433927460157636

DOP853 = Tableau(
    name="dop853",
    order=8,
    error_order=7,
    c=np.array([0.0, 0.05260015195876773, 0.0789002279381516, 0.1183503419072274, 0.2816496580927726, 0.3333333333333333, 0.25, 0.3076923076923077, 0.6512820512820513, 0.6, 0.8571428571428571, 1.0]),
    a=_A853,
    b=np.array([0.054293734116568765, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003, -5.801203960010585, 0.3111643669578199, -0.1521609496625161, 0.20136540080403034, 0.04471061572777259]),
    b_error=(np.array([0.01312004499419488, 0.0, 0.0, 0.0, 0.0, -1.2251564463762044, -0.4957589496572502, 1.6643771824549864, -0.35032884874997366, 0.3341791187130175, 0.08192320648511571, -0.022355307863886294, 0.0]), np.array([-0.18980075407240762, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003, -5.801203960010585, -0.4226823213237919, -0.1521609496625161, 0.20136540080403034, 0.02265179219836082, 0.0])),
)

TABLEAUS = {t.name: t for t in (DOPRI5, DOP853)}
