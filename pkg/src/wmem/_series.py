"""Frozen Taylor coefficients for small-time kernel coefficient evaluation.

Generated by tools/gen_series.py (sympy, exact rationals); do not edit by
hand. Each table holds coefficients of u^k, k = 0..24, with u = gamma*t
for the exponential-form model and u = t for the polynomial one. The
closed forms are O(t^3..t^6) residues of O(1) exponentials; below
U_SWITCH the series is exact to machine precision while the closed form
has lost up to half its digits.
"""

U_SWITCH = 0.5


def horner(coeffs: tuple[float, ...], x: float) -> float:
    """Evaluate a coefficient table (ascending powers) at x."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc

SERIES_A = (
    0.0,  # 0/1
    0.0,  # 0/1
    0.0,  # 0/1
    0.0,  # 0/1
    12.0,  # 12/1
    7.466666666666667,  # 112/15
    6.222222222222222,  # 56/9
    3.250793650793651,  # 1024/315
    1.6888888888888889,  # 76/45
    0.728042328042328,  # 688/945
    0.2929100529100529,  # 1384/4725
    0.10548661215327881,  # 16448/155925
    0.0351793062904174,  # 1496/42525
    0.010792828570606348,  # 9376/868725
    0.0030832894324957817,  # 10096/3274425
    0.0008215088850009485,  # 174848/212837625
    0.0002053584275806498,  # 892/4343625
    4.830783791256869e-05,  # 40336/834978375
    1.0734665643542775e-05,  # 5608/522419625
    2.2597744498720614e-06,  # 4194496/1856156927625
    4.519488560018352e-07,  # 44152/97692469875
    8.608385448400207e-08,  # 372832/4331032831125
    1.565154273765629e-08,  # 24368/1556907226875
    2.7219931552680513e-09,  # 2064896/758597058190125
    4.5366493098768255e-10,  # 2917784/6431583754220625
)

SERIES_B = (
    0.0,  # 0/1
    0.0,  # 0/1
    0.0,  # 0/1
    6.666666666666667,  # 20/3
    9.333333333333334,  # 28/3
    8.266666666666667,  # 124/15
    5.688888888888889,  # 256/45
    3.276190476190476,  # 344/105
    1.638095238095238,  # 172/105
    0.7266313932980599,  # 412/567
    0.29008818342151677,  # 4112/14175
    0.10533269199935867,  # 16424/155925
    0.03507669285447063,  # 2344/66825
    0.010786250786250786,  # 7288/675675
    0.003080658318753557,  # 43712/14189175
    0.0008213334774181335,  # 524432/638512875
    0.00020530831112841694,  # 10084/49116375
    4.830452138264152e-05,  # 524332/10854718875
    1.0733928636892292e-05,  # 1048624/97692469875
    2.2597270400875273e-06,  # 1398136/618718975875
    4.5194023604101087e-07,  # 93208/206239658625
    8.60833208673796e-08,  # 16777336/194896477400625
    1.5651460642791297e-08,  # 516224/32982480790875
    2.7219882879835658e-09,  # 153392/56352924322695
    4.5366428201641777e-10,  # 67108936/147926426347074375
)

SERIES_AT = (
    0.0,  # 0/1
    0.0,  # 0/1
    0.0,  # 0/1
    0.0,  # 0/1
    1.3333333333333333,  # 4/3
    -3.2,  # -16/5
    3.3777777777777778,  # 152/45
    -2.4380952380952383,  # -256/105
    1.384126984126984,  # 436/315
    -0.6603174603174603,  # -208/315
    0.2748500881834215,  # 3896/14175
    -0.1022029822029822,  # -5312/51975
    0.03449521671743894,  # 16136/467775
    -0.010687584020917355,  # -21664/2027025
    0.003065247509691954,  # 3728/1216215
    -0.0008191032952937715,  # -58112/70945875
    0.00020500761241501982,  # 68/331695
    -4.8266565540141635e-05,  # -34928/723647925
    1.0729424707361561e-05,  # 1048184/97692469875
    -2.259222772379302e-06,  # -1397824/618718975875
    4.518867922838998e-07,  # 4193864/9280784638125
    -8.607794365372251e-08,  # -621344/7218388051875
    1.5650945684092698e-08,  # 33553456/2143861251406875
    -2.7219412375668697e-09,  # -526336/193367877577875
    4.536601718650742e-10,  # 9586904/21132346621010625
)

SERIES_BT = (
    0.0,  # 0/1
    0.0,  # 0/1
    0.0,  # 0/1
    -1.3333333333333333,  # -4/3
    4.0,  # 4/1
    -5.066666666666666,  # -76/15
    4.266666666666667,  # 64/15
    -2.768253968253968,  # -872/315
    1.4857142857142858,  # 52/35
    -0.6871252204585538,  # -1948/2835
    0.28105820105820106,  # 1328/4725
    -0.10348565015231682,  # -16136/155925
    0.0347346480679814,  # 5416/155925
    -0.010728366283921839,  # -1864/173745
    0.003071637357351643,  # 14528/4729725
    -0.0008200304496600793,  # -272/331695
    0.00020513290354560196,  # 8732/42567525
    -4.8282411183127026e-05,  # -524092/10854718875
    1.0731308168801685e-05,  # 349456/32564156625
    -2.259433961419499e-06,  # -4193864/1856156927625
    4.5190920418204316e-07,  # 155336/343732764375
    -8.608020126250983e-08,  # -16776728/194896477400625
    1.56511621160095e-08,  # 131584/8407299025125
    -2.721961031190445e-09,  # -19173808/7044115540336875
    4.5366190245511357e-10,  # 22369528/49308808782358125
)

SERIES_H = (
    0.0,  # 0/1
    0.0,  # 0/1
    0.0,  # 0/1
    0.0,  # 0/1
    0.0,  # 0/1
    0.0,  # 0/1
    0.8888888888888888,  # 8/9
    0.35555555555555557,  # 16/45
    -0.17777777777777778,  # -8/45
    -0.42328042328042326,  # -80/189
    -0.37756613756613755,  # -1784/4725
    -0.24042328042328043,  # -1136/4725
    -0.12340975896531452,  # -5248/42525
    -0.05404307626529849,  # -5056/93555
    -0.02081098208082335,  # -68144/3274425
    -0.007188954490541792,  # -306016/42567525
    -0.002258660798343338,  # -480728/212837625
    -0.0006521403346800173,  # -5552/8513505
    -0.00017442891987277644,  # -1002376/5746615875
    -4.3499934083327937e-05,  # -607088/13956067125
    -1.016866091389728e-05,  # -4967008/488462349375
    -2.238165439508355e-06,  # -9693568/4331032831125
    -4.65630692912107e-07,  # -90544/194454535275
    -9.186706456434833e-08,  # -4376672/47641361142375
    -1.7239237524853758e-08,  # -403184/23387577288075
)

SERIES_MD = (
    0.0,  # 0/1
    0.0,  # 0/1
    2.0,  # 2/1
    -1.3333333333333333,  # -4/3
    0.6666666666666666,  # 2/3
    -0.26666666666666666,  # -4/15
    0.08888888888888889,  # 4/45
    -0.025396825396825397,  # -8/315
    0.006349206349206349,  # 2/315
    -0.0014109347442680777,  # -4/2835
    0.0002821869488536155,  # 4/14175
    -5.130671797338464e-05,  # -8/155925
    8.551119662230774e-06,  # 4/467775
    -1.3155568711124266e-06,  # -8/6081075
    1.879366958732038e-07,  # 8/42567525
    -2.5058226116427174e-08,  # -16/638512875
    3.132278264553397e-09,  # 2/638512875
    -3.685033252415761e-10,  # -4/10854718875
    4.0944813915730674e-11,  # 4/97692469875
    -4.3099804121821765e-12,  # -8/1856156927625
    4.3099804121821766e-13,  # 4/9280784638125
    -4.104743249697311e-14,  # -8/194896477400625
    3.731584772452101e-15,  # 8/2143861251406875
    -3.244856323871392e-16,  # -16/49308808782358125
    2.7040469365594935e-17,  # 4/147926426347074375
)
