"""Independent 30-digit evaluation of the reference-point constants.

Uses tan(2 theta) = Omega / (2 k0 km) directly instead of the sin(2 theta)
shortcut taken by the C++ code. Prints the values frozen in test_model.cpp.
"""

from mpmath import mp, mpf, sqrt, atan, sin, cos

mp.dps = 30

k0 = mpf(1)
omega = mpf("0.3")
gs_n = mpf(1)
ga_n = mpf("0.9987")

km = sqrt(k0**2 - (omega / (2 * k0)) ** 2)
theta = atan(omega / (2 * k0 * km)) / 2
g1 = (gs_n + ga_n) / 4
g2 = (gs_n - ga_n) / 4
es = 2 * g1 * cos(theta) ** 2 * sin(theta) ** 2
em = g2 * cos(2 * theta) ** 2
v0_crit = 2 * (es - em) / sin(2 * theta)
omega_c1 = 2 * (k0**2 - 2 * g2)
omega_c2 = 2 * sqrt((k0**2 + g1) * (k0**2 - 2 * g2) * 2 * g2 / (g1 + 2 * g2))

for name, value in [
    ("km", km),
    ("theta", theta),
    ("g1", g1),
    ("g2", g2),
    ("es", es),
    ("em", em),
    ("v0_crit", v0_crit),
    ("omega_c1", omega_c1),
    ("omega_c2", omega_c2),
]:
    print(f"{name} = {mp.nstr(value, 20)}")
