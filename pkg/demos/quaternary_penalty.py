"""How much does separate encoding cost on a nearly independent pair?

Walks a 4x4 joint with a slight diagonal excess through the whole pipeline:
contraction constants, the implied sum-rate floor, and the relative penalty
against cooperative encoding.
"""

import numpy as np

from sdpibounds import (
    DistortionMatrix,
    JointDistribution,
    RateDistortionTuple,
    full_report,
    independent_coding_penalty,
    mutual_information,
    rho_star,
    sstar,
)

# diagonal mass 0.1, off-diagonal 0.05; marginals are uniform
j = JointDistribution(np.where(np.eye(4, dtype=bool), 0.1, 0.05))
print("I(X;Y) =", round(mutual_information(j), 6), "bits")

res = sstar(j, "x_to_y")
print("s*(X;Y) =", round(res.value, 6), "found by", res.method,
      "after", res.evaluations, "ratio evaluations")
print("rho_m^2 =", round(res.rho_m_squared, 6), "(lower witness)")

rho = rho_star(j)
print("rho*    =", round(rho, 6))

# the sum-rate floor says separate encoders need at most this fraction more
# rate than a single encoder that sees both sources
penalty = independent_coding_penalty(rho)
print(f"worst-case sum-rate penalty: {penalty:.2%}")

# lossless corner: both sources reconstructed exactly
hamming = DistortionMatrix(np.where(np.eye(4, dtype=bool), 0.0, 1.0))
t = RateDistortionTuple(rx=2.0, ry=2.0, dx=0.0, dy=0.0)
for report in full_report(j, hamming, hamming, t):
    mark = "ok " if report.satisfied else "VIOLATED"
    print(f"  {report.name:<15} lhs={report.lhs:.4f} rhs={report.rhs:.4f} [{mark}]")

# shave the sum rate below the floor and watch the sum-rate check flip
t_short = RateDistortionTuple(rx=1.9, ry=1.9, dx=0.0, dy=0.0)
for report in full_report(j, hamming, hamming, t_short):
    if report.name == "sum-rate":
        print("at (1.9, 1.9):", report.name, "satisfied =", report.satisfied,
              f"(needs {report.rhs:.4f})")
