"""Rate-distortion curves from the iterative solver, checked against the
closed forms that exist for Hamming distortion."""

import numpy as np

from sdpibounds import (
    Distribution,
    binary_hamming_rd,
    rd_at_distortion,
    rd_curve,
)


def show_binary(p: float) -> None:
    source = Distribution(np.array([1.0 - p, p]))
    print(f"Bernoulli({p}) under Hamming distortion")
    print(f"  {'D':>6} {'solver':>10} {'closed':>10} {'gap':>9}")
    for target in (0.02, 0.05, 0.1, 0.2, min(p, 1 - p) * 0.9):
        got = rd_at_distortion(source, target=target).rate
        want = binary_hamming_rd(p, target)
        print(f"  {target:6.3f} {got:10.6f} {want:10.6f} {abs(got - want):9.2e}")


show_binary(0.5)
show_binary(0.3)

# a full curve; the constructor rejects non-monotone or non-convex samples,
# so merely building it is a correctness check
uniform4 = Distribution(np.full(4, 0.25))
curve = rd_curve(uniform4, n_points=17)
print(f"4-symbol uniform curve: {len(curve.points)} points, "
      f"R({curve.points[0].distortion:.4f}) = {curve.points[0].rate:.4f} bits down to "
      f"R({curve.points[-1].distortion:.4f}) = {curve.points[-1].rate:.4f}")

# closed form for the uniform quaternary source: 2 - h(D) - D log2(3)
for pt in curve.points[3:6]:
    d = pt.distortion
    if 0.0 < d < 0.75:
        h = -(d * np.log2(d) + (1 - d) * np.log2(1 - d))
        want = 2.0 - h - d * np.log2(3.0)
        print(f"  D={d:.4f}: solver {pt.rate:.6f} vs closed {want:.6f}")
