"""Two smaller uses of the contraction constant.

CEO setting: agents with weak views (small s*) contribute little useful
rate, so the weighted sum-rate floor discounts them.  Common randomness:
each communicated bit can seed at most 1/(1 - s*) bits of agreement.
"""

from sdpibounds import (
    CeoQuery,
    CommonRandomnessQuery,
    ceo_bound_check,
    cr_ratio_bound,
)

# three agents, increasingly noisy observations of the same source
sstars = (0.9, 0.5, 0.1)
print("CEO floor: sum of s_i * r_i must reach the target description rate")
for rates in ((1.0, 1.0, 1.0), (0.5, 1.0, 3.0), (0.2, 0.2, 0.2)):
    q = CeoQuery(rates=rates, sstars=sstars, target_rate=1.0)
    report = ceo_bound_check(q)
    print(f"  rates {rates}: weighted sum {report.lhs:.3f} "
          f"{'meets' if report.satisfied else 'misses'} target {report.rhs}")

print()
print("common randomness per communicated bit, cap = 1/(1 - s*)")
for s in (0.0, 0.25, 0.5, 0.9, 0.99):
    q = CommonRandomnessQuery(rate=1.0, common_randomness=2.0, sstar=s)
    report = cr_ratio_bound(q)
    verdict = "allowed" if report.satisfied else "impossible"
    print(f"  s* = {s:4}: cap {report.lhs:8.3f}, ratio 2.0 is {verdict}")

# at s* = 1 the cap is vacuous: perfectly correlated sources share
# unbounded randomness per bit
report = cr_ratio_bound(CommonRandomnessQuery(rate=1.0, common_randomness=50.0, sstar=1.0))
print("  s* = 1.0: " + report.note)
