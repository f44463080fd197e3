from dnls_trains import Grid, TrainSpec, parse_config, scaled_family
from dnls_trains.serialize import write_record, write_series
from dnls_trains.trains import empirical_t0, residual_decay

# A train is a list of members solving the same equation. The scaled family
# places soliton j at speed M*d_j with width 1/(M*h_j), so the solitons
# separate faster as M grows.
members = scaled_family("dnls1", d=[-1, -2], h=[1, 1], M=8)
spec = TrainSpec("dnls1", members)

# The separation speed v* and the decay rate λ = v*/16 are derived from the
# members when the train is created
print(f"v* = {spec.v_star:g}, lambda = {spec.decay_rate:g}")

# The grid has to be wide enough that every member has decayed at both
# boundaries at every sampled time. The soliton at speed -16 is at x = -96
# when t = 6.
grid = Grid(L=256, N=2048, center=-56)
spec.check_tails(6.0, grid)

# The residual of the summed profile is sampled on [T0, T1] and fitted with
# an exponential
times = [2.0 + 0.5 * index for index in range(9)]
series, fit = residual_decay(spec, grid, times, norm="h2")
print(f"Residual decays at rate {fit.rate:.3f} (rsquared {fit.rsquared:.4f})")
write_series(series, "residual.csv")

# The same experiment can be described with an XML configuration, which is
# embedded in the record of the results
config = parse_config(b"""<experiment>
  <train variant="dnls1" b="0">
    <family d="-1 -2" h="1 1" M="8"/>
  </train>
  <grid L="256" N="2048" center="-56"/>
  <window T0="2" T1="6"/>
  <residual samples="9"/>
</experiment>""")
write_record(
    "residual.xml", "residual", config.to_element(), config.build_spec(),
    {"fit": {
        "norm": "h2",
        "fitted_rate": fit.rate,
        "rsquared": fit.rsquared,
        "window": fit.window,
        "rate_exceeds_lambda": fit.rate >= spec.decay_rate,
        "empirical_T0": empirical_t0(series["t"], series["s"],
                                     spec.decay_rate),
    }}
)
