"""Common constants."""

# Largest admissible |f| at a boundary a cumulative integral is anchored to,
# and the largest admissible |R_j| of a localized member at either boundary.
TAIL_TOLERANCE = 1e-10

# Zero-padding factor used for dealiased products. Three times the native
# resolution removes aliasing from the quintic nonlinearities entirely.
PADDING_FACTOR = 3

# Separation gate: the train is flagged when separation_lhs / v_star exceeds
# this value.
SEPARATION_GATE = 0.2

# Earliest time used for decay fits when no window is given.
FIT_WINDOW_START = 2.0

# Number of sampled times used by the residual experiment.
RESIDUAL_SAMPLES = 17

# Picard iteration stopping criteria.
PICARD_TOLERANCE = 1e-8
PICARD_MAX_ITERS = 30

# Number of time nodes that are pushed through the padded nonlinearity at
# once. Bounds the memory used by the Picard iteration.
TIME_CHUNK = 64

# Tolerances of the adaptive integration of the half-kink ODE.
KINK_RTOL = 1e-13
KINK_ATOL = 1e-13

# The half-kink mass to +infinity is integrated up to this many decay
# lengths past the normalization point.
KINK_TAIL_LENGTHS = 80.0

# Fraction of the domain trimmed from each end when checking the half-kink
# equation on the interior.
KINK_INTERIOR_MARGIN = 0.1

# Relative tolerance used when a soliton sits on the algebraic edge c = 2√ω
# of the existence window.
ALGEBRAIC_TOLERANCE = 1e-12

# Float format used for every number written to disk (17 significant
# digits round-trip IEEE doubles).
FLOAT_FORMAT = "%.17g"

# The dense half-kink solution covers a symmetric span rounded up to a
# multiple of this length, so moving kinks reuse one cached solution.
KINK_SPAN_STEP = 50.0
