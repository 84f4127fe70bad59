"""
Numerical thresholds. Tolerances of the identity checks live in the run
config (src/defaults/config.py); these are fixed by the definitions.
"""

# |ad - bc - 1| allowed for a parameter set
UNIMODULARITY_TOLERANCE = 1e-12
# main branch iff |b| > B_ZERO_THRESHOLD
B_ZERO_THRESHOLD = 1e-12

# max(|f_0|, |f_{n-1}|) > EDGE_LEAKAGE_RATIO * max|f| raises EdgeLeakage
EDGE_LEAKAGE_RATIO = 1e-6
# |F(u)| > SUPPORT_THRESHOLD * peak counts as spectral support
SUPPORT_THRESHOLD = 1e-6
# identity checks only score points where the reference exceeds this share of its peak
REFERENCE_FLOOR = 1e-8

# relative tolerance when matching a caller-forced grid to the fast-path grid law
GRID_LAW_RTOL = 1e-12

# olct_direct evaluates the kernel matrix in row blocks of this many u points
DIRECT_BLOCK_ROWS = 256
# convolve_time / correlate evaluate this many output samples per block
QUADRATURE_BLOCK_ROWS = 128

PLAN_CACHE_SIZE = 64

# share of the sequence (from the end) used by the limit fits
EXTRAPOLATION_TAIL = 0.5
MIN_SEQUENCE_LENGTH = 4

# PW sequences stay below gamma * (1 + PW_BOUND_SLACK)
PW_BOUND_SLACK = 0.02

# share of the u-grid kept as "interior" by the eigen-relation checks
INTERIOR_FRACTION = 0.8

DEFAULT_ROLLOFF_BINS = 2
