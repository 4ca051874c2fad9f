import logging
import os

# Set to an empty dir where you want to save the results
OUTPUT_FOLDER = os.path.join(os.getcwd(), 'cauchy-out')

# Step support of the canonical k^-2 law used by the walk and overlap sweeps
X_MAX = 1 << 16

# Overlap table length and the dyadic grid of the local-limit sweep
N_MAX = 1 << 14
N_GRID = [1 << k for k in range(8, 15, 2)]

# Inverse temperatures of the bound report, D must reach (1 + eps) / beta^2 within N_MAX
BOUND_BETAS = [0.9, 1.0, 1.2]

# Polymer sweeps use a small support so that R * a_N covers the step
POLYMER_X_MAX = 64
BETAS = [0.5, 1.0]
POLYMER_N_GRID = [1 << 6, 1 << 8]
REPLICAS = 32
SEED = 20240101

# Logging
root = logging.getLogger()
root.setLevel(logging.INFO)
ch = logging.StreamHandler()
formatter = logging.Formatter('%(levelname)-7s %(name)-22s %(message)s')
ch.setFormatter(formatter)
root.addHandler(ch)

# Caching avoids rebuilding the overlap table between sweeps
CACHE_ENABLED = True
CACHE_PATH = os.path.join(OUTPUT_FOLDER, 'cache')
