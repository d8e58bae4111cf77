"""Configuration and runtime constants."""

import os

from dotenv import load_dotenv

load_dotenv()

# Exact arithmetic bounds
MAX_FIELD_SIZE = int(os.getenv("NOMIDDLE_MAX_FIELD_SIZE", "256"))
MAX_GL_CANDIDATES = int(os.getenv("NOMIDDLE_MAX_GL_CANDIDATES", "6561"))

# Ring and module bounds
MAX_RING_SIZE = int(os.getenv("NOMIDDLE_MAX_RING_SIZE", "512"))
MAX_MODULE_SIZE = int(os.getenv("NOMIDDLE_MAX_MODULE_SIZE", "512"))
MAX_HOM_CANDIDATES = int(os.getenv("NOMIDDLE_MAX_HOM_CANDIDATES", "1000000"))
MAX_SUBMODULES = int(os.getenv("NOMIDDLE_MAX_SUBMODULES", "20000"))
WITNESS_MODULE_BOUND = int(os.getenv("NOMIDDLE_WITNESS_MODULE_BOUND", "512"))

# Verification
FULL_AXIOM_CHECK_SIZE = int(os.getenv("NOMIDDLE_FULL_AXIOM_CHECK_SIZE", "64"))
SAMPLED_AXIOM_TRIPLES = int(os.getenv("NOMIDDLE_SAMPLED_AXIOM_TRIPLES", "100000"))
RADICAL_CROSS_CHECK_SIZE = int(os.getenv("NOMIDDLE_RADICAL_CROSS_CHECK_SIZE", "128"))

# Run defaults
SEED = int(os.getenv("NOMIDDLE_SEED", "0"))
THREADS = int(os.getenv("NOMIDDLE_THREADS", "1"))

# Report
REPORT_SCHEMA = "injdom-report/1"
MAX_SPEC_BYTES = 64 * 1024
