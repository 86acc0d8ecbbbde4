"""
Global constants for simpleoa
Defaults for the text formats, verification limits, search budgets and exit codes
"""

# Text formats
COMMENT_PREFIX = "#"
MAX_TEXT_SYMBOLS = 10

# Strength verification: binary arrays whose column-subset count exceeds this
# limit are checked through the distance distribution instead
SUBSET_VERIFY_LIMIT = 200_000

# Walsh transform works on the full truth table
WALSH_MAX_VARIABLES = 24

# Exhaustive search
DEFAULT_NODE_BUDGET = 10**9
PROGRESS_INTERVAL = 1_000_000
DEFAULT_WORKERS = 1
# rows x column-subset counters precomputed by the search; larger problems are refused
SEARCH_MAX_CELLS = 5_000_000

# Table command
TABLE_SEARCH_ROW_LIMIT = 32
TABLE_SEARCH_BUDGET = 5_000_000

# CLI exit codes
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

# Published minimal row counts of simple binary OAs, keyed by (k, t).
# Only used to annotate `oa table`; never treated as a certificate.
REFERENCE_MINIMAL_ROWS = {
    (1, 1): 2,
    (2, 1): 2, (2, 2): 4,
    (3, 1): 2, (3, 2): 4, (3, 3): 8,
    (4, 1): 2, (4, 2): 8, (4, 3): 8, (4, 4): 16,
    (5, 1): 2, (5, 2): 8, (5, 3): 16, (5, 4): 16, (5, 5): 32,
    (6, 1): 2, (6, 2): 8, (6, 3): 16, (6, 4): 32, (6, 5): 32, (6, 6): 64,
    (7, 1): 2, (7, 2): 8, (7, 3): 16, (7, 4): 64, (7, 5): 64, (7, 6): 64,
    (7, 7): 128,
    (8, 1): 2, (8, 2): 12, (8, 3): 16, (8, 4): 64, (8, 5): 128, (8, 6): 128,
    (8, 7): 128, (8, 8): 256,
    (9, 1): 2, (9, 2): 12, (9, 3): 24, (9, 4): 128, (9, 5): 128, (9, 6): 256,
    (9, 7): 256, (9, 8): 256, (9, 9): 512,
    (10, 1): 2, (10, 2): 12, (10, 3): 24, (10, 4): 128, (10, 5): 256,
    (10, 6): 512, (10, 7): 512, (10, 8): 512, (10, 9): 512, (10, 10): 1024,
    (11, 1): 2, (11, 2): 12, (11, 3): 24, (11, 4): 128, (11, 5): 256,
    (11, 6): 512, (11, 7): 1024, (11, 8): 1024, (11, 9): 1024, (11, 10): 1024,
    (11, 11): 2048,
    (12, 1): 2, (12, 2): 16, (12, 3): 24, (12, 4): 128, (12, 5): 256,
    (12, 6): 768, (12, 7): 1024, (12, 8): 2048, (12, 9): 2048, (12, 10): 2048,
    (12, 11): 2048, (12, 12): 4096,
    (13, 1): 2, (13, 2): 16, (13, 3): 32, (13, 4): 128, (13, 5): 256,
    (13, 6): 1024, (13, 7): 1536, (13, 8): 4096, (13, 9): 4096,
    (13, 10): 4096, (13, 11): 4096, (13, 12): 4096, (13, 13): 8192,
}
