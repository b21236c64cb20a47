"""Size guards.

All tables in this toolkit are explicit, so hard caps keep accidental
huge inputs from hanging a session.  BENT_SIZE_CAP in the environment
overrides both transform and pair-count guards.
"""
import os

FIELD_CAP = 2 ** 32          # largest p^m a field object will represent
WALSH_CAP = 3 ** 12          # largest p^n a transform will process
PAIR_CAP = 65536             # largest |D| the brute-force verifier accepts


def walsh_cap() -> int:
    return int(os.environ.get("BENT_SIZE_CAP", WALSH_CAP))


def pair_cap() -> int:
    return int(os.environ.get("BENT_SIZE_CAP", PAIR_CAP))
