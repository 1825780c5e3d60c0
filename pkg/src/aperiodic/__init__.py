"""Aperiodic words over finite alphabets: construction, verification and counting."""
