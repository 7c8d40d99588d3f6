"""Survivor sets of beta-transformations with a hole.

Exact word combinatorics, staircase slopes, extremal hole pairs and
automaton-based classification of avoidance sets for the doubling-like
maps x -> beta*x mod 1 with 1 < beta < 2.
"""

from betahole.words import EPSeq, LESS, EQUAL, GREATER

__version__ = "0.1.0"

__all__ = ["EPSeq", "LESS", "EQUAL", "GREATER", "__version__"]
