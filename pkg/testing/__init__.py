"""Testing package to aid unit tests for bug-destiny.

Provides fixture builders for toy corpora, lexicons and feature sets, and a
sample run configuration.
"""
