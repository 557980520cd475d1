"""
Test suite for qlattice.
"""
