"""
csplume test suite.
"""
