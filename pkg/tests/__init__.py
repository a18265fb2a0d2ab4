"""
Test suite for smoothdist.
"""
