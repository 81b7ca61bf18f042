"""
Tests for blmix.
"""
