"""
Tests for utility functions
"""
