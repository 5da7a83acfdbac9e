"""
Tests for dynstokes
"""
