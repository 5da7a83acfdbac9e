"""
Tests for dynstokes models
"""
