"""
Tests for dynstokes services
"""
