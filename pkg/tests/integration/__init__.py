"""
Integration tests for dynstokes
"""
