"""
Utility functions for dynstokes
"""
