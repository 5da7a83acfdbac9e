"""
Command-line interface for dynstokes
"""
