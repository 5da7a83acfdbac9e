"""
Command modules for dynstokes CLI
"""

from .main import main

__all__ = ["main"]
