"""Workbench for Weak Affine Light Typing."""
__version__ = "0.1.0"
