"""File formats and command-line interface"""
