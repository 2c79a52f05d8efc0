"""
Dependencies package
"""
