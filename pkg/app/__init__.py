"""
App module
"""
