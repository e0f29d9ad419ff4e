"""
OreSolve - Core Module
Contains configuration, error types and logging setup
"""
