"""Core modules for EcoCompose"""
