"""Configuration module for EcoCompose"""
from .settings import Settings, PROJECT_ROOT

__all__ = ['Settings', 'PROJECT_ROOT']
