"""EcoCompose - compositional ecological model repository"""

__version__ = "1.0.0"
