"""cokahler-toolkit - exact rational checks for Kahler and co-Kahler cohomology algebras
"""

__version__ = '0.1.0'
