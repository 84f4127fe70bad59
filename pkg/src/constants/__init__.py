"""
Constants package for the OLCT toolkit.

"""
