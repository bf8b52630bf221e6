"""List coloring of complete multipartite graphs."""
__version__ = "0.1.0"
