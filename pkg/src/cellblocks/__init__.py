"""cellblocks: exact verification toolkit for cells, Hecke decomposition
matrices, unipotent supports and dimension-polynomial registries of small
finite groups of Lie type."""

__version__ = "0.1.0"
