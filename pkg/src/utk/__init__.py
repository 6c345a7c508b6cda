"""utk: a minimal dependent type theory kernel, its proof corpus, and a
finite cubical-sets model calculator."""

__version__ = "0.1.0"
