"""Rainbow triangle tilings: exact formulas, constructions and search oracles."""

__version__ = "0.1.0"
