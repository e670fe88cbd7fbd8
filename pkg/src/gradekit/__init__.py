"""gradekit: exact computations with finite-group graded algebras over finite fields."""

__version__ = "0.1.0"
