"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A field descriptor (a, b) was rejected; ``code`` names the failed check.

    Codes: ZERO_A, ZERO_B, REDUCIBLE, NOT_REDUCED.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class DegenerateFormError(ValueError):
    """A square root of a perfect square was requested where a quadratic surd
    is needed; the caller must use the factorization path instead."""


class RankError(ValueError):
    """Row reduction found a column without a pivot (rank-deficient input)."""


class SingularMatrixError(ValueError):
    """Matrix inversion of a singular matrix."""


class LatticeMismatchError(RuntimeError):
    """The closed-form reduced matrix and the generic reduction generate
    different lattices.  Indicates a bug or an unhandled case; never ignored."""


class FactorizationLimitError(RuntimeError):
    """Trial division up to ``limit`` left a composite cofactor standing."""

    def __init__(self, n: int, limit: int, cofactor: int):
        super().__init__(
            f"cannot fully factor {n}: cofactor {cofactor} survives trial "
            f"division up to {limit}"
        )
        self.n = n
        self.limit = limit
        self.cofactor = cofactor


class NoIntegralCandidateError(RuntimeError):
    """No sign choice in the generator formulas produced an integer vector.

    The defining theorems guarantee one whenever the side conditions hold, so
    this surfaces an inconsistency rather than being silently swallowed.
    """
