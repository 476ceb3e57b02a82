"""Exception hierarchy for su3cohom."""


class Su3CohomError(ValueError):
    """Base class for domain errors raised by this package."""


class RankUnstable(Su3CohomError):
    """A singular value sits too close to the rank threshold to decide the rank."""

    def __init__(self, singular_value: float, threshold: float):
        self.singular_value = singular_value
        self.threshold = threshold
        super().__init__(
            f"singular value {singular_value:.3e} lies within a factor 10 "
            f"of the rank threshold {threshold:.1e}"
        )


class ZeroPair(Su3CohomError):
    """(k, l) = (0, 0) does not define a circle subgroup."""


class ZeroVector(Su3CohomError):
    """The zero Cartan vector has no orthogonal line."""


class NotOdd(Su3CohomError):
    """A U(2) slice weight must be odd."""


class NotRootType(Su3CohomError):
    """tau-absorption is only meaningful for root-type principal stabilizers."""


class IncompatibleRegime(Su3CohomError):
    """The two tubes cannot occur together in a simply connected manifold."""


class FrameNotOrthonormal(Su3CohomError):
    """A 3-frame whose Gram matrix is not the identity."""


class DescriptorParseError(Su3CohomError):
    """A tube or slice descriptor string could not be parsed."""

    def __init__(self, text: str, token: str):
        self.text = text
        self.token = token
        super().__init__(f"cannot parse descriptor {text!r}: unexpected token {token!r}")
