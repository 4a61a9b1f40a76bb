class DegreeMismatchError(Exception):
    pass


class FactorizationError(Exception):
    pass


class IntegralityError(Exception):
    pass


class ContourOrderingError(Exception):
    pass


class WorkBoundExceededError(Exception):
    def __init__(self, what: str, estimate: int, bound: int):
        self.what = what
        self.estimate = estimate
        self.bound = bound
        super().__init__(
            f"{what}: estimated cost {estimate} exceeds work bound {bound}"
        )
