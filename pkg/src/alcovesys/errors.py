"""Exception types shared across the package."""


class AlcoveSysError(Exception):
    """Base class for all package errors."""


class UnsupportedType(AlcoveSysError):
    pass


class GroupTooLarge(AlcoveSysError):
    pass


class LevelTooSmall(AlcoveSysError):
    pass


class OnWall(AlcoveSysError):
    """Raised by ``locate`` for a point that is not p-regular."""

    def __init__(self, walls):
        self.walls = list(walls)
        super().__init__(f"point lies on {len(self.walls)} wall(s): {self.walls}")


class InvalidAlcove(AlcoveSysError):
    pass


class NotAdjacent(AlcoveSysError):
    pass


class NotSupported(AlcoveSysError):
    pass


class InexactDivision(AlcoveSysError):
    """Divisibility by ``1 - e^{-a}`` failed; indicates a bug upstream."""


class NotApplicable(AlcoveSysError):
    pass


class InvalidParabolic(AlcoveSysError):
    pass


class NoValidParabolic(AlcoveSysError):
    pass


class IllTyped(AlcoveSysError):
    pass


class NotALoop(AlcoveSysError):
    pass


class InvalidPath(AlcoveSysError):
    pass
