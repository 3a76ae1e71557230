"""Exception and warning types shared across the package."""


class TruncationError(ValueError):
    """A state does not fit inside the Fock cutoff of a mode.

    Attributes
    ----------
    mode : str
        Label of the offending mode (``"c"`` or ``"e"``), empty if unknown.
    measured : float
        The measured tail weight or leakage that exceeded the tolerance.
    """

    def __init__(self, message, mode="", measured=float("nan")):
        super().__init__(message)
        self.mode = mode
        self.measured = measured


class ConfigError(ValueError):
    """Invalid run configuration; the message names the offending field."""


class LeakageWarning(UserWarning):
    """Evolved population reached the top Fock levels of a mode."""
