"""Exception types shared across the package."""


class SpinWitnessError(Exception):
    """Base class for package errors."""


class InstanceTooLarge(SpinWitnessError):
    """The requested chain exceeds a configured dimension budget."""


class EigensolverError(SpinWitnessError):
    """A symmetric eigensolver failed on one total-Sz sector."""

    def __init__(self, sector, message):
        super().__init__(f"sector 2Sz={sector}: {message}")
        self.sector = sector


class NoCrossing(SpinWitnessError):
    """A root bracket could not be established (e.g. no entanglement gap)."""


class MissingVectors(SpinWitnessError):
    """An operation needs eigenvectors but the spectrum carries none."""
