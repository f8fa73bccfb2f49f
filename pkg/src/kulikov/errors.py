"""Exception hierarchy shared by all modules."""


class KulikovError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(KulikovError, ValueError):
    pass


class MembershipError(KulikovError, ValueError):
    pass


class UnsupportedModulusError(KulikovError, ValueError):
    pass


class SubgroupError(KulikovError, ValueError):
    pass


class ConfigurationError(KulikovError, ValueError):
    pass


class InconsistentCoverError(KulikovError, ValueError):
    pass


class PreconditionError(KulikovError, ValueError):
    pass


class NonTerminationError(KulikovError, RuntimeError):
    pass


class WordParseError(KulikovError, ValueError):
    pass


class RelatorVerificationError(KulikovError, RuntimeError):
    def __init__(self, relator: str):
        super().__init__(f"relator fails as an affine identity: {relator}")
        self.relator = relator


class NotAHomomorphismError(KulikovError, ValueError):
    pass
