"""Custom error types for `multalpha`."""


class MultalphaError(Exception):
    """Base exception type for `multalpha` errors."""

    def __init__(self, message, *args):
        self._message = message
        super(MultalphaError, self).__init__(self._message, *args)

    @property
    def message(self) -> str:
        """Error message to be shown to the end user."""
        return self._message


class MultalphaDomainError(MultalphaError):
    """An argument lies outside the domain of a computation."""


class MultalphaContractError(MultalphaError):
    """A structural contract between inputs was violated."""


class MultalphaNumericalError(MultalphaError):
    """A numerical procedure failed to deliver a trustworthy value."""


class MultalphaConfigError(MultalphaError):
    """An exception type for configuration and input file errors."""


class MultalphaInternalError(MultalphaError):
    """An exception type for `multalpha` internal errors."""
