"""Shared exception types."""


class CertificateError(RuntimeError):
    """A computed certificate violated a bound that holds by construction.

    Raised instead of silently returning bad data: callers treat it as an
    internal failure (the CLI maps it to exit code 3), never as a measured
    counterexample.
    """
