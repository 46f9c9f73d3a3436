"""Python bindings for the SLP checker."""

from ._slp import Model, SlpError


def load(path):
    return Model.from_file(str(path))


def check(path, **kwargs):
    return load(path).check(**kwargs)


__all__ = ["Model", "SlpError", "load", "check"]
