# -*- coding: utf-8 -*-
"""Validated keyword configurations for the solvers and the generator."""
import math

from .validation import Object, Optional, Nullable
from .validation.contexts import config_context

__all__ = ["Config", "FrostConfig", "SvcaConfig"]


class Config(object):
    """Base class of validated configurations.

    Subclasses declare ``schema``, a ``{key|Optional(key, default): schema}``
    dict. Keyword arguments are validated against it when the instance is
    created, unknown keys are rejected and the adapted values become
    attributes::

        >>> FrostConfig(max_outer_iterations=0)
        Traceback (most recent call last):
        ...
        ValidationError: Invalid value 0 (integer): must not be less than 1 (at max_outer_iterations)
    """

    schema = {}
    _validator = None

    def __init__(self, **kwargs):
        values = self._get_validator().validate(kwargs)
        for key in self._keys():
            setattr(self, key, values.get(key))

    @classmethod
    def _get_validator(cls):
        if cls.__dict__.get("_validator") is None:
            cls._validator = config_context.parse(Object(cls.schema, strict=True))
        return cls._validator

    @classmethod
    def _keys(cls):
        return cls._get_validator().keys

    @classmethod
    def from_mapping(cls, mapping):
        return cls(**dict(mapping))

    def as_dict(self):
        return {key: getattr(self, key) for key in self._keys()}

    def replace(self, **changes):
        values = self.as_dict()
        values.update(changes)
        return self.__class__(**values)

    def __eq__(self, other):
        return type(self) is type(other) and self.as_dict() == other.as_dict()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        items = ", ".join("{}={!r}".format(k, v) for k, v in sorted(self.as_dict().items()))
        return "{}({})".format(self.__class__.__name__, items)


class FrostConfig(Config):
    """Stopping rules and sweep options of :func:`otrisym.frost.frost_solve`.

    ``default_weight`` is the value given to a row whose best quartic
    minimizer is not strictly positive; ``None`` means ``sqrt(r / n)``.
    """

    schema = {
        Optional("max_outer_iterations", 500): "count",
        Optional("rel_tol", 1e-6): "nonnegative",
        Optional("abs_tol", 1e-12): "nonnegative",
        Optional("seed", None): "seed",
        Optional("node_order", "fixed"): "node_order",
        Optional("default_weight", None): Nullable("nonnegative"),
    }

    def resolve_default_weight(self, n, r):
        if self.default_weight is not None:
            return float(self.default_weight)
        return math.sqrt(float(r) / n)


class SvcaConfig(Config):
    """Options of the SVCA initialization.

    ``p`` is the number of columns averaged per centroid; ``None`` means
    ``max(2, floor(0.1 * n / r))``.
    """

    schema = {
        Optional("p", None): Nullable("count"),
        Optional("seed", None): "seed",
        Optional("eigensolver_tol", 1e-8): "nonnegative",
        Optional("eigensolver_max_iter", 1000): "count",
        Optional("direction_retries", 32): "count",
    }

    def resolve_p(self, n, r):
        if self.p is not None:
            return min(int(self.p), n)
        return min(max(2, int(math.floor(0.1 * n / r))), n)
