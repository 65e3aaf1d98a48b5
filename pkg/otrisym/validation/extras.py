# -*- coding: utf-8 -*-
import inspect

from decorator import decorator

__all__ = ["accepts"]


def accepts(validation_context, **schemas):
    """Create a decorator for validating function parameters.

    Example::

        @accepts(config_context, r="count", runs="count", seed="seed")
        def detect(graph, r, runs=10, seed=None):
            ...

    Only the named parameters are checked; the others pass through.

    :param validation_context:
    :param schemas: The schema for validating a given parameter.
    """
    validate = validation_context.parse(schemas).validate

    @decorator
    def validating(func, *args, **kwargs):
        bound = inspect.signature(func).bind(*args, **kwargs)
        bound.apply_defaults()
        arguments = bound.arguments
        validate({name: arguments[name] for name in schemas if name in arguments})
        return func(*args, **kwargs)

    return validating