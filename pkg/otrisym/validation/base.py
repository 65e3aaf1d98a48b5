# -*- coding: utf-8 -*-
"""Schema validation of configs and keyword arguments.

A :class:`ValidationContext` turns a schema into a :class:`Validator`. A
schema is a validator (instance or class), the name of a registered validator
such as ``"count"``, or anything one of the context's factories recognizes:
``{key: schema}`` dicts, one-item ``[schema]`` lists and types.
"""
import inspect
import reprlib

from ..errors import OtrisymError

__all__ = ["ValidationError", "SchemaError", "Validator", "ValidationContext", "UNDEFINED"]

UNDEFINED = object()


class SchemaError(OtrisymError):
    """A schema cannot be turned into a validator."""


def _format_path(path, repr_method):
    head, rest = path[0], path[1:]
    if not isinstance(head, str):
        head, rest = "value", path
    return head + "".join("[{}]".format(repr_method(item)) for item in rest)


class ValidationError(OtrisymError, ValueError):
    """A value does not match its schema.

    ``path`` holds the keys and indices leading to the offending value,
    outermost first.
    """

    def __init__(self, val_context, msg, value=UNDEFINED):
        self.val_context = val_context
        self.msg = msg
        self.value = value
        self.path = []
        super(ValidationError, self).__init__(msg)

    def at(self, key):
        """Prefix the path with ``key`` and return the error, for re-raising."""
        self.path.insert(0, key)
        return self

    def to_text(self):
        text = self.msg
        if self.value is not UNDEFINED:
            text = "Invalid value {} ({}): {}".format(self.val_context.repr(self.value),
                                                      self.val_context.type_name(type(self.value)), text)
        if self.path:
            text = "{} (at {})".format(text, _format_path(self.path, self.val_context.repr))
        return text

    def __str__(self):
        return self.to_text()

    @property
    def args(self):
        return (self.to_text(),)


class ValidationContext(object):
    """Registered validators, display names of types and schema factories."""

    def __init__(self, factories=(), repr_method=reprlib.repr):
        self._named = {}
        self._type_names = {}
        self._factories = list(factories)
        self.repr = repr_method

    def name_types(self, name, *types):
        """Show values of ``types`` (and their subclasses) as ``name`` in messages."""
        for cls in types:
            self._type_names[cls] = name

    def type_name(self, cls):
        for base in inspect.getmro(cls):
            if base in self._type_names:
                return self._type_names[base]
        return cls.__name__

    def describe_types(self, types):
        types = (types,) if inspect.isclass(types) else types
        return " or ".join(self.type_name(cls) for cls in types)

    def register(self, name, validator):
        if not isinstance(validator, Validator):
            raise TypeError("Validator instance expected, {} given".format(validator.__class__))
        self._named[name] = validator.bind(self)

    def _lookup(self, schema):
        try:
            validator = self._named.get(schema)
        except TypeError:
            validator = None
        for factory in self._factories:
            if validator is not None:
                break
            validator = factory(schema)
        return validator

    def parse(self, schema):
        """The validator for ``schema``, bound to this context.

        :raises SchemaError: if ``schema`` is not understood
        """
        if isinstance(schema, Validator):
            validator = schema
        elif inspect.isclass(schema) and issubclass(schema, Validator):
            validator = schema()
        else:
            validator = self._lookup(schema)
        if validator is None:
            raise SchemaError("{} is not a valid schema".format(reprlib.repr(schema)))
        return validator.bind(self)


class Validator(object):
    """Base class of validators.

    Subclasses implement :meth:`validate`, which returns the (possibly
    adapted) value, and parse nested schemas in :meth:`parse_nested`.
    """

    name = None

    def __init__(self):
        self.val_context = None

    def bind(self, val_context):
        # shared validators keep the context they were first bound to
        if self.val_context is None:
            self.val_context = val_context
            self.parse_nested()
        return self

    def parse_nested(self):
        pass

    def validate(self, value):
        raise NotImplementedError

    def is_valid(self, value):
        try:
            self.validate(value)
        except ValidationError:
            return False
        return True

    def error(self, value, msg=None):
        raise ValidationError(self.val_context, msg or "must be {}".format(self.humanized_name), value)

    @property
    def humanized_name(self):
        return self.name or self.__class__.__name__
