# -*- coding: utf-8 -*-
import collections.abc
import inspect
import numbers

from .base import Validator, ValidationError, ValidationContext, UNDEFINED

__all__ = ["Type", "Integer", "Number", "Range", "Enum", "Nullable", "Sequence", "Optional", "Object",
           "make_default_validation_context"]


class Type(Validator):
    """Instances of ``accept_types`` that are not instances of ``reject_types``."""

    accept_types = ()
    reject_types = ()

    def __init__(self, accept_types=None, reject_types=None):
        super(Type, self).__init__()
        if accept_types is not None:
            self.accept_types = accept_types
        if reject_types is not None:
            self.reject_types = reject_types

    def validate(self, value):
        if isinstance(value, self.reject_types) or not isinstance(value, self.accept_types):
            self.error(value)
        return value

    @property
    def humanized_name(self):
        return self.name or self.val_context.describe_types(self.accept_types)


class Integer(Type):
    name = "integer"
    accept_types = numbers.Integral
    reject_types = bool


class Number(Type):
    name = "number"
    accept_types = numbers.Real
    reject_types = bool


class Range(Validator):
    """Values of ``schema`` within ``[min_value, max_value]``; either bound may be ``None``."""

    def __init__(self, schema=None, min_value=None, max_value=None):
        super(Range, self).__init__()
        self._schema = schema
        self._inner = None
        self.min_value = min_value
        self.max_value = max_value

    def parse_nested(self):
        if self._schema is not None:
            self._inner = self.val_context.parse(self._schema)

    def validate(self, value):
        if self._inner is not None:
            value = self._inner.validate(value)
        if self.min_value is not None and value < self.min_value:
            self.error(value, "must not be less than {}".format(self.min_value))
        if self.max_value is not None and value > self.max_value:
            self.error(value, "must not be larger than {}".format(self.max_value))
        return value

    @property
    def humanized_name(self):
        bounds = []
        if self.min_value is not None:
            bounds.append(">= {}".format(self.min_value))
        if self.max_value is not None:
            bounds.append("<= {}".format(self.max_value))
        kind = self._inner.humanized_name if self._inner is not None else "value"
        return " ".join([kind] + bounds)


class Enum(Validator):
    """One of a fixed set of values; subclasses may list them in ``values``."""

    values = ()

    def __init__(self, *values):
        super(Enum, self).__init__()
        self.values = tuple(values or self.values)

    def validate(self, value):
        if not any(value == allowed and type(value) is type(allowed) for allowed in self.values):
            self.error(value)
        return value

    @property
    def humanized_name(self):
        return "one of {{{}}}".format(", ".join(self.val_context.repr(v) for v in self.values))


class Nullable(Validator):
    """``None`` (returned as ``default``) or a value of ``schema``."""

    def __init__(self, schema, default=None):
        super(Nullable, self).__init__()
        self._schema = schema
        self._inner = None
        self.default = default

    def parse_nested(self):
        self._inner = self.val_context.parse(self._schema)

    def validate(self, value):
        if value is None:
            return self.default
        return self._inner.validate(value)

    @property
    def humanized_name(self):
        return "{} or {}".format(self._inner.humanized_name, self.val_context.type_name(type(None)))


class Sequence(Type):
    """Lists and tuples whose items all match ``item_schema``; the container type is kept."""

    name = "array"
    accept_types = collections.abc.Sequence
    reject_types = (str, bytes)

    def __init__(self, item_schema=None):
        super(Sequence, self).__init__()
        self._item_schema = item_schema
        self._item = None

    def parse_nested(self):
        if self._item_schema is not None:
            self._item = self.val_context.parse(self._item_schema)

    def validate(self, value):
        value = super(Sequence, self).validate(value)
        if self._item is None:
            return value
        items = []
        for index, item in enumerate(value):
            try:
                items.append(self._item.validate(item))
            except ValidationError as ex:
                raise ex.at(index)
        return type(value)(items)


class Optional(object):
    """Key of an :class:`Object` property that may be absent, filled with ``default`` if given."""

    def __init__(self, key, default=UNDEFINED):
        self.key = key
        self.default = default


class Object(Type):
    """Mappings with declared properties; returns a new dict with defaults filled in.

    :param properties: ``{key | Optional(key, default): schema}``
    :param strict: reject keys that are not declared
    """

    name = "object"
    accept_types = collections.abc.Mapping

    def __init__(self, properties=None, strict=False):
        super(Object, self).__init__()
        self._schemas = []
        self._required = []
        self._defaults = {}
        for key, schema in (properties or {}).items():
            if isinstance(key, Optional):
                if key.default is not UNDEFINED:
                    self._defaults[key.key] = key.default
                key = key.key
            else:
                self._required.append(key)
            self._schemas.append((key, schema))
        self._validators = {}
        self.strict = strict

    @property
    def keys(self):
        return [key for key, _ in self._schemas]

    def parse_nested(self):
        self._validators = collections.OrderedDict(
            (key, self.val_context.parse(schema)) for key, schema in self._schemas)

    def validate(self, value):
        value = super(Object, self).validate(value)
        missing = sorted(self.val_context.repr(key) for key in self._required if key not in value)
        if missing:
            self.error(value, "missing required properties: [{}]".format(", ".join(missing)))
        if self.strict:
            unknown = [key for key in value if key not in self._validators]
            if unknown:
                self.error(value, "unexpected properties: {}".format(self.val_context.repr(unknown)))
        result = dict(value)
        for key, validator in self._validators.items():
            if key in value:
                try:
                    result[key] = validator.validate(value[key])
                except ValidationError as ex:
                    raise ex.at(key)
            elif key in self._defaults:
                result[key] = self._defaults[key]
        return result


def _object_factory(schema):
    if isinstance(schema, dict):
        return Object(schema)


def _sequence_factory(schema):
    if isinstance(schema, list) and len(schema) <= 1:
        return Sequence(*schema)


def _type_factory(schema):
    if inspect.isclass(schema):
        return Type(schema)


def make_default_validation_context():
    """Context with ``integer`` and ``number`` registered and the dict, list and type factories."""
    val_context = ValidationContext([_object_factory, _sequence_factory, _type_factory])
    val_context.register("integer", Integer())
    val_context.register("number", Number())
    return val_context
