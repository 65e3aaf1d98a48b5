# -*- coding: utf-8 -*-
import numbers

import numpy as np

from .validators import make_default_validation_context, Enum, Range, Nullable, Type

__all__ = ["make_config_context", "Method", "Init", "NodeOrder", "ZeroRowPolicy"]


class Method(Enum):
    name = "method"
    values = ("frost", "kn", "klem", "svca")


class Init(Enum):
    name = "init"
    values = ("svca", "random")


class NodeOrder(Enum):
    name = "node_order"
    values = ("fixed", "shuffled")


class ZeroRowPolicy(Enum):
    name = "zero_row_policy"
    values = ("random", "error", "singleton")


class Seed(Type):
    name = "seed"
    accept_types = numbers.Integral
    reject_types = bool

    def validate(self, value):
        value = super(Seed, self).validate(value)
        if value < 0:
            self.error(value)
        return int(value)

    @property
    def humanized_name(self):
        return "nonnegative integer seed"


def make_config_context():
    """Validation context with the names used by configs and CLI arguments."""
    val_context = make_default_validation_context()
    val_context.name_types("null", type(None))
    val_context.name_types("boolean", bool)
    val_context.name_types("integer", int, np.integer)
    val_context.name_types("number", float, np.floating)
    val_context.name_types("array", list, tuple)
    val_context.name_types("object", dict)

    val_context.register("count", val_context.parse(Range("integer", min_value=1)))
    val_context.register("nonnegative", val_context.parse(Range("number", min_value=0)))
    val_context.register("probability", val_context.parse(Range("number", 0, 1)))
    val_context.register("seed", val_context.parse(Nullable(Seed())))
    for enum_cls in Method, Init, NodeOrder, ZeroRowPolicy:
        val_context.register(enum_cls.name, val_context.parse(enum_cls()))
    return val_context


config_context = make_config_context()
