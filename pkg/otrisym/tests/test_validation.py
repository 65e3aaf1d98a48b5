# -*- coding: utf-8 -*-
import unittest

import numpy as np

import otrisym.validation as V
from otrisym.validation.contexts import make_config_context


class Mode(V.Enum):
    name = "mode"
    values = ("fast", "exact")


def prepare_val_context():
    val_context = make_config_context()
    val_context.register(Mode.name, Mode())
    return val_context


class TestValidator(unittest.TestCase):

    def setUp(self):
        self.val_context = prepare_val_context()

    def test_integer(self):
        self._testValidation("integer",
                             valid=[1, 0, -5, np.int64(3)],
                             invalid=[1.0, "1", None, True, False])

    def test_number(self):
        self._testValidation("number",
                             valid=[1, 1.5, -0.25, np.float64(2.0)],
                             invalid=["1", None, True, [1]])

    def test_range(self):
        self._testValidation(V.Range("integer", 1),
                             valid=[1, 2, 3],
                             invalid=[0, -1, 1.5])
        self._testValidation(V.Range("integer", max_value=2),
                             valid=[-1, 0, 1, 2],
                             invalid=[3])
        self._testValidation(V.Range("number", 0, 1),
                             valid=[0, 0.5, 1],
                             invalid=[-0.1, 1.01])
        self._testValidation(V.Range(min_value=1, max_value=2),
                             valid=[1, 2, 1.5],
                             invalid=[-1, 0, 3])

    def test_count(self):
        self._testValidation("count", valid=[1, 20, np.int32(4)], invalid=[0, -3, 2.0, True, None])

    def test_nonnegative(self):
        self._testValidation("nonnegative", valid=[0, 0.0, 1e-6, 3], invalid=[-1e-9, "1", None])

    def test_probability(self):
        self._testValidation("probability", valid=[0, 0.3, 1], invalid=[-0.1, 1.5, None])

    def test_seed(self):
        self._testValidation("seed",
                             valid=[None, 0, 42],
                             adapted=[(np.int64(7), 7)],
                             invalid=[-1, 1.0, "3", True])

    def test_domain_enums(self):
        self._testValidation("method", valid=["frost", "kn", "klem", "svca"], invalid=["sbm", "", None])
        self._testValidation("init", valid=["svca", "random"], invalid=["spectral"])
        self._testValidation("node_order", valid=["fixed", "shuffled"], invalid=["random"])
        self._testValidation("zero_row_policy", valid=["random", "error", "singleton"], invalid=["drop"])

    def test_sequence(self):
        for obj in V.Sequence, V.Sequence(), []:
            self._testValidation(obj,
                                 valid=[[], [1], (1, 2), [1, (2, 3), 4]],
                                 invalid=[1, 1.1, "foo", b"ab", {}, False, None])
        self._testValidation(["count"],
                             valid=[[], [1, 2, 3], (4, 5)],
                             invalid=[[1, 0], [1, 2.5], "12"])

    def test_object(self):
        self._testValidation({"n": "count", V.Optional("mu", 0.1): "probability"},
                             valid=[{"n": 3, "mu": 0.5}, {"n": 3, "extra": "kept"}],
                             adapted=[({"n": 3}, {"n": 3, "mu": 0.1})],
                             invalid=[{}, {"mu": 0.5}, {"n": 0}, {"n": 3, "mu": 2}, [("n", 3)]])

    def test_strict_object(self):
        self._testValidation(V.Object({"n": "count", V.Optional("r"): "count"}, strict=True),
                             valid=[{"n": 2}, {"n": 2, "r": 1}],
                             invalid=[{"n": 2, "mu": 0.1}],
                             errors=[({"n": 2, "k": 1}, "Invalid value {'k': 1, 'n': 2} (object): "
                                                       "unexpected properties: ['k']")])

    def test_object_keys(self):
        obj = V.Object({"n": "count", V.Optional("r", 2): "count", "mu": "probability"})
        self.assertEqual(obj.keys, ["n", "r", "mu"])

    def test_enum(self):
        self._testValidation(V.Enum(1, 2, 3),
                             valid=[1, 2, 3], invalid=[0, 4, "1", [1], True])
        self._testValidation(V.Enum("foo", "bar"),
                             valid=["foo", "bar"], invalid=["", "fooabar", ["foo"]])

    def test_enum_class(self):
        for obj in "mode", Mode, Mode():
            self._testValidation(obj, valid=["fast", "exact"], invalid=["slow", ""])

    def test_nullable(self):
        for obj in V.Nullable("integer"), V.Nullable(V.Integer()):
            self._testValidation(obj,
                                 valid=[None, 0],
                                 invalid=[1.1, True, False])
        self._testValidation(V.Nullable([V.Nullable("count")]),
                             valid=[None, [], [3], [None], [3, None]],
                             invalid=["", [None, 3, 0]])

    def test_nullable_with_default(self):
        self._testValidation(V.Nullable("integer", -1),
                             adapted=[(None, -1), (0, 0)],
                             invalid=[1.1, True, False])

    def test_optional_properties(self):
        self._testValidation({V.Optional("foo"): V.Nullable("integer")}, adapted=[({}, {})])
        self._testValidation({V.Optional("foo", None): V.Nullable("integer")}, adapted=[({}, {"foo": None})])

    def test_reject_types(self):
        validator = self.val_context.parse(V.Type(accept_types=Exception, reject_types=Warning))
        validator.validate(KeyError())
        self.assertRaises(V.ValidationError, validator.validate, UserWarning())

    def test_schema_errors(self):
        for obj in [True, 1, 3.2, "foo", object(), ["foo"], ["count", "count"], {"field": "foo"}]:
            self.assertRaises(V.SchemaError, self.val_context.parse, obj)

    def test_register(self):
        self.assertRaises(TypeError, self.val_context.register, "small", int)
        self.val_context.register("small", V.Range("integer", 0, 3))
        self._testValidation("small", valid=[0, 3], invalid=[4, 1.5])

    def test_humanized_names(self):
        self.assertEqual(self.val_context.parse("integer").humanized_name, "integer")
        self.assertEqual(self.val_context.parse("count").humanized_name, "integer >= 1")
        self.assertEqual(self.val_context.parse("probability").humanized_name, "number >= 0 <= 1")
        self.assertEqual(self.val_context.parse(V.Enum("a", "b")).humanized_name, "one of {'a', 'b'}")
        self.assertEqual(self.val_context.parse(V.Nullable("integer")).humanized_name, "integer or null")
        self.assertEqual(self.val_context.parse(KeyError).humanized_name, "KeyError")

    def test_type_names_follow_subclasses(self):
        self.assertEqual(self.val_context.type_name(np.int16), "integer")
        self.assertEqual(self.val_context.type_name(np.float32), "number")
        self.assertEqual(self.val_context.type_name(bool), "boolean")
        self.assertEqual(self.val_context.type_name(KeyError), "KeyError")

    def test_error_message(self):
        self._testValidation({"n": "count", V.Optional("sizes"): ["count"]}, errors=[
            (42, "Invalid value 42 (integer): must be object"),
            ({}, "Invalid value {} (object): missing required properties: ['n']"),
            ({"n": "3"}, "Invalid value '3' (str): must be integer (at n)"),
            ({"n": 0}, "Invalid value 0 (integer): must not be less than 1 (at n)"),
            ({"n": 3, "sizes": None}, "Invalid value None (null): must be array (at sizes)"),
            ({"n": 3, "sizes": [1, 0, 2]}, "Invalid value 0 (integer): must not be less than 1 (at sizes[1])"),
        ])

    def test_error_path(self):
        validator = self.val_context.parse([{"sizes": ["count"]}])
        with self.assertRaises(V.ValidationError) as cm:
            validator.validate([{"sizes": [1]}, {"sizes": [2, 0]}])
        self.assertEqual(cm.exception.path, [1, "sizes", 1])
        self.assertTrue(cm.exception.to_text().endswith("(at value[1]['sizes'][1])"))

    def test_error_properties(self):
        for keys in [], ["bar"], ["bar", 2]:
            ex = V.ValidationError(self.val_context, "foo")
            for key in keys:
                self.assertIs(ex.at(key), ex)
            self.assertEqual(ex.message, str(ex))
            self.assertEqual(ex.args, (str(ex),))

    def test_validation_error_is_value_error(self):
        self.assertRaises(ValueError, self.val_context.parse("count").validate, 0)

    def _testValidation(self, obj, invalid=(), valid=(), adapted=(), errors=()):
        validator = self.val_context.parse(obj)
        for from_value, to_value in [(value, value) for value in valid] + list(adapted):
            self.assertTrue(validator.is_valid(from_value))
            adapted_value = validator.validate(from_value)
            self.assertIs(adapted_value.__class__, to_value.__class__)
            self.assertEqual(adapted_value, to_value)
        for value, error in [(value, None) for value in invalid] + list(errors):
            self.assertFalse(validator.is_valid(value))
            try:
                validator.validate(value)
            except V.ValidationError as ex:
                if error:
                    error_text = ex.to_text()
                    self.assertEqual(error_text, error, "Actual error: {}".format(error_text))


if __name__ == '__main__':
    unittest.main()
