# -*- coding: utf-8 -*-
"""Exceptions raised by otrisym."""

__all__ = ["OtrisymError", "GraphFormatError", "EmptyGraphError", "ZeroRowError",
           "NumericalError", "ConvergenceError", "DimensionError"]


class OtrisymError(Exception):
    """Base class of every error raised by this package."""

    def __init__(self, msg):
        super(OtrisymError, self).__init__(msg)
        self._msg = msg

    def __str__(self):
        return self._msg

    @property
    def message(self):
        return self.__str__()


class GraphFormatError(OtrisymError, ValueError):
    """An edge list or labels file cannot be parsed."""

    def __init__(self, msg, path=None, line_number=None):
        self.path = path
        self.line_number = line_number
        if line_number is not None:
            msg = "{}:{}: {}".format(path or "<input>", line_number, msg)
        elif path is not None:
            msg = "{}: {}".format(path, msg)
        super(GraphFormatError, self).__init__(msg)


class EmptyGraphError(OtrisymError, ValueError):
    """An operation needs at least one node."""


class ZeroRowError(OtrisymError, ValueError):
    """Some nodes belong to no community and the policy forbids it."""

    def __init__(self, nodes):
        self.nodes = list(nodes)
        shown = ", ".join(str(i) for i in self.nodes[:20])
        if len(self.nodes) > 20:
            shown += ", ..."
        super(ZeroRowError, self).__init__(
            "{} node(s) have a zero row in Z: {}".format(len(self.nodes), shown))


class NumericalError(OtrisymError, ArithmeticError):
    """A numerical procedure failed."""


class ConvergenceError(NumericalError):
    """An iterative procedure did not reach its tolerance."""

    def __init__(self, msg, residual=None, iterations=None):
        self.residual = residual
        self.iterations = iterations
        super(ConvergenceError, self).__init__(msg)


class DimensionError(OtrisymError, ValueError):
    """Factor, partition or graph sizes do not agree (``r > n``, ``r = 0``, ...)."""
