"""Exceptions raised by the algebra engine

Check failures are never raised; they are recorded in reports. These
exceptions are reserved for input that cannot be computed with at all.
"""


class CokahlerError(Exception):
    """Base class for every error raised by cokahler_toolkit"""


class AlgebraInputError(CokahlerError, ValueError):
    """Malformed algebraic input (bad degrees, foreign basis elements, ...)"""


class ActionOrderError(AlgebraInputError):
    """A group action whose generator does not have the declared order

    Attributes:
        element: name of the first basis element on which g^m differs from the identity
        order: the declared order m
    """

    def __init__(self, message, element=None, order=None):
        super().__init__(message)
        self.element = element
        self.order = order


class ModelConstructionError(CokahlerError):
    """The degreewise minimal-model construction did not converge

    Attributes:
        degree: degree at which new generators kept appearing
        classes: renderings of the offending cohomology classes
    """

    def __init__(self, message, degree=None, classes=None):
        super().__init__(message)
        self.degree = degree
        self.classes = list(classes or [])


class DocumentError(AlgebraInputError):
    """An algebra document that failed to parse or validate

    Attributes:
        field: dotted path of the offending field (e.g. 'relations[1][0].coeff')
        line, column: position of a JSON syntax error, when known
    """

    def __init__(self, message, field=None, line=None, column=None):
        location = []
        if field:
            location.append(f"field '{field}'")
        if line is not None:
            location.append(f"line {line}, column {column}")
        if location:
            message = f"{message} ({'; '.join(location)})"
        super().__init__(message)
        self.field = field
        self.line = line
        self.column = column
