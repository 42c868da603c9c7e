"""Exception types raised across the package."""


class FuzzySelError(Exception):
    """Base class for every error raised by fuzzysel."""


class DataError(FuzzySelError):
    """Problem with input data (CLI exit code 1)."""


class ConfigError(FuzzySelError):
    """Invalid parameter or configuration (CLI exit code 2)."""


class MalformedRow(DataError):
    def __init__(self, line, message=""):
        self.line = line
        super().__init__(f"line {line}: {message}" if message else f"line {line}")


class EmptyDataset(DataError):
    pass


class ConstantFeature(DataError):
    def __init__(self, feature):
        self.feature = feature
        super().__init__(f"feature {feature} is constant on the fitting data")


class DegenerateSplit(DataError):
    pass


class EmptyClass(DataError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"class {label!r} has no samples")


class DegenerateInput(DataError):
    pass


class DimensionMismatch(FuzzySelError, ValueError):
    pass


class LengthMismatch(FuzzySelError, ValueError):
    pass


class DomainError(FuzzySelError, ValueError):
    pass


class EmptyColumn(FuzzySelError, ValueError):
    pass


class EmptySubset(FuzzySelError, ValueError):
    pass
