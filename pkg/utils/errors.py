class QVandError(Exception):
    """Base class for every error raised by the q-Vandermonde code."""


class ParseError(QVandError, ValueError):
    def __init__(self, message, position, text=None):
        self.message = message
        self.position = position
        self.text = text
        detail = f"{message} at position {position}"
        if text is not None:
            detail += f" in {text!r}"
        super().__init__(detail)


class DegenerateQ(QVandError):
    """q lies in A_n: q^j = 1 for the witness j, so (q;q)_j vanishes."""

    def __init__(self, j):
        self.j = j
        super().__init__(f"q is degenerate: q^{j} = 1 (j={j})")


class ZeroQ(QVandError):
    def __init__(self):
        super().__init__("q = 0 is not supported")


class DimensionMismatch(QVandError, ValueError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")


class SingularD(QVandError):
    def __init__(self, i):
        self.i = i
        super().__init__(f"D[{i}] is zero")


class SingularMatrix(QVandError):
    pass


class DenseCapExceeded(QVandError):
    def __init__(self, n, cap):
        self.n = n
        self.cap = cap
        super().__init__(f"densification refused for n={n} (cap {cap}, see QVAND_DENSE_CAP)")


class ConfigError(QVandError):
    pass
