class CovpriorError(ValueError):
    """Base class for errors raised by covprior."""


class DomainError(CovpriorError):
    """A numeric argument is outside the domain of an operation."""


class InputError(CovpriorError):
    """
    Problem in an input data or configuration file.

    Arguments:
        message {str} -- [what is wrong]
        path {[str]} -- [file the problem was found in] (default: {None})
        line {[int]} -- [1-based line number, the header is line 1] (default: {None})
    """

    def __init__(self, message, path=None, line=None):
        self.message = message
        self.path = None if path is None else str(path)
        self.line = line
        super().__init__(self._render())

    def _render(self):
        where = []
        if self.path is not None:
            where.append(self.path)
        if self.line is not None:
            where.append("line {}".format(self.line))
        if not where:
            return self.message
        return "{}: {}".format(":".join(where), self.message)
