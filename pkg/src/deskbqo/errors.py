"""Exception hierarchy shared by all modules."""


class DeskBQOError(Exception):
    pass


class MalformedElement(DeskBQOError, ValueError):
    """An element does not have the shape its order expects."""


class ContractViolation(DeskBQOError):
    """A function was called outside its precondition."""


class InvalidTerm(DeskBQOError, ValueError):
    """A term parses but violates a validity clause of its notation system."""


class ParseError(DeskBQOError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if text else ""
        super().__init__(f"{message}{where}" + (f": {text!r}" if text else ""))


class NotDecomposable(DeskBQOError, ValueError):
    pass
