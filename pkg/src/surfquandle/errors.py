"""Exception types shared by the parsers and validators."""


class StructureError(ValueError):
    """Tables or diagram data that are malformed (wrong shape, bad indices).

    Distinct from a law violation: a structurally broken object cannot even
    be checked against its axioms.
    """


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
