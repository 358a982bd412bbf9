class MalformedNameError(ValueError):
    pass


class InvalidParameterError(ValueError):
    pass


class MissingEntryError(KeyError):
    pass


class InvalidScenarioError(ValueError):
    """
    Raised when a scenario, scenario file or topology violates an invariant

    Attributes
    ----------
    field : str
        name of the scenario field (or topology element) at fault
    """

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field: str = field
        self.message: str = message
