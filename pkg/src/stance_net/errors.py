"""Exception types shared across the pipeline."""


class InputError(Exception):
    """Bad user-supplied input: missing files, malformed records, bad config."""


class StageError(Exception):
    """A pipeline stage failed; carries the stage name for reporting."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage
