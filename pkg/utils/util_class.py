import sys
import os
import os.path as op


class WrongInputException(Exception):
    def __init__(self, msg):
        super().__init__(msg)


class PreconditionException(Exception):
    def __init__(self, msg):
        super().__init__(msg)


class DegenerateGeometryException(Exception):
    def __init__(self, msg):
        super().__init__(msg)


class GridTooCoarseException(Exception):
    def __init__(self, msg):
        super().__init__(msg)


class OutOfRangeException(Exception):
    def __init__(self, msg):
        super().__init__(msg)


class StiffnessException(Exception):
    def __init__(self, msg):
        super().__init__(msg)


class IntegrationException(Exception):
    def __init__(self, msg):
        super().__init__(msg)


class VerificationException(Exception):
    def __init__(self, msg):
        super().__init__(msg)


class OutputFileManager:
    """
    creates parent directories of the output files and removes the files
    that were (partially) written when the block exits without set_ok()
    """
    def __init__(self, filepaths):
        self.filepaths = [path for path in filepaths if path is not None]
        self.safe_exit = False

    def __enter__(self):
        for path in self.filepaths:
            dirname = op.dirname(op.abspath(path))
            os.makedirs(dirname, exist_ok=True)
        return self

    def set_ok(self):
        self.safe_exit = True

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.safe_exit is False:
            print("[OutputFileManager] the process is NOT ended properly, remove the output files",
                  file=sys.stderr)
            for path in self.filepaths:
                if op.isfile(path):
                    print("    remove:", path, file=sys.stderr)
                    os.remove(path)
        # exceptions propagate to the caller
        return False

