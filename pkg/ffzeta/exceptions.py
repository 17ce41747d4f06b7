class FFZetaError(Exception):
    """Base error; ``detail`` is a JSON-able dict and ``status_code`` the
    process exit code used by the command line."""

    status_code = 1

    def __init__(self, detail=None, status_code=None):
        if detail is None:
            detail = {}
        elif not isinstance(detail, dict):
            detail = {'message': str(detail)}
        self.detail = detail
        if status_code is not None:
            self.status_code = status_code
        super().__init__(detail.get('message', self.__class__.__name__))


class InvalidInputError(FFZetaError):
    status_code = 2


class FieldMismatchError(InvalidInputError):
    pass


class DivisionByZeroError(FFZetaError, ZeroDivisionError):
    status_code = 2


class UnsupportedFeatureError(InvalidInputError):
    pass


class BudgetExceededError(FFZetaError):
    status_code = 2


class PrecisionError(FFZetaError):
    status_code = 3
