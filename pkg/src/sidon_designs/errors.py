"""Exception types shared across the package."""


class SidonDesignError(Exception):
    pass


class NotAPrimePower(SidonDesignError, ValueError):
    pass


class FieldTooLarge(SidonDesignError):
    pass


class IncompatibleFields(SidonDesignError, ValueError):
    pass


class GroupMismatch(SidonDesignError, ValueError):
    pass


class GroupTooLarge(SidonDesignError):
    pass


class EvenCharacteristic(SidonDesignError, ValueError):
    pass


class QTooSmall(SidonDesignError, ValueError):
    pass


class KTooLarge(SidonDesignError, ValueError):
    pass


class DTooLarge(SidonDesignError):
    pass


class ConstructionSelfCheckFailed(SidonDesignError):
    pass


class EmptySet(SidonDesignError, ValueError):
    pass


class DimensionTooLarge(SidonDesignError):
    pass
