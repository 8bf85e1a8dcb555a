"""Exception hierarchy shared by every stage."""


class BdeaError(Exception):
    """Base class for all errors raised by this package."""


# radix / framing
class OddLength(BdeaError, ValueError):
    pass


class InvalidDigit(BdeaError, ValueError):
    pass


class LengthNotMultipleOf4(BdeaError, ValueError):
    pass


class LengthMismatch(BdeaError, ValueError):
    pass


class TooLarge(BdeaError, ValueError):
    pass


class BadMagic(BdeaError):
    """A container, envelope or blob did not start with its expected magic."""


class BadVersion(BadMagic):
    """Magic matched but the format version is unknown."""


class CrcMismatch(BdeaError):
    """Envelope integrity check failed (usually a wrong k_b)."""


# dna coding
class NotAPermutation(BdeaError, ValueError):
    pass


class OddBitLength(BdeaError, ValueError):
    pass


class InvalidBase(BdeaError, ValueError):
    pass


# pcr
class InvalidPrimer(BdeaError, ValueError):
    pass


class BiologicalPollution(BdeaError):
    """De-amplification found a primer slot that does not match the key."""


# compression
class CompressionError(BdeaError):
    pass


class TruncatedBody(CompressionError):
    pass


class MalformedPadding(CompressionError):
    pass


class CorruptBody(CompressionError):
    pass


# key exchange
class ModulusOutOfRange(BdeaError, ValueError):
    pass


class InvalidParams(BdeaError, ValueError):
    pass


class PublicValueOutOfRange(BdeaError, ValueError):
    pass


class MalformedBundle(BdeaError):
    pass


# wire protocol
class ProtocolError(BdeaError):
    pass


class FrameTooLarge(ProtocolError):
    pass


class UnexpectedFrameType(ProtocolError):
    pass


class TransportClosed(ProtocolError):
    pass


class RemoteError(ProtocolError):
    def __init__(self, reason: int, message: str = ""):
        self.reason = reason
        super().__init__(message or f"peer reported error reason={reason}")


class AckMismatch(ProtocolError):
    pass


# attack bench
class MaxLenExceeded(BdeaError, ValueError):
    pass
