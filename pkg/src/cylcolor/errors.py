"""Exception hierarchy shared across the library."""


class CylColorError(Exception):
    """Base class for all cylcolor errors."""


class MalformedRotation(CylColorError):
    """Rotation system or ring data does not describe a valid map."""


class EulerViolation(CylColorError):
    """The rotation system is not an embedding in the sphere."""


class EMGParseError(CylColorError):
    """Malformed EMG text."""


class NotACycle(CylColorError):
    """Vertex sequence is not a cycle of the host graph."""


class ImproperPrecoloring(CylColorError):
    """Precoloring violates its own constraints (domain, colors, ring edges)."""


class NoRings(CylColorError):
    """Operation requires at least one ring."""


class RingMismatch(CylColorError):
    """Two graphs do not share the same labeled rings."""


class InvalidParameter(CylColorError):
    """Construction parameter out of range."""


class NotIndependent(CylColorError):
    """Patch placement vertices are not an independent set."""


class WrongDegree(CylColorError):
    """Patch placement vertex does not have degree three."""


class RingVertex(CylColorError):
    """Operation would disturb a ring vertex."""


class RingShapeMismatch(CylColorError):
    """Ring is not a 4-cycle with the designated pair opposite."""


class EdgeNotOnRing(CylColorError):
    """Subdivision edge does not lie on the designated ring."""


class TooManyRings(CylColorError):
    """Graph already has the maximum number of holes."""


class NotAFace(CylColorError):
    """Given walk is not an internal face of the graph."""


class DiagonalAdjacent(CylColorError):
    """Requested identification pair is adjacent."""


class NoSuchCycle(CylColorError):
    """No non-contractible cycle exists within the requested layer."""


class NotALadder(CylColorError):
    """Given cycles do not bound a quadrangulated ladder."""


class NotTrianglePair(CylColorError):
    """Given triangles are not a collapsible pair."""


class NothingToExtract(CylColorError):
    """Every ring precoloring extends; no critical subgraph exists."""


class NotTame(CylColorError):
    """Graph has a contractible triangle or meeting triangles."""


class PreconditionFailed(CylColorError):
    """A documented precondition of the operation does not hold."""

    def __init__(self, clause: str):
        super().__init__(clause)
        self.clause = clause


class AuditFailed(CylColorError):
    """A post-transformation audit found a violation."""


class TooLarge(CylColorError):
    """Instance exceeds the brute-force guard."""


class NotSixRing(CylColorError):
    """Graph does not carry a single ring of length six."""


class CatalogTooSmall(CylColorError):
    """Graph exceeds the recognition catalog bound; verdict unknown."""
