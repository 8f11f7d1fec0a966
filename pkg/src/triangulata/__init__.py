"""Structure and four-colouring toolkit for maximal planar graphs."""

from triangulata.embedding import (
    DomainError,
    FaceTriple,
    PlaneTriangulation,
    StructureError,
    automorphism_orbits,
    canonical_code,
    faces,
    from_graph6,
    to_graph6,
)

__all__ = [
    "DomainError",
    "FaceTriple",
    "PlaneTriangulation",
    "StructureError",
    "automorphism_orbits",
    "canonical_code",
    "faces",
    "from_graph6",
    "to_graph6",
]

__version__ = "0.1.0"
