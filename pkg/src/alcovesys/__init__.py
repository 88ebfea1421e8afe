"""Alcove arrangements at level p, affine braid words and the local system
of derived categories attached to the complexified arrangement complement."""

from .arrangement import Alcove, Arrangement, ConeSpec, build_arrangement, cone_order, half_loop_in
from .braid import AffineBraidGroup, BraidWord, EqualityVerdict
from .errors import AlcoveSysError
from .heckeshadow import DemazureLusztig, GroupAlgebraElem, Laurent
from .localsystem import LocalSystem, Path, PathToken, VerifyOptions, verify_local_system
from .rootdata import RootDatum, build_root_datum, parse_type, weyl_group

__all__ = [
    "Alcove", "Arrangement", "ConeSpec", "build_arrangement", "cone_order", "half_loop_in",
    "AffineBraidGroup", "BraidWord", "EqualityVerdict", "AlcoveSysError",
    "DemazureLusztig", "GroupAlgebraElem", "Laurent",
    "LocalSystem", "Path", "PathToken", "VerifyOptions", "verify_local_system",
    "RootDatum", "build_root_datum", "parse_type", "weyl_group",
]
__version__ = "0.1.0"
