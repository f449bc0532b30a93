"""Data-extraction bridge producing geometry-database entries for charslope."""

from .engines import BuiltinEngine, EngineError, ExtractedGeometry, SnappyEngine, make_engine
from .pipeline import (CUSP_NOTE, LinkRequest, RequestError, extract,
                       load_requests, parse_requests, regenerate_fixture)

__version__ = "0.1.0"
