"""Path homology, discrete Morse complexes and Witten deformation for digraphs."""
from .graph import Digraph, is_transitive, parse_digraph, serialize_digraph, transitive_closure
from .homology import betti, build_complex, euler_characteristic, path_homology
from .paths import Chain, allowed_paths, boundary, omega_basis

__version__ = "0.1.0"
