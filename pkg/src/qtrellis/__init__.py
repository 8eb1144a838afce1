"""qtrellis: minimal trellises and maximum-likelihood decoding for quantum
stabilizer codes over the depolarizing channel."""

from .backend import COMPILED, backend_name
from .code import (CssCode, CssSector, JointCode, StabilizerCode, base_code,
                   builtin_codes, css_split, extend_joint, is_tof, load_code,
                   new_stabilizer_code, parse_code_text,
                   representative_from_syndrome, to_restricted_tof, to_tof)
from .decoder import (ChannelModel, DecodeResult, css_dml_decode, dml_decode,
                      ndml_decode)
from .oracle import brute_dml, brute_dml_sector, brute_ndml, enumerate_group
from .pauli import (PauliVector, partial_syndrome, pauli_mul, star, syndrome)
from .sim import (SimConfig, SimReport, run_monte_carlo, sample_error,
                  wilson_interval)
from .trellis import (BoundReport, ComplexityReport, Trellis, atomic_trellis,
                      bcjr_wolf, build_min_trellis, build_multigoal_trellis,
                      check_bounds, merge_twins, shannon_product,
                      straight_line, trivial_trellis)

__version__ = "0.1.0"
