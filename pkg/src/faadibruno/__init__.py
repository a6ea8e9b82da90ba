"""Exact Faa di Bruno coefficients indexed by integer partitions, Taylor-jet
composition, and computational checks of the related counting identities."""

from .errors import DomainError, InvalidArgument, LexError, ParseError
from .partitions import (
    DEFAULT_CAP,
    Partition,
    PartitionTally,
    count,
    decrement,
    enumerate_by_length,
    enumerate_partitions,
    hardy_ramanujan_estimate,
    multiplicity,
)
from .coefficients import (
    BForm,
    CoeffEntry,
    CoeffTable,
    classical_coefficient,
    closed_form,
    column_multiplier,
    from_bform,
    max_coefficient,
    multinomial,
    recursion_table,
    table,
    to_bform,
)
from .identities import (
    IdentityReport,
    bell_total,
    find_coinciding_columns,
    stirling_sum,
    verify_log_exp,
    verify_power,
)
from .series import (
    Jet,
    compose_faa,
    compose_series,
    elementary_jet,
    jet_add,
    jet_mul,
    jet_pow,
    jet_scale,
)
from .frontend import derive, parse, tokenize, to_source

__version__ = "0.1.0"
