"""Hardness reductions between 3-coloring, LIST-HOM and HOM, with witness transport."""

from .configurations import reduce_3col_to_listhom, reduce_3col_to_listhom_vc
from .degree import DegreeMap, degree_reduce
from .pipelines import color_class_partition, pipeline_chi, pipeline_local, pipeline_main, pipeline_vc
from .record import ReductionError, ReductionRecord, decode_witness, encode_witness
from .targets import reduce_bound_chi, reduce_listhom_to_hom, restrict_to_lists

__all__ = [
    "DegreeMap",
    "ReductionError",
    "ReductionRecord",
    "color_class_partition",
    "decode_witness",
    "degree_reduce",
    "encode_witness",
    "pipeline_chi",
    "pipeline_local",
    "pipeline_main",
    "pipeline_vc",
    "reduce_3col_to_listhom",
    "reduce_3col_to_listhom_vc",
    "reduce_bound_chi",
    "reduce_listhom_to_hom",
    "restrict_to_lists",
]
