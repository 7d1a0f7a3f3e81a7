from ._perico import (
    ArgumentError,
    PeriodicGraph,
    ResourceError,
    colour_pipeline,
    edge_colour_pipeline,
    estimate_ends,
    example,
    example_names,
    hyp,
    parse,
    render_svg,
    serialize,
)

__all__ = [
    "ArgumentError",
    "PeriodicGraph",
    "ResourceError",
    "colour_pipeline",
    "edge_colour_pipeline",
    "estimate_ends",
    "example",
    "example_names",
    "hyp",
    "parse",
    "render_svg",
    "serialize",
]
