"""Weight exporter: vision-architecture snapshots to the neutral tensor container."""

__version__ = "0.1.0"

from .export import SUPPORTED_ARCHITECTURES, canonical_name, export_pretrained, export_synthetic
from .format import layer_order_value, write_tensor_file

__all__ = [
    "__version__",
    "SUPPORTED_ARCHITECTURES",
    "canonical_name",
    "export_pretrained",
    "export_synthetic",
    "write_tensor_file",
    "layer_order_value",
]
