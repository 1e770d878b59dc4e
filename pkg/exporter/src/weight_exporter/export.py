"""Export pretrained vision architectures and synthetic fixtures.

Pretrained snapshots come from the torchvision model hub; every weight
tensor with at least two dimensions is written in network layer order
as 32-bit floats.  Biases and 1-D normalization parameters never make
it into the file (the analyzer would filter them anyway).  A manifest
JSON records the snapshot provenance so variance deviations can be
attributed to hub version drift.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .format import layer_order_value, write_tensor_file

#: Canonical architecture names accepted by :func:`export_pretrained`.
SUPPORTED_ARCHITECTURES = (
    "vgg11", "vgg13", "vgg16", "vgg19",
    "vgg11_bn", "vgg13_bn", "vgg16_bn", "vgg19_bn",
    "resnet18", "resnet34", "resnet50", "resnet101", "resnet152",
    "densenet121", "densenet161", "densenet169", "densenet201",
)

# accept the compact spelling some tables use for the batch-norm variants
_ALIASES = {"vgg11bn": "vgg11_bn", "vgg13bn": "vgg13_bn", "vgg16bn": "vgg16_bn", "vgg19bn": "vgg19_bn"}


def canonical_name(name: str) -> str:
    lowered = name.strip().lower()
    lowered = _ALIASES.get(lowered, lowered)
    if lowered not in SUPPORTED_ARCHITECTURES:
        raise ValueError(
            f"unknown architecture {name!r}; supported: {', '.join(SUPPORTED_ARCHITECTURES)}"
        )
    return lowered


def _eligible_state_tensors(model) -> list[tuple[str, np.ndarray]]:
    arrays = []
    for key, value in model.state_dict().items():
        if value.ndim >= 2:
            arrays.append((key, value.detach().cpu().numpy().astype(np.float32)))
    return arrays


def export_pretrained(
    name: str, out_dir: str | Path, weights: str = "pretrained"
) -> tuple[Path, Path]:
    """Write ``<arch>.safetensors`` plus ``<arch>.manifest.json``.

    ``weights="pretrained"`` loads the ImageNet snapshot from the model
    hub (needs network or a warm local cache); ``weights="random"``
    exports the architecture at its random initialization, which keeps
    the tensor structure identical for offline structural work.
    """
    import torch
    import torchvision
    from torchvision.models import get_model

    arch = canonical_name(name)
    if weights == "pretrained":
        model = get_model(arch, weights="IMAGENET1K_V1")
        source = f"torchvision {torchvision.__version__} IMAGENET1K_V1"
    elif weights == "random":
        torch.manual_seed(0)
        model = get_model(arch, weights=None)
        source = f"torchvision {torchvision.__version__} random-init"
    else:
        raise ValueError(f"weights must be 'pretrained' or 'random', got {weights!r}")

    arrays = _eligible_state_tensors(model)
    names = [n for n, _ in arrays]
    metadata = {"architecture": arch, "layer_order": layer_order_value(names), "source": source}

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tensor_path = out_dir / f"{arch}.safetensors"
    manifest_path = out_dir / f"{arch}.manifest.json"
    tensor_path.write_bytes(write_tensor_file(arrays, metadata))
    manifest = {
        "architecture": arch,
        "source": source,
        "weights": weights,
        "tensor_count": len(arrays),
        "layer_order": names,
        "tensors": [{"name": n, "shape": list(a.shape)} for n, a in arrays],
    }
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return tensor_path, manifest_path


def export_synthetic(shapes: list[tuple[int, ...]], seed: int, path: str | Path) -> Path:
    """Write seeded standard-normal tensors with the given shapes.

    Deterministic per seed: re-exporting yields bit-identical files.
    The empty shape list produces a valid file with zero tensors.
    """
    rng = np.random.default_rng(seed)
    arrays = []
    for i, shape in enumerate(shapes):
        shape = tuple(int(p) for p in shape)
        if any(p < 1 for p in shape):
            raise ValueError(f"shape {shape} has entries below 1")
        arrays.append((f"layer{i:03d}.weight", rng.standard_normal(shape).astype(np.float32)))
    metadata = {
        "architecture": "synthetic",
        "layer_order": layer_order_value([n for n, _ in arrays]),
        "source": f"synthetic seed={seed}",
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(write_tensor_file(arrays, metadata))
    return path
