"""Binary artifact formats."""
from reducedsim.external.codec import (
    DatasetManifest,
    check_artifact,
    decode_basis,
    decode_dataset_manifest,
    decode_model,
    decode_trajectory,
    encode_basis,
    encode_dataset_manifest,
    encode_model,
    encode_trajectory,
)

__all__ = [
    "DatasetManifest",
    "check_artifact",
    "decode_basis",
    "decode_dataset_manifest",
    "decode_model",
    "decode_trajectory",
    "encode_basis",
    "encode_dataset_manifest",
    "encode_model",
    "encode_trajectory",
]
