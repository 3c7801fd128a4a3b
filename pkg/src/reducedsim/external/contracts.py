"""Binary artifact contracts for reducedsim.

Every file starts with 8 magic bytes and an int64 format version, followed by a fixed
header of little-endian int64/float64 fields and row-major little-endian float64 payloads.
The header models below define the exact fields in storage order.
"""
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field

FORMAT_VERSION = 1

TRAJECTORY_MAGIC = b"RSIMTRJ\x00"
BASIS_MAGIC = b"RSIMBAS\x00"
DATASET_MAGIC = b"RSIMDSM\x00"
MODEL_MAGIC = b"RSIMLSM\x00"

INT = "<i8"
FLOAT = "<f8"

FLAG_CENTERED = 1
FLAG_DENSE_HEAD = 1


class Header(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    version: int = Field(default=FORMAT_VERSION, description="Format version")


class TrajectoryHeader(Header):
    """Full-order trajectory with its parameter trajectory

    Layout: magic, version, N, eta, l (int64), dt, t_start (float64),
    states eta x N, parameters eta x l.
    """
    n_state: int = Field(ge=1, description="State dimension N", examples=[300])
    eta: int = Field(ge=1, description="Number of time samples", examples=[121])
    n_channels: int = Field(ge=1, description="Parameter channels l", examples=[3])
    dt: float = Field(gt=0, description="Sampling interval (s)", examples=[0.025])
    t_start: float = Field(default=0.0, description="First grid time (s)")


class BasisHeader(Header):
    """POD basis

    Layout: magic, version, N, r, d, flags (int64), V N x r, sigma (d), mean (N) if centered.
    """
    n_state: int = Field(ge=1, examples=[300])
    r: int = Field(ge=1, examples=[10])
    d: int = Field(ge=1, description="Number of stored singular values", examples=[300])
    centered: bool = Field(default=False)


class DatasetManifestHeader(Header):
    """Split and normalization of a windowed dataset

    Layout: magic, version, r, l, n_w, n_train, n_val, n_test (int64), the three id
    lists (int64), then z_shift, z_scale, mu_shift, mu_scale, dz_shift, dz_scale (float64).
    """
    r: int = Field(ge=1, examples=[10])
    l: int = Field(ge=1, examples=[3])
    n_w: int = Field(ge=1, examples=[8])
    n_train: int = Field(ge=0, examples=[30])
    n_val: int = Field(ge=0, examples=[5])
    n_test: int = Field(ge=0, examples=[5])


class ModelHeader(Header):
    """LSTM regressor

    Layout: magic, version, layer count, (n_x, n_h) per layer, n_w, flags, r, l (int64),
    per layer W_f, W_i, W_c, W_h, b_f, b_i, b_c, b_h, optional W_y, b_y, then the six
    normalization vectors.
    """
    layers: List[Tuple[int, int]] = Field(min_length=1, description="(n_x, n_h) per layer", examples=[[(13, 64), (64, 10)]])
    n_w: int = Field(ge=1, examples=[8])
    dense_head: bool = Field(default=False)
    r: int = Field(ge=1, examples=[10])
    l: int = Field(ge=1, examples=[3])
