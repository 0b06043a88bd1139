from typing import Annotated

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer


def _frozen_array(value) -> np.ndarray:
    array = np.array(value, dtype=np.float64, copy=True)
    if array.ndim != 1:
        raise ValueError(f"expected a one-dimensional array, got shape {array.shape}")
    array.setflags(write=False)
    return array


# Float arrays are copied on construction and made read-only, so a value object
# handed to another consumer can never be mutated behind its back.
FloatArray = Annotated[
    np.ndarray,
    BeforeValidator(_frozen_array),
    PlainSerializer(lambda array: array.tolist(), return_type=list),
]


class DomainModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True, populate_by_name=True)
