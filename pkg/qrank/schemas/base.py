from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator


class FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True)


class ArrayModel(BaseModel):
    """
    Frozen model whose numpy fields are made read-only after validation.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _lock_arrays(self) -> Any:
        for value in self.__dict__.values():
            if isinstance(value, np.ndarray):
                value.flags.writeable = False
        return self
