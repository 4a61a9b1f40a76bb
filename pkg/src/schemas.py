from typing import Annotated

from pydantic import BaseModel, ConfigDict, PlainSerializer


class HurwitzBase(BaseModel):
    model_config = ConfigDict(
        validate_assignment=True,
        str_strip_whitespace=True,
        populate_by_name=True,
    )


# Counts outgrow 64 bits quickly, JSON carries them as decimal strings.
BigInt = Annotated[int, PlainSerializer(str, return_type=str, when_used="json")]
