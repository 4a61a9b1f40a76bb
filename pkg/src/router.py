from typing import Callable

from pydantic import BaseModel

from src.cli.schemas import Command, RunConfig
from src.cli.views import (
    count_view,
    graphs_view,
    integral_view,
    table_view,
    verify_boson_view,
    verify_fermion_view,
)


command_router: dict[Command, Callable[[RunConfig], tuple[int, BaseModel]]] = {
    Command.COUNT: count_view,
    Command.GRAPHS: graphs_view,
    Command.INTEGRAL: integral_view,
    Command.TABLE: table_view,
    Command.VERIFY_BOSON: verify_boson_view,
    Command.VERIFY_FERMION: verify_fermion_view,
}
