"""Wire protocol: the JSON frames exchanged over the session socket.

Client frames carry raw commands and the end-of-stream marker. Server
frames mirror the session's event stream one to one (entropy, indication,
profile_update, rate_warning), plus per-command pose echoes and a final
done frame. Pipeline frames serialize identically for live and replayed
runs, which is what makes live/offline equivalence testable byte for byte.
"""

from __future__ import annotations

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from ..dpu import ProfileUpdate
from ..session import EntropyTick, RateWarning, SessionEvent
from ..wais import TransitionEvent


class _Frame(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CmdMessage(_Frame):
    type: Literal["cmd"] = "cmd"
    t_ms: int = Field(ge=0)
    lin: float
    ang: float


class EndMessage(_Frame):
    type: Literal["end"] = "end"


ClientMessage = Annotated[Union[CmdMessage, EndMessage], Field(discriminator="type")]
client_message_adapter: TypeAdapter[ClientMessage] = TypeAdapter(ClientMessage)


class PoseMessage(_Frame):
    type: Literal["pose"] = "pose"
    t_ms: int
    x: float
    y: float
    heading: float


class EntropyMessage(_Frame):
    type: Literal["entropy"] = "entropy"
    t_ms: int
    hp_lin: float
    hp_ang: float
    total: float
    avg: float


class IndicationMessage(_Frame):
    type: Literal["indication"] = "indication"
    t_ms: int
    state: Literal["NORMAL", "HIGH"]
    play_ping: bool


class ProfileUpdateMessage(_Frame):
    type: Literal["profile_update"] = "profile_update"
    t_ms: int
    alpha_lin: float
    alpha_ang: float
    revision: int


class RateWarningMessage(_Frame):
    type: Literal["rate_warning"] = "rate_warning"
    t_ms: int
    off_nominal_ms: int


class DoneMessage(_Frame):
    type: Literal["done"] = "done"
    computations: int


ServerMessage = Annotated[
    Union[
        PoseMessage,
        EntropyMessage,
        IndicationMessage,
        ProfileUpdateMessage,
        RateWarningMessage,
        DoneMessage,
    ],
    Field(discriminator="type"),
]
server_message_adapter: TypeAdapter[ServerMessage] = TypeAdapter(ServerMessage)

PipelineMessage = Union[
    EntropyMessage, IndicationMessage, ProfileUpdateMessage, RateWarningMessage
]


def event_to_message(event: SessionEvent) -> PipelineMessage:
    """Map one session event onto its wire frame."""
    if isinstance(event, EntropyTick):
        c = event.computation
        return EntropyMessage(
            t_ms=c.t_ms, hp_lin=c.hp_lin, hp_ang=c.hp_ang, total=c.total, avg=event.wais_avg
        )
    if isinstance(event, TransitionEvent):
        return IndicationMessage(
            t_ms=event.t_ms, state=event.indication, play_ping=event.play_ping
        )
    if isinstance(event, ProfileUpdate):
        return ProfileUpdateMessage(
            t_ms=event.t_ms,
            alpha_lin=event.profile.alpha_lin,
            alpha_ang=event.profile.alpha_ang,
            revision=event.profile.revision,
        )
    if isinstance(event, RateWarning):
        return RateWarningMessage(t_ms=event.t_ms, off_nominal_ms=event.off_nominal_ms)
    raise TypeError(f"no wire mapping for event {event!r}")
