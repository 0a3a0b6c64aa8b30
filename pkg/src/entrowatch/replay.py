"""Offline pipeline runs over a command log.

This is the canonical execution path: the live service produces exactly the
event sequence run_session() produces for the captured log, so everything
downstream (traces, reports, tests) can be reproduced offline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .estimator import CommandSample
from .profile import ProfileDocument
from .session import Session, SessionConfig, SessionEvent


@dataclass(frozen=True)
class ReplayResult:
    events: list[SessionEvent]
    session: Session


def run_session(
    samples: Iterable[CommandSample],
    config: SessionConfig,
    profile_doc: ProfileDocument,
) -> ReplayResult:
    """Feed a whole log through a fresh session, including the final flush."""
    session = Session(config, profile_doc)
    events: list[SessionEvent] = []
    for sample in samples:
        events.extend(session.feed(sample))
    events.extend(session.finalize())
    return ReplayResult(events=events, session=session)
