"""Session orchestration behind the HTTP API.

One acquisition session runs at a time.  A session walks the state machine
(rest, ramp, mark/abort) while a worker thread feeds it samples from the
replay source and publishes every event to subscribed stream readers.
Readers get bounded queues: a reader that falls too far behind is told so
explicitly (overflow event) instead of silently losing samples.
"""

import logging
import queue
import threading
import time
from dataclasses import dataclass, field

from .. import ppt
from ..catalog import Catalog
from ..errors import SessionStateError

log = logging.getLogger("socketlab.service")

SUBSCRIBER_QUEUE_MAX = 16384


@dataclass
class ServiceConfig:
    catalog: Catalog
    replay: ppt.ForceStream
    rate_hz: float | None = None  # None: pace by file timestamps; 0: unpaced
    rest_scale: float = 1.0
    calibration: ppt.LinearCalibration = ppt.IDENTITY_CALIBRATION

    def __post_init__(self):
        if self.rate_hz is not None and self.rate_hz < 0:
            raise ValueError("rate_hz must be >= 0")
        if self.rest_scale < 0:
            raise ValueError("rest_scale must be >= 0")


class _Subscriber:
    def __init__(self):
        self.queue = queue.Queue(maxsize=SUBSCRIBER_QUEUE_MAX)
        self.overflowed = False


@dataclass
class _ActiveSession:
    session: ppt.PPTSession
    rest_until: float
    stop: threading.Event = field(default_factory=threading.Event)
    worker: threading.Thread | None = None
    replay_done: bool = False


class SessionManager:
    """Single-writer session state with broadcast to stream subscribers."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self._lock = threading.RLock()
        self._subscribers: list[_Subscriber] = []
        self._active: _ActiveSession | None = None
        self._started_count = 0
        self.matrix = ppt.PPTMatrix()

    # -- events ---------------------------------------------------------------

    def subscribe(self) -> _Subscriber:
        sub = _Subscriber()
        with self._lock:
            self._subscribers.append(sub)
        return sub

    def unsubscribe(self, sub: _Subscriber) -> None:
        with self._lock:
            if sub in self._subscribers:
                self._subscribers.remove(sub)

    def _publish(self, event: dict) -> None:
        with self._lock:
            subscribers = list(self._subscribers)
        for sub in subscribers:
            if sub.overflowed:
                continue
            try:
                sub.queue.put_nowait(event)
            except queue.Full:
                sub.overflowed = True
                log.warning("stream subscriber overflowed; client will be disconnected")

    # -- session lifecycle ------------------------------------------------------

    def start_session(self, region: str, material: str, thickness_mm: float,
                      override_rest: bool = False) -> dict:
        with self._lock:
            if self._active is not None and self._active.session.state in ("resting", "ramping"):
                raise SessionStateError("a session is already active")
            region_spec = self.config.catalog.region(region)
            self.config.catalog.material(material)  # existence check
            if thickness_mm <= 0:
                raise ValueError("thickness_mm must be > 0")

            session = ppt.PPTSession(
                region=region,
                material=material,
                thickness_mm=float(thickness_mm),
                probe_area_mm2=region_spec.probe_area_mm2,
                calibration=(self.config.calibration if self.config.replay.kind == "raw"
                             else ppt.IDENTITY_CALIBRATION),
            )
            session = ppt.session_step(session, ppt.StartRest())
            required = ppt.FIRST_REST_S if self._started_count == 0 else ppt.BETWEEN_REST_S
            rest_s = required * self.config.rest_scale
            if override_rest:
                log.info("operator override: skipping %.0f s rest before %s/%s/%.2f",
                         rest_s, region, material, thickness_mm)
                rest_s = 0.0
            self._started_count += 1
            active = _ActiveSession(session=session, rest_until=time.monotonic() + rest_s)
            self._active = active
            self._publish({"event": "state", "state": "resting", "rest_remaining_s": rest_s,
                           "session": self._describe(active.session)})

        worker = threading.Thread(target=self._run_session, args=(active, rest_s), daemon=True)
        active.worker = worker
        worker.start()
        return self.state()

    def _run_session(self, active: _ActiveSession, rest_s: float) -> None:
        if active.stop.wait(timeout=rest_s):
            return  # aborted during rest
        with self._lock:
            if active.session.state != "resting":
                return
            active.session = ppt.session_step(active.session, ppt.RestElapsed())
            active.session = ppt.session_step(active.session, ppt.StartRamp())
        self._publish({"event": "state", "state": "ramping", "session": self._describe(active.session)})

        series = self.config.replay.series
        previous_t = None
        for t_s, value in zip(series.t, series.v):
            if active.stop.is_set():
                return
            if self.config.rate_hz is None:
                delay = 0.0 if previous_t is None else max(0.0, float(t_s) - previous_t)
            elif self.config.rate_hz > 0:
                delay = 1.0 / self.config.rate_hz
            else:
                delay = 0.0
            previous_t = float(t_s)
            if delay and active.stop.wait(timeout=delay):
                return
            # publish inside the lock so the global event order matches the
            # mutation order (a mark posted by the HTTP thread must not
            # overtake the sample it follows)
            with self._lock:
                if active.session.state != "ramping":
                    return
                active.session = ppt.session_step(active.session, ppt.Sample(float(t_s), float(value)))
                session = active.session
                if session.state == "aborted":
                    self._publish({"event": "aborted", "reason": session.abort_reason,
                                   "session": self._describe(session)})
                    return
                self._publish({"event": "sample", "t_s": session.samples[-1][0],
                               "force_n": session.samples[-1][1]})
        active.replay_done = True
        self._publish({"event": "replay_done", "session": self._describe(active.session)})

    def mark(self, at_t_s: float | None = None) -> dict:
        with self._lock:
            if self._active is None:
                raise SessionStateError("no session to mark")
            active = self._active
            active.session = ppt.session_step(active.session, ppt.MarkPain(at_t_s))
            active.stop.set()
            session = active.session
            value = self.matrix.add_session(session)
            t_mark, force = session.samples[session.pain_mark]
            self._publish({"event": "marked", "t_s": t_mark, "force_n": force, "ppt_mpa": value,
                           "session": self._describe(session)})
        return {"t_s": t_mark, "force_n": force, "ppt_mpa": value}

    def abort(self, reason: str = "operator") -> dict:
        with self._lock:
            if self._active is None:
                raise SessionStateError("no session to abort")
            active = self._active
            active.session = ppt.session_step(active.session, ppt.Abort(reason))
            active.stop.set()
            session = active.session
            self._publish({"event": "aborted", "reason": session.abort_reason,
                           "session": self._describe(session)})
        return {"state": session.state, "reason": session.abort_reason}

    # -- views ----------------------------------------------------------------

    @staticmethod
    def _describe(session: ppt.PPTSession) -> dict:
        latest = session.samples[-1] if session.samples else None
        info = {
            "region": session.region,
            "material": session.material,
            "thickness_mm": session.thickness_mm,
            "state": session.state,
            "samples": len(session.samples),
            "latest": None if latest is None else {"t_s": latest[0], "force_n": latest[1]},
            "max_force_limit_n": session.max_force_limit_n,
        }
        if session.pain_mark is not None:
            t_mark, force = session.samples[session.pain_mark]
            info["pain"] = {"t_s": t_mark, "force_n": force,
                            "ppt_mpa": ppt.ppt_value(session)}
        if session.abort_reason is not None:
            info["abort_reason"] = session.abort_reason
        return info

    def state(self) -> dict:
        with self._lock:
            active = self._active
            rest_remaining = 0.0
            session_info = None
            if active is not None:
                session_info = self._describe(active.session)
                if active.session.state == "resting":
                    rest_remaining = max(0.0, active.rest_until - time.monotonic())
                session_info["replay_done"] = active.replay_done
            return {
                "session": session_info,
                "rest_remaining_s": rest_remaining,
                "sessions_started": self._started_count,
                "matrix_entries": len(self.matrix.entries),
                "replay_kind": self.config.replay.kind,
            }

    def matrix_view(self) -> dict:
        entries = [
            {"region": region, "material": material, "thickness_mm": thickness, "ppt_mpa": value}
            for (region, material, thickness), value in sorted(self.matrix.entries.items())
        ]
        return {"entries": entries, "units": {"thickness_mm": "mm", "ppt_mpa": "MPa"}}

    def selection_view(self) -> dict:
        present = set(self.matrix.regions())
        missing = [r for r in ppt.REQUIRED_SELECTION_REGIONS if r not in present]
        if missing:
            return {"complete": False, "missing": missing}
        result = ppt.select_materials(self.matrix, self.config.catalog.materials)
        return {
            "complete": True,
            "per_region": {
                region: {"material": choice.material, "thickness_mm": choice.thickness_mm,
                         "ppt_mpa": choice.ppt_mpa}
                for region, choice in result.per_region.items()
            },
            "rest_of_socket": {"material": result.rest_of_socket[0],
                               "thickness_mm": result.rest_of_socket[1]},
        }
