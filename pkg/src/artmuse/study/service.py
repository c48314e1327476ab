"""HTTP endpoints for running blind listening sessions.

The session view sent to subjects carries only opaque image and clip ids;
the slot -> condition mapping stays server-side, so a client cannot leak
which arm a clip belongs to. Ratings are posted against the opaque clip id
(or, for programmatic clients, the condition directly) and persist
idempotently by (subject, image, condition).
"""

import hashlib
import json
import mimetypes
import os
from types import SimpleNamespace
from typing import Optional

import numpy as np
from fastapi import FastAPI, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from ..keywords.query import build_query
from ..keywords.tables import default_keyword_table, default_style_map
from ..provider.clip import clip_wav_bytes, pick_clip
from ..provider.search import mock_search
from .mos import mos, study_t_tests, t_tests_to_text
from .ratings import RatingRecord
from .session import build_session, check_plan, image_id_for


class RatingIn(BaseModel):
    subject_id: str
    image_id: str
    rating: int = Field(ge=1, le=5)
    clip_id: Optional[str] = None
    condition: Optional[str] = None


def _stable_seed(*parts):
    digest = hashlib.sha1("|".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "little")


class StudyState:
    """Plans, clip maps and the rating store behind the endpoints."""

    def __init__(self, pool_records, image_root, catalog, store, seed,
                 keyword_table=None, style_map=None, subjects=None):
        self.records_by_id = {}
        for rec in pool_records:
            rid = image_id_for(rec.path)
            if rid in self.records_by_id:
                raise ValueError(f"duplicate pool image id for {rec.path}")
            self.records_by_id[rid] = rec
        self.pool_records = list(pool_records)
        self.image_root = image_root
        self.catalog = catalog
        self.store = store
        self.seed = seed
        self.table = keyword_table or default_keyword_table()
        self.style_map = style_map or default_style_map()
        self.subjects = set(subjects) if subjects is not None else None
        self.plans = {}
        self.clips = {}        # clip_id -> (subject, image_id, condition, Clip)
        self.clips_by_slot = {}  # (subject, image_id, condition) -> clip_id

    def plan_for(self, subject_id):
        if self.subjects is not None and subject_id not in self.subjects:
            return None
        if subject_id not in self.plans:
            plan = check_plan(build_session(
                self.pool_records, subject_id, self.seed
            ))
            self.plans[subject_id] = plan
            self._resolve_clips(plan)
        return self.plans[subject_id]

    def _slot_query(self, record, condition, subject_id):
        valence, arousal = record.quadrant_labels
        analysis = SimpleNamespace(
            media_type=record.media_type, valence=valence, arousal=arousal,
            style=record.style,
        )
        if condition == "matched_emotion_style":
            return build_query(analysis, "matched_emotion_style",
                               self.table, self.style_map)
        if condition == "matched_emotion":
            return build_query(analysis, "matched_emotion", self.table)
        if condition == "matched_extra":
            return build_query(analysis, "matched_emotion", self.table,
                               keyword_index=1)
        rng = np.random.default_rng(_stable_seed(
            self.seed, subject_id, record.path, condition
        ))
        return build_query(analysis, "mismatched_emotion", self.table,
                           rng=rng)

    def _resolve_clips(self, plan):
        for item in plan.items:
            record = self.records_by_id[item.image_id]
            for condition in item.conditions:
                query = self._slot_query(record, condition, plan.subject_id)
                playlist = mock_search(query, self.catalog, limit=1)
                if not playlist.tracks:
                    raise RuntimeError(
                        f"catalog has no track for query "
                        f"{query.keywords!r} (condition {condition})"
                    )
                track = playlist.tracks[0]
                clip = pick_clip(track, seed=_stable_seed(
                    self.seed, plan.subject_id, item.image_id, condition,
                    track.id,
                ))
                clip_id = "clip_" + hashlib.sha1(
                    f"{plan.subject_id}|{item.image_id}|{condition}".encode()
                ).hexdigest()[:16]
                self.clips[clip_id] = (plan.subject_id, item.image_id,
                                       condition, clip)
                self.clips_by_slot[
                    (plan.subject_id, item.image_id, condition)
                ] = clip_id

    def session_view(self, plan):
        items = []
        for item in plan.items:
            clips = []
            for condition in item.conditions:
                clip_id = self.clips_by_slot[
                    (plan.subject_id, item.image_id, condition)
                ]
                stored = self.store.get(plan.subject_id, item.image_id,
                                        condition)
                clips.append({
                    "clip_id": clip_id,
                    "url": f"/v1/clip/{clip_id}",
                    "rating": stored.rating if stored else None,
                })
            items.append({
                "image_id": item.image_id,
                "image_url": f"/v1/image/{item.image_id}",
                "clips": clips,
            })
        rated = len(self.store.for_subject(plan.subject_id))
        return {
            "subject_id": plan.subject_id,
            "items": items,
            "progress": {"rated": rated, "total": plan.n_slots},
        }

    def media_of(self):
        return {rid: rec.media_type
                for rid, rec in self.records_by_id.items()}


def _json(payload, status_code=200):
    return Response(
        content=json.dumps(payload, separators=(",", ":")),
        status_code=status_code, media_type="application/json",
    )


def create_study_app(pool_records, image_root, catalog, store, seed,
                     keyword_table=None, style_map=None, subjects=None):
    state = StudyState(pool_records, image_root, catalog, store, seed,
                       keyword_table, style_map, subjects)
    app = FastAPI(title="listening study")
    # the rating console is served from its own origin during development
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    app.state.study = state

    @app.get("/v1/health")
    def health():
        return _json({"status": "ok", "pool": len(state.pool_records)})

    @app.get("/v1/session/{subject_id}")
    def session(subject_id: str):
        plan = state.plan_for(subject_id)
        if plan is None:
            return _json({"error": f"unknown subject {subject_id!r}"}, 404)
        return _json(state.session_view(plan))

    @app.get("/v1/image/{image_id}")
    def image(image_id: str):
        record = state.records_by_id.get(image_id)
        if record is None:
            return _json({"error": f"unknown image {image_id!r}"}, 404)
        path = os.path.join(state.image_root, record.path)
        media_type = mimetypes.guess_type(path)[0] or "application/octet-stream"
        try:
            with open(path, "rb") as fh:
                return Response(content=fh.read(), media_type=media_type)
        except FileNotFoundError:
            return _json({"error": f"image file missing: {record.path}"}, 404)

    @app.get("/v1/clip/{clip_id}")
    def clip(clip_id: str):
        entry = state.clips.get(clip_id)
        if entry is None:
            return _json({"error": f"unknown clip {clip_id!r}"}, 404)
        _, _, _, clip_obj = entry
        return Response(content=clip_wav_bytes(clip_obj),
                        media_type="audio/wav")

    @app.post("/v1/rating", status_code=201)
    def rate(body: RatingIn):
        plan = state.plans.get(body.subject_id)
        if plan is None:
            return _json(
                {"error": f"unknown subject {body.subject_id!r}: no started "
                          "session; GET /v1/session/<id> first"}, 404
            )
        if (body.clip_id is None) == (body.condition is None):
            return _json(
                {"error": "provide exactly one of clip_id or condition"}, 422
            )
        if body.clip_id is not None:
            entry = state.clips.get(body.clip_id)
            if entry is None or entry[0] != body.subject_id \
                    or entry[1] != body.image_id:
                return _json(
                    {"error": f"clip {body.clip_id!r} does not belong to "
                              f"({body.subject_id}, {body.image_id})"}, 404
                )
            condition = entry[2]
        else:
            condition = body.condition
            valid = any(
                item.image_id == body.image_id and condition in item.conditions
                for item in plan.items
            )
            if not valid:
                return _json(
                    {"error": f"({body.image_id}, {condition}) is not a "
                              "slot in this session"}, 404
                )
        record = state.store.add(RatingRecord(
            subject_id=body.subject_id, image_id=body.image_id,
            condition=condition, rating=body.rating,
        ))
        rated = len(state.store.for_subject(body.subject_id))
        return _json({
            "stored": {
                "subject_id": record.subject_id,
                "image_id": record.image_id,
                "rating": record.rating,
            },
            "progress": {"rated": rated, "total": plan.n_slots},
        }, 201)

    @app.get("/v1/report")
    def report():
        records = state.store.records()
        media = state.media_of()
        payload = {"count": len(records)}
        if records:
            report_obj = mos(records, media)
            payload["mos"] = {
                f"{m}|{c}": round(mean, 6)
                for (m, c), (mean, _) in sorted(report_obj.cells.items())
            }
            tests = study_t_tests(records, media)
            payload["t_tests"] = t_tests_to_text(tests)
        return _json(payload)

    return app
