"""Mock streaming-provider HTTP service.

GET /v1/search?q=<keywords>&limit=<n> -> {"tracks": [...]} with the mock
ranking. Responses are rendered with a fixed key order and separators so
identical requests return byte-identical bodies.
"""

import json

from fastapi import FastAPI, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.requests import Request

from .search import DEFAULT_LIMIT, mock_search


def json_response(payload, status_code=200):
    body = json.dumps(payload, separators=(",", ":"), sort_keys=False)
    return Response(content=body, status_code=status_code,
                    media_type="application/json")


def create_provider_app(catalog):
    app = FastAPI(title="mock music provider")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.get("/v1/health")
    def health():
        return json_response({"status": "ok", "tracks": len(catalog)})

    @app.get("/v1/search")
    def search(request: Request):
        q = request.query_params.get("q")
        if q is None or not q.strip():
            return json_response(
                {"error": "missing required query parameter 'q'"},
                status_code=400,
            )
        raw_limit = request.query_params.get("limit", str(DEFAULT_LIMIT))
        try:
            limit = int(raw_limit)
            if limit < 1:
                raise ValueError
        except ValueError:
            return json_response(
                {"error": f"limit must be a positive integer, got {raw_limit!r}"},
                status_code=400,
            )
        playlist = mock_search(q, catalog, limit=limit)
        return json_response(
            {"tracks": [t.to_dict() for t in playlist.tracks]}
        )

    return app
