import json

import pytest
from fastapi.testclient import TestClient

from artmuse.provider import (
    CatalogError,
    Playlist,
    Track,
    clip_wav_bytes,
    create_provider_app,
    load_catalog,
    mock_search,
    pick_clip,
    save_catalog,
)


def track(id, tags, duration=120.0):
    return Track(id=id, title=id.title(), artist="Tester",
                 tags=frozenset(tags), duration_s=duration)


CATALOG = [
    track("x-both", {"happy", "classical"}),
    track("y-happy", {"happy"}),
    track("z-classical", {"classical", "baroque"}),
    track("w-sad", {"sad"}),
]


class TestMockSearch:
    def test_two_tag_match_outranks_one(self):
        playlist = mock_search("happy classical", CATALOG, limit=10)
        assert [t.id for t in playlist.tracks][:2] == ["x-both", "y-happy"]

    def test_zero_score_never_returned(self):
        playlist = mock_search("happy classical", CATALOG, limit=10)
        assert "w-sad" not in [t.id for t in playlist.tracks]

    def test_equal_scores_order_by_id(self):
        playlist = mock_search("happy classical", CATALOG, limit=10)
        singles = [t.id for t in playlist.tracks][1:]
        assert singles == sorted(singles)

    def test_empty_catalog_empty_playlist(self):
        assert len(mock_search("happy", [], limit=5)) == 0

    def test_limit_one_best_match(self):
        playlist = mock_search("happy classical", CATALOG, limit=1)
        assert [t.id for t in playlist.tracks] == ["x-both"]

    def test_pure_function_of_inputs(self):
        a = mock_search("happy classical", CATALOG, limit=3)
        b = mock_search("happy classical", CATALOG, limit=3)
        assert [t.id for t in a.tracks] == [t.id for t in b.tracks]

    def test_limit_validated(self):
        with pytest.raises(ValueError, match="limit"):
            mock_search("happy", CATALOG, limit=0)

    def test_playlist_rejects_duplicates(self):
        with pytest.raises(ValueError, match="duplicate"):
            Playlist(tracks=[CATALOG[0], CATALOG[0]])


class TestCatalogIO:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "catalog.json"
        save_catalog(CATALOG, path)
        loaded = load_catalog(path)
        assert [t.id for t in loaded] == [t.id for t in CATALOG]
        assert loaded[0].tags == CATALOG[0].tags

    def test_malformed_json_reports_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('[{"id": "a", "duration_s": 60},\n  broken]')
        with pytest.raises(CatalogError, match="line 2"):
            load_catalog(path)

    def test_duplicate_ids_rejected(self, tmp_path):
        path = tmp_path / "dups.json"
        path.write_text(json.dumps([
            {"id": "a", "duration_s": 60}, {"id": "a", "duration_s": 90},
        ]))
        with pytest.raises(CatalogError, match="duplicate"):
            load_catalog(path)

    def test_nonpositive_duration_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps([{"id": "a", "duration_s": 0}]))
        with pytest.raises(CatalogError, match="duration"):
            load_catalog(path)

    def test_tags_normalized_lowercase(self, tmp_path):
        path = tmp_path / "tags.json"
        path.write_text(json.dumps(
            [{"id": "a", "duration_s": 60, "tags": ["HAPPY", "Calm"]}]
        ))
        assert load_catalog(path)[0].tags == {"happy", "calm"}


class TestClips:
    def test_duration_exactly_15_forces_offset_zero(self):
        clip = pick_clip(track("t", set(), duration=15.0), seed=123)
        assert clip.offset_s == 0 and clip.length_s == 15

    def test_duration_16_bounds_offset(self):
        offsets = {pick_clip(track("t", set(), duration=16.0), seed=s).offset_s
                   for s in range(40)}
        assert offsets <= {0, 1}
        assert len(offsets) == 2  # both values actually occur

    def test_fixed_seed_same_offset(self):
        a = pick_clip(track("t", set(), duration=300.0), seed=9)
        b = pick_clip(track("t", set(), duration=300.0), seed=9)
        assert a.offset_s == b.offset_s

    def test_short_track_rejected(self):
        with pytest.raises(ValueError, match="15"):
            pick_clip(track("t", set(), duration=10.0), seed=0)

    def test_wav_bytes_valid_and_deterministic(self):
        clip = pick_clip(track("t", set(), duration=60.0), seed=3)
        a = clip_wav_bytes(clip)
        b = clip_wav_bytes(clip)
        assert a == b
        assert a[:4] == b"RIFF" and a[8:12] == b"WAVE"
        # 15 s at 8 kHz, 16-bit mono plus the 44-byte header
        assert len(a) == 15 * 8000 * 2 + 44


class TestProviderService:
    @pytest.fixture()
    def client(self):
        return TestClient(create_provider_app(CATALOG))

    def test_search_endpoint_ranks(self, client):
        resp = client.get("/v1/search", params={"q": "happy classical"})
        assert resp.status_code == 200
        ids = [t["id"] for t in resp.json()["tracks"]]
        assert ids[0] == "x-both"

    def test_missing_q_is_400(self, client):
        assert client.get("/v1/search").status_code == 400

    def test_bad_limit_is_400(self, client):
        resp = client.get("/v1/search", params={"q": "happy", "limit": "-2"})
        assert resp.status_code == 400

    def test_limit_truncates(self, client):
        resp = client.get("/v1/search", params={"q": "happy classical",
                                                "limit": 1})
        assert len(resp.json()["tracks"]) == 1

    def test_byte_identical_responses(self, client):
        a = client.get("/v1/search", params={"q": "happy classical"})
        b = client.get("/v1/search", params={"q": "happy classical"})
        assert a.content == b.content

    def test_no_results_is_200_empty(self, client):
        resp = client.get("/v1/search", params={"q": "zydeco"})
        assert resp.status_code == 200
        assert resp.json() == {"tracks": []}
