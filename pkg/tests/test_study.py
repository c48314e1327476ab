import math

import numpy as np
import pytest
from fastapi.testclient import TestClient
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as scipy_stats

from artmuse.data import ImageRecord, load_manifest
from artmuse.provider import load_catalog
from artmuse.study import (
    PoolError,
    RatingRecord,
    RatingStore,
    accuracy,
    build_session,
    check_plan,
    create_study_app,
    export_records,
    image_id_for,
    import_records,
    mos,
    paired_t_test,
    study_t_tests,
)


class TestAccuracy:
    def test_all_correct(self):
        matrix, acc = accuracy(["a", "b", "a"], ["a", "b", "a"])
        assert acc == 1.0
        assert np.trace(matrix.counts) == 3

    def test_two_thirds(self):
        _, acc = accuracy([1, 0, 1], [1, 1, 1])
        assert acc == pytest.approx(2 / 3)

    def test_permutation_invariant(self):
        pairs = [("a", "a"), ("a", "b"), ("b", "b"), ("b", "a"), ("a", "a")]
        m1, _ = accuracy([p for p, _ in pairs], [t for _, t in pairs])
        rev = list(reversed(pairs))
        m2, _ = accuracy([p for p, _ in rev], [t for _, t in rev])
        np.testing.assert_array_equal(m1.counts, m2.counts)

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            accuracy([], [])

    def test_counts_land_in_true_row(self):
        matrix, _ = accuracy(["b"], ["a"], classes=["a", "b"])
        assert matrix.counts[0, 1] == 1


class TestPairedT:
    def test_identical_inputs_null(self):
        result = paired_t_test([3.0, 4.0, 2.0], [3.0, 4.0, 2.0])
        assert result.t == 0.0 and result.p == 1.0 and not result.reject

    def test_constant_shift_degenerate(self):
        result = paired_t_test([3.0, 4.0, 5.0], [2.0, 3.0, 4.0])
        assert result.degenerate
        assert math.isinf(result.t) and result.t > 0
        assert result.p == 0.0 and result.reject

    def test_hand_oracle_instance(self):
        a = [2.0, 2.5, 3.0, 3.5]
        b = [1.5, 2.6, 2.4, 3.0]
        # direct formula, written out independently of the implementation
        d = np.array(a) - np.array(b)
        t_expected = d.mean() / (d.std(ddof=1) / math.sqrt(len(d)))
        result = paired_t_test(a, b)
        assert abs(result.t - t_expected) <= 1e-9
        ref = scipy_stats.ttest_rel(a, b)
        assert abs(result.t - ref.statistic) <= 1e-9
        assert abs(result.p - ref.pvalue) <= 1e-9
        assert result.df == 3

    def test_twenty_random_instances_match_oracle(self):
        rng = np.random.default_rng(2024)
        checked = 0
        while checked < 20:
            n = int(rng.integers(2, 101))
            a = rng.integers(1, 6, size=n).astype(float)
            b = rng.integers(1, 6, size=n).astype(float)
            if np.std(a - b, ddof=1) == 0:
                continue
            result = paired_t_test(a, b)
            ref = scipy_stats.ttest_rel(a, b)
            assert abs(result.t - ref.statistic) <= 1e-9
            assert abs(result.p - ref.pvalue) <= 1e-9
            checked += 1

    def test_table_v_consistency(self):
        # 74 subjects whose per-subject mean differences have mean 0.30 and
        # sample sd 0.388 reproduce the published t(73) = 6.65
        rng = np.random.default_rng(5)
        d = rng.normal(size=74)
        d = (d - d.mean()) / d.std(ddof=1)  # exact zero mean, unit sd
        d = 0.30 + 0.388 * d
        result = paired_t_test(d, np.zeros(74))
        assert result.df == 73
        assert result.t == pytest.approx(6.65, abs=0.01)
        assert result.p < 0.001
        assert result.reject

    @settings(max_examples=30)
    @given(st.lists(st.floats(1.0, 5.0), min_size=2, max_size=20),
           st.integers(0, 10 ** 6))
    def test_antisymmetry(self, a, seed):
        rng = np.random.default_rng(seed)
        b = rng.uniform(1.0, 5.0, size=len(a)).tolist()
        fwd = paired_t_test(a, b)
        rev = paired_t_test(b, a)
        if fwd.degenerate:
            assert rev.degenerate
        else:
            assert fwd.t == pytest.approx(-rev.t, abs=1e-12)
            assert fwd.p == pytest.approx(rev.p, abs=1e-12)

    def test_too_short_rejected(self):
        with pytest.raises(ValueError, match="at least 2"):
            paired_t_test([1.0], [2.0])


def make_pool(per_cell=4):
    records = []
    i = 0
    for valence in ("positive", "negative"):
        for arousal in ("high", "low"):
            for media in ("artwork", "photograph"):
                for _ in range(per_cell):
                    records.append(ImageRecord(
                        path=f"{media}-{valence}-{arousal}-{i}.png",
                        media_type=media, valence=valence, arousal=arousal,
                        style="Baroque" if media == "artwork" else None,
                    ))
                    i += 1
    return records


class TestSessionPlan:
    def test_balance_and_slot_count(self):
        plan = check_plan(build_session(make_pool(), "s1", seed=0))
        assert len(plan.items) == 16
        assert plan.n_slots == 48

    def test_different_seeds_change_order_not_balance(self):
        a = build_session(make_pool(), "s1", seed=0)
        b = build_session(make_pool(), "s1", seed=1)
        check_plan(a), check_plan(b)
        assert [i.image_id for i in a.items] != [i.image_id for i in b.items]

    def test_subjects_get_distinct_orders(self):
        a = build_session(make_pool(), "s1", seed=0)
        b = build_session(make_pool(), "s2", seed=0)
        assert [i.image_id for i in a.items] != [i.image_id for i in b.items]

    def test_deterministic_for_subject_and_seed(self):
        a = build_session(make_pool(), "s1", seed=0)
        b = build_session(make_pool(), "s1", seed=0)
        assert a == b

    def test_deficient_cell_reported(self):
        pool = make_pool()
        removed = [r for r in pool
                   if not (r.media_type == "artwork"
                           and r.valence == "positive"
                           and r.arousal == "high")]
        # one cell down to 3 candidates
        removed.append(next(
            r for r in pool if r.media_type == "artwork"
            and r.valence == "positive" and r.arousal == "high"
        ))
        removed.append(next(
            r for r in pool if r.media_type == "artwork"
            and r.valence == "positive" and r.arousal == "high"
        ))
        dedup = {r.path: r for r in removed}
        with pytest.raises(PoolError, match=r"\(artwork, \+V\+A\)"):
            build_session(list(dedup.values()), "s1", seed=0)

    def test_photo_conditions_swap_style_for_extra(self):
        plan = build_session(make_pool(), "s1", seed=3)
        for item in plan.items:
            if item.media_type == "photograph":
                assert set(item.conditions) == {
                    "matched_extra", "matched_emotion", "mismatched_emotion"
                }
            else:
                assert set(item.conditions) == {
                    "matched_emotion_style", "matched_emotion",
                    "mismatched_emotion"
                }

    def test_74_subjects_yield_3552_slots(self):
        pool = make_pool()
        total = sum(
            build_session(pool, f"subject-{i}", seed=0).n_slots
            for i in range(74)
        )
        assert total == 74 * 48 == 3552


class TestRatingStore:
    def test_idempotent_by_slot(self, tmp_path):
        store = RatingStore(path=str(tmp_path / "r.jsonl"))
        r1 = RatingRecord("s1", "img1", "matched_emotion", 4, timestamp=1.0)
        r2 = RatingRecord("s1", "img1", "matched_emotion", 5, timestamp=2.0)
        store.add(r1)
        store.add(r2)
        assert len(store) == 1
        assert store.get("s1", "img1", "matched_emotion").rating == 5
        # the file keeps both lines, append-only
        lines = (tmp_path / "r.jsonl").read_text().strip().splitlines()
        assert len(lines) == 2

    def test_replay_converges(self, tmp_path):
        path = str(tmp_path / "r.jsonl")
        store = RatingStore(path=path)
        store.add(RatingRecord("s1", "img1", "matched_emotion", 2,
                               timestamp=1.0))
        store.add(RatingRecord("s1", "img2", "mismatched_emotion", 3,
                               timestamp=2.0))
        store.add(RatingRecord("s1", "img1", "matched_emotion", 4,
                               timestamp=3.0))
        replayed = RatingStore(path=path)
        assert len(replayed) == 2
        assert replayed.get("s1", "img1", "matched_emotion").rating == 4

    def test_rating_scale_enforced(self):
        with pytest.raises(ValueError, match="1..5"):
            RatingRecord("s", "i", "matched_emotion", 6)
        with pytest.raises(ValueError, match="1..5"):
            RatingRecord("s", "i", "matched_emotion", 0)

    def test_export_import_same_mos(self, tmp_path):
        records = [
            RatingRecord("s1", "a", "matched_emotion", 4, timestamp=1.0),
            RatingRecord("s1", "b", "mismatched_emotion", 2, timestamp=1.0),
            RatingRecord("s2", "a", "matched_emotion", 5, timestamp=1.0),
        ]
        media = {"a": "artwork", "b": "photograph"}
        path = str(tmp_path / "out.jsonl")
        export_records(records, path)
        again = import_records(path)
        assert mos(records, media).cells == mos(again, media).cells


class TestMos:
    MEDIA = {"a1": "artwork", "a2": "artwork", "p1": "photograph"}

    def test_cell_means(self):
        records = [
            RatingRecord("s1", "a1", "matched_emotion_style", 4, 1.0),
            RatingRecord("s2", "a1", "matched_emotion_style", 4, 1.0),
            RatingRecord("s3", "a1", "matched_emotion_style", 3, 1.0),
        ]
        report = mos(records, self.MEDIA)
        assert report.mean("artwork", "matched_emotion_style") == \
            pytest.approx(11 / 3)

    def test_single_rating_cell(self):
        records = [RatingRecord("s1", "p1", "matched_emotion", 5, 1.0)]
        report = mos(records, self.MEDIA)
        assert report.mean("photograph", "matched_emotion") == 5.0

    def test_empty_cells_absent_not_zero(self):
        records = [RatingRecord("s1", "a1", "matched_emotion", 4, 1.0)]
        report = mos(records, self.MEDIA)
        assert report.mean("artwork", "baseline") is None
        assert ("photograph", "matched_emotion") not in report.cells

    def test_matched_extra_pools_into_existing_column(self):
        records = [
            RatingRecord("s1", "p1", "matched_emotion", 4, 1.0),
            RatingRecord("s1", "p1", "matched_extra", 2, 1.0),
        ]
        report = mos(records, self.MEDIA)
        assert report.mean("photograph", "matched_emotion") == 3.0

    def test_permutation_invariance(self):
        records = [
            RatingRecord("s1", "a1", "matched_emotion", 4, 1.0),
            RatingRecord("s1", "a2", "matched_emotion", 2, 1.0),
            RatingRecord("s2", "a1", "mismatched_emotion", 1, 1.0),
        ]
        fwd = mos(records, self.MEDIA)
        rev = mos(list(reversed(records)), self.MEDIA)
        assert fwd.cells == rev.cells

    def test_csv_has_three_columns(self):
        records = [RatingRecord("s1", "a1", "matched_emotion", 4, 1.0)]
        header = mos(records, self.MEDIA).to_csv().splitlines()[0]
        assert header == \
            "media_type,baseline,matched_emotion,matched_emotion_style"

    def test_study_t_tests_shape(self):
        rng = np.random.default_rng(0)
        records = []
        for s in range(6):
            for img, media in self.MEDIA.items():
                for condition in ("matched_emotion", "mismatched_emotion",
                                  "matched_emotion_style"):
                    if media == "photograph" and condition == \
                            "matched_emotion_style":
                        condition = "matched_extra"
                    records.append(RatingRecord(
                        f"s{s}", img, condition,
                        int(rng.integers(1, 6)), 1.0,
                    ))
        results = study_t_tests(records, self.MEDIA)
        assert ("artwork", "B_vs_C") in results
        assert ("artwork", "A_vs_B") in results
        assert ("photograph", "A_vs_B") in results


@pytest.fixture()
def study_client(bundle):
    manifest = load_manifest(f"{bundle.pool_dir}/manifest.tsv")
    catalog = load_catalog(bundle.catalog_path)
    store = RatingStore()
    app = create_study_app(manifest.records, bundle.pool_dir, catalog,
                           store, seed=1)
    return TestClient(app), store


class TestStudyService:
    def rate_all(self, client, subject):
        view = client.get(f"/v1/session/{subject}").json()
        n = 0
        for item in view["items"]:
            for clip in item["clips"]:
                resp = client.post("/v1/rating", json={
                    "subject_id": subject, "image_id": item["image_id"],
                    "clip_id": clip["clip_id"], "rating": (n % 5) + 1,
                })
                assert resp.status_code == 201, resp.text
                n += 1
        return view, n

    def test_blind_view_has_no_condition_labels(self, study_client):
        client, _ = study_client
        view = client.get("/v1/session/s-blind").json()
        assert len(view["items"]) == 16
        text = str(view)
        for label in ("matched_emotion_style", "matched_extra",
                      "mismatched_emotion", "matched_emotion", "condition"):
            assert label not in text

    def test_full_session_stores_48(self, study_client):
        client, store = study_client
        _, n = self.rate_all(client, "s-full")
        assert n == 48
        assert len(store.for_subject("s-full")) == 48
        report = client.get("/v1/report").json()
        assert report["count"] == 48

    def test_repost_overwrites_not_duplicates(self, study_client):
        client, store = study_client
        view, _ = self.rate_all(client, "s-again")
        item = view["items"][0]
        resp = client.post("/v1/rating", json={
            "subject_id": "s-again", "image_id": item["image_id"],
            "clip_id": item["clips"][0]["clip_id"], "rating": 5,
        })
        assert resp.status_code == 201
        assert len(store.for_subject("s-again")) == 48

    def test_out_of_scale_rating_422(self, study_client):
        client, _ = study_client
        view = client.get("/v1/session/s-scale").json()
        item = view["items"][0]
        for bad in (0, 6):
            resp = client.post("/v1/rating", json={
                "subject_id": "s-scale", "image_id": item["image_id"],
                "clip_id": item["clips"][0]["clip_id"], "rating": bad,
            })
            assert resp.status_code == 422

    def test_unknown_subject_404(self, study_client):
        client, _ = study_client
        resp = client.post("/v1/rating", json={
            "subject_id": "nobody", "image_id": "x",
            "condition": "matched_emotion", "rating": 3,
        })
        assert resp.status_code == 404

    def test_clip_and_image_bytes_served(self, study_client):
        client, _ = study_client
        view = client.get("/v1/session/s-bytes").json()
        item = view["items"][0]
        img = client.get(item["image_url"])
        assert img.status_code == 200
        assert img.headers["content-type"] == "image/png"
        clip = client.get(item["clips"][0]["url"])
        assert clip.status_code == 200
        assert clip.headers["content-type"] == "audio/wav"
        assert clip.content[:4] == b"RIFF"

    def test_session_view_stable_across_fetches(self, study_client):
        client, _ = study_client
        a = client.get("/v1/session/s-stable").content
        b = client.get("/v1/session/s-stable").content
        assert a == b

    def test_ratings_echoed_after_reload(self, study_client):
        client, _ = study_client
        view = client.get("/v1/session/s-echo").json()
        item = view["items"][2]
        client.post("/v1/rating", json={
            "subject_id": "s-echo", "image_id": item["image_id"],
            "clip_id": item["clips"][1]["clip_id"], "rating": 4,
        })
        again = client.get("/v1/session/s-echo").json()
        assert again["items"][2]["clips"][1]["rating"] == 4
        assert again["progress"]["rated"] == 1


def test_image_id_stable():
    assert image_id_for("a/b.png") == image_id_for("a/b.png")
    assert image_id_for("a/b.png") != image_id_for("a/c.png")
