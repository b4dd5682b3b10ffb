import concurrent.futures
import collections

import pytest
from fastapi.testclient import TestClient

from gunpulse.aggregate import build_snapshot
from gunpulse.geo import assign_state
from gunpulse.ingest import CorpusWindow
from gunpulse.scoring import SentimentCounts, score_all_states
from gunpulse.service import create_app

from tests.conftest import WINDOW, day


@pytest.fixture(scope="module")
def snapshot(small_corpus, state_fixture):
    polygons, pop = state_fixture
    records = [(tw, label, assign_state(tw, polygons)) for tw, label in small_corpus]
    return build_snapshot(records, pop, WINDOW, classifier_id="oracle")


@pytest.fixture(scope="module")
def client(snapshot):
    return TestClient(create_app(snapshot), raise_server_exceptions=False)


class TestMeta:
    def test_meta_shape(self, client, snapshot):
        doc = client.get("/api/meta").json()
        assert doc["window"]["start"] == WINDOW.start
        assert doc["window"]["start_date"] == "2012-12-07"
        assert doc["classifier_id"] == "oracle"
        assert len(doc["states"]) == 50
        assert {"code", "population", "gun_ownership_pct"} <= set(doc["states"][0])


class TestSeries:
    def test_national_daily(self, client):
        rows = client.get("/api/series", params={"granularity": "day", "state": "US"}).json()
        assert rows
        assert {"bucket_start", "pro", "anti", "neutral"} == set(rows[0])
        assert rows == sorted(rows, key=lambda r: r["bucket_start"])

    def test_invalid_granularity(self, client):
        r = client.get("/api/series", params={"granularity": "week"})
        assert r.status_code == 400
        assert r.json()["code"] == "invalid_granularity"

    def test_unknown_state_404(self, client):
        r = client.get("/api/series", params={"granularity": "day", "state": "ZZ"})
        assert r.status_code == 404

    def test_date_range_filter(self, client):
        rows = client.get(
            "/api/series",
            params={"granularity": "day", "state": "US", "from": "2012-12-14", "to": "2012-12-14"},
        ).json()
        assert len(rows) == 1
        assert rows[0]["bucket_start"] == "2012-12-14T00:00:00Z"

    def test_reversed_range_rejected(self, client):
        r = client.get(
            "/api/series",
            params={"granularity": "day", "from": "2012-12-15", "to": "2012-12-14"},
        )
        assert r.status_code == 400
        assert r.json()["code"] == "invalid_range"

    def test_hourly_within_day(self, client):
        rows = client.get(
            "/api/series",
            params={"granularity": "hour", "state": "US", "from": "2012-12-14", "to": "2012-12-14"},
        ).json()
        assert 1 <= len(rows) <= 24


class TestMap:
    def test_default_full_window_pgpss3(self, client, snapshot):
        rows = client.get("/api/map").json()
        counts = snapshot.daily_state_counts(WINDOW.start, WINDOW.end)
        oracle = score_all_states(counts, WINDOW, snapshot.population_table()).by_state()
        assert {r["state"] for r in rows} == set(oracle)
        for r in rows:
            assert r["raw"] == oracle[r["state"]].raw3
            assert r["norm"] == oracle[r["state"]].norm3

    def test_subwindow_equals_scoring_module(self, client, snapshot):
        start, end = day("2012-12-13"), day("2012-12-15") + 86_399
        for variant in (1, 2, 3):
            rows = client.get(
                "/api/map",
                params={"score": f"pgpss{variant}", "from": "2012-12-13", "to": "2012-12-15"},
            ).json()
            counts = snapshot.daily_state_counts(start, end)
            oracle = score_all_states(counts, CorpusWindow(start, end), snapshot.population_table())
            want = {
                s.state_code: (getattr(s, f"raw{variant}"), getattr(s, f"norm{variant}"))
                for s in oracle.states
            }
            got = {r["state"]: (r["raw"], r["norm"]) for r in rows}
            assert got == want

    def test_invalid_score(self, client):
        r = client.get("/api/map", params={"score": "pgpss9"})
        assert r.status_code == 400
        assert r.json()["code"] == "invalid_score"

    def test_empty_range(self, client):
        rows = client.get("/api/map", params={"from": "2020-01-01", "to": "2020-01-02"}).json()
        assert rows == []


class TestTagsAndBubble:
    def test_tags(self, client, snapshot):
        rows = client.get("/api/tags", params={"kind": "hashtag", "n": 20}).json()
        assert rows == [{"tag": t.tag, "count": t.count} for t in snapshot.top_hashtags[:20]]

    def test_tags_invalid_kind(self, client):
        assert client.get("/api/tags", params={"kind": "emoji"}).status_code == 400

    def test_tags_bad_n(self, client):
        assert client.get("/api/tags", params={"kind": "hashtag", "n": "x"}).status_code == 400
        assert client.get("/api/tags", params={"kind": "hashtag", "n": 0}).status_code == 400

    def test_bubble_six_variables(self, client, snapshot):
        rows = client.get("/api/bubble", params={"date": "2012-12-14"}).json()
        assert rows
        day_start = day("2012-12-14")
        counts = snapshot.daily_state_counts(day_start, day_start + 86_399)
        daily = {res.window.start: res for res in snapshot.pgpss_daily}[day_start].by_state()
        for r in rows:
            assert set(r) == {
                "state", "neutral_count", "pgpss3_norm", "population",
                "gun_ownership_pct", "pro_count", "total",
            }
            c = counts[r["state"]]
            assert r["neutral_count"] == c.neutral
            assert r["pro_count"] == c.pro
            assert r["total"] == c.total
            assert r["pgpss3_norm"] == daily[r["state"]].norm3
            assert r["population"] == snapshot.states[r["state"]]["population"]

    def test_bubble_missing_date(self, client):
        assert client.get("/api/bubble").status_code == 400

    def test_bubble_empty_day(self, client):
        assert client.get("/api/bubble", params={"date": "2020-06-01"}).json() == []

    def test_bad_date_format(self, client):
        r = client.get("/api/bubble", params={"date": "12/14/2012"})
        assert r.status_code == 400
        assert r.json()["code"] == "invalid_date"


class TestStatelessness:
    def test_unknown_endpoint_404_body(self, client):
        r = client.get("/api/nothing")
        assert r.status_code == 404
        assert r.json() == {"status": 404, "code": "not_found", "message": "unknown endpoint"}

    def test_identical_requests_identical_bodies(self, client):
        url = "/api/map?score=pgpss2&from=2012-12-10&to=2012-12-20"
        first = client.get(url).content
        with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
            bodies = list(pool.map(lambda _: client.get(url).content, range(32)))
        assert all(b == first for b in bodies)

    def test_interleaved_requests_do_not_interact(self, client):
        series_before = client.get("/api/series?granularity=day&state=US").content
        client.get("/api/map")
        client.get("/api/bubble?date=2012-12-14")
        assert client.get("/api/series?granularity=day&state=US").content == series_before
