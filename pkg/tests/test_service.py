import pytest
from fastapi.testclient import TestClient

from stance_net.network import network_from_record
from stance_net.service.app import create_app

from test_pipeline import ARTICLES, GOLD, LEXICON, MESSAGES

ALIASES = ["demonetization"]


@pytest.fixture
def client():
    return TestClient(create_app())


def make_event(client, **overrides):
    payload = {
        "articles": ARTICLES,
        "event_aliases": ALIASES,
        "lexicon": LEXICON.splitlines(),
    }
    payload.update(overrides)
    return client.post("/events", json=payload)


class TestHealth:
    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "ok"
        assert body["version"]


class TestCreateEvent:
    def test_returns_analysis_summary(self, client):
        response = make_event(client)
        assert response.status_code == 201
        body = response.json()
        assert body["event_id"]
        ids = {t["id"] for t in body["targets"]}
        assert {"kp:note ban", "kp:cash cleanup", "kl:ravi sharma"} <= ids
        coverage = body["coverage"]
        assert coverage["pass1"] + coverage["pass2"] + coverage["unresolved"] == pytest.approx(1.0)
        assert body["target_stats"]["candidates"] > 0
        assert body["violations"] == []

    def test_default_lexicon(self, client):
        response = make_event(client, lexicon=None)
        assert response.status_code == 201

    def test_duplicate_article_id(self, client):
        articles = ARTICLES + [{"id": "a1", "text": "again"}]
        response = make_event(client, articles=articles)
        assert response.status_code == 422
        assert "duplicate article id" in response.json()["detail"]

    def test_empty_articles_rejected(self, client):
        assert make_event(client, articles=[]).status_code == 422

    def test_unusable_corpus(self, client):
        articles = [{"id": "a1", "text": "of the and or but"}]
        response = make_event(client, articles=articles)
        assert response.status_code == 422
        assert "no candidate phrases" in response.json()["detail"]

    def test_blank_aliases_rejected(self, client):
        response = make_event(client, event_aliases=["  "])
        assert response.status_code == 422

    def test_bad_lexicon_line(self, client):
        response = make_event(client, lexicon=["good\tthree"])
        assert response.status_code == 422
        assert "line 1" in response.json()["detail"]

    def test_events_are_isolated(self, client):
        first = make_event(client).json()["event_id"]
        second = make_event(client).json()["event_id"]
        assert first != second
        assert client.get(f"/events/{first}/coverage").status_code == 200
        assert client.get(f"/events/{second}/coverage").status_code == 200


class TestEventResources:
    def test_unknown_event_is_404(self, client):
        for path in ("targets", "network", "coverage"):
            assert client.get(f"/events/missing/{path}").status_code == 404
        response = client.post(
            "/events/missing/classify", json={"messages": MESSAGES}
        )
        assert response.status_code == 404

    def test_network_body_matches_artifact_format(self, client):
        event_id = make_event(client).json()["event_id"]
        body = client.get(f"/events/{event_id}/network").json()
        network, targets, aliases = network_from_record(body)
        assert aliases == ALIASES
        assert set(network.resolved) == {t.id for t in targets.all_targets()}

    def test_targets_match_creation_response(self, client):
        created = make_event(client).json()
        listed = client.get(f"/events/{created['event_id']}/targets").json()
        assert listed == created["targets"]


class TestClassify:
    def test_stances(self, client):
        event_id = make_event(client).json()["event_id"]
        response = client.post(
            f"/events/{event_id}/classify", json={"messages": MESSAGES}
        )
        assert response.status_code == 200
        stances = {s["id"]: s for s in response.json()["stances"]}
        assert len(stances) == len(MESSAGES)
        assert stances["m1"]["stance"] == "Positive"
        assert stances["m2"]["stance"] == "Negative"
        assert stances["m3"]["stance"] == "Neutral"
        assert stances["m3"]["unmatched"] is True
        assert stances["m6"]["stance"] == "Negative"

    def test_sentiment_window(self, client):
        event_id = make_event(client).json()["event_id"]
        message = {"id": "w1", "text": "the note ban is bad but the weather is good"}
        whole = client.post(
            f"/events/{event_id}/classify", json={"messages": [message]}
        ).json()["stances"][0]
        windowed = client.post(
            f"/events/{event_id}/classify",
            json={"messages": [message], "sentiment_window": 2},
        ).json()["stances"][0]
        assert whole["stance"] == "Neutral"
        assert windowed["stance"] == "Negative"

    def test_duplicate_message_id(self, client):
        event_id = make_event(client).json()["event_id"]
        response = client.post(
            f"/events/{event_id}/classify",
            json={"messages": [MESSAGES[0], MESSAGES[0]]},
        )
        assert response.status_code == 422

    def test_window_must_be_positive(self, client):
        event_id = make_event(client).json()["event_id"]
        response = client.post(
            f"/events/{event_id}/classify",
            json={"messages": MESSAGES, "sentiment_window": 0},
        )
        assert response.status_code == 422


class TestEvaluate:
    def predictions(self, client):
        event_id = make_event(client).json()["event_id"]
        stances = client.post(
            f"/events/{event_id}/classify", json={"messages": MESSAGES}
        ).json()["stances"]
        return [{"id": s["id"], "stance": s["stance"]} for s in stances]

    def test_perfect_run(self, client):
        body = {"predictions": self.predictions(client), "gold": GOLD}
        response = client.post("/evaluate", json=body)
        assert response.status_code == 200
        report = response.json()
        assert report["accuracy"] == 1.0
        assert report["f1_average"] == 1.0
        assert report["neutral_policy"] == "CountWrong"

    def test_missing_prediction(self, client):
        response = client.post(
            "/evaluate",
            json={"predictions": [], "gold": [{"id": "m1", "stance": "Positive"}]},
        )
        assert response.status_code == 422
        assert "missing predictions" in response.json()["detail"]

    def test_neutral_gold_rejected(self, client):
        response = client.post(
            "/evaluate",
            json={
                "predictions": [{"id": "m1", "stance": "Neutral"}],
                "gold": [{"id": "m1", "stance": "Neutral"}],
            },
        )
        assert response.status_code == 422

    def test_duplicate_gold_rejected(self, client):
        gold = [
            {"id": "m1", "stance": "Positive"},
            {"id": "m1", "stance": "Negative"},
        ]
        response = client.post(
            "/evaluate",
            json={"predictions": [{"id": "m1", "stance": "Positive"}], "gold": gold},
        )
        assert response.status_code == 422

    def test_exclude_policy(self, client):
        body = {
            "predictions": [
                {"id": "m1", "stance": "Neutral"},
                {"id": "m2", "stance": "Negative"},
            ],
            "gold": [
                {"id": "m1", "stance": "Positive"},
                {"id": "m2", "stance": "Negative"},
            ],
            "neutral_policy": "Exclude",
        }
        report = client.post("/evaluate", json=body).json()
        assert report["excluded"] == 1
        assert report["evaluated"] == 1
        assert report["accuracy"] == 1.0

    def test_bad_policy(self, client):
        body = {
            "predictions": [{"id": "m1", "stance": "Positive"}],
            "gold": [{"id": "m1", "stance": "Positive"}],
            "neutral_policy": "Sometimes",
        }
        assert client.post("/evaluate", json=body).status_code == 422
