mod common;

use acgt_core::content::seed;
use acgt_service::Store;
use axum::http::StatusCode;
use common::*;
use serde_json::json;

const MOD: Option<&str> = Some("moderator:m1");

#[tokio::test]
async fn verify_endpoint_reports_seventeen_passes() {
    let (_d, state) = fresh();
    let r = call(&state, "GET", "/compute/verify-a136328?max_n=17", Some("student:s1"), None).await;
    assert_eq!(r.status, StatusCode::OK);
    let v = r.json();
    assert_eq!(v["passed"], 17);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["report"]["rows"].as_array().unwrap().len(), 17);
    let r = call(&state, "GET", "/compute/verify-a136328?max_n=18", Some("student:s1"), None).await;
    assert_eq!(r.status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn student_review_is_forbidden() {
    let (_d, state) = fresh();
    let r = call(&state, "POST", "/submissions/1/review", Some("student:s1"), Some(json!({"action": "start"}))).await;
    assert_eq!(r.status, StatusCode::FORBIDDEN);
    assert_eq!(r.reason(), "forbidden-role");
}

#[tokio::test]
async fn approving_a_submitted_item_conflicts() {
    let (_d, state) = fresh();
    let r = call(&state, "POST", "/submissions/1/review", MOD, Some(json!({"action": "approve"}))).await;
    assert_eq!(r.status, StatusCode::CONFLICT);
    assert_eq!(r.reason(), "illegal-transition");
}

#[tokio::test]
async fn missing_token_is_unauthenticated() {
    let (_d, state) = fresh();
    assert_eq!(call(&state, "GET", "/health", None, None).await.status, StatusCode::OK);
    let r = call(&state, "GET", "/pages", None, None).await;
    assert_eq!(r.status, StatusCode::UNAUTHORIZED);
    assert_eq!(r.reason(), "unauthenticated");
    let r = call(&state, "GET", "/pages", Some("student:s9:ALG"), None).await;
    assert_eq!(r.status, StatusCode::FORBIDDEN);
    assert_eq!(r.reason(), "not-enrolled");
}

#[tokio::test]
async fn compute_endpoints_are_byte_stable() {
    let (_d, state) = fresh();
    for uri in [
        "/compute/generate?family=wheel&params=5",
        "/compute/wiener?family=petersen",
        "/compute/wiener?family=odd&params=4",
        "/compute/verify-a136328?max_n=9",
    ] {
        let a = call(&state, "GET", uri, Some("student:s1"), None).await;
        let b = call(&state, "GET", uri, Some("admin:root"), None).await;
        assert_eq!(a.status, StatusCode::OK, "{uri}");
        assert_eq!(a.bytes, b.bytes, "{uri}");
    }
    let g = call(&state, "GET", "/compute/generate?family=wheel&params=5", Some("student:s1"), None).await;
    assert!(g.json()["edge_list"].as_str().unwrap().starts_with("5 8\n"));
    let w = call(&state, "GET", "/compute/wiener?family=petersen", Some("student:s1"), None).await;
    assert_eq!(w.json()["wiener"], "75");
    assert_eq!(w.json()["hosoya_wiener"], "15 t + 30 t^2");
    let big = call(&state, "GET", "/compute/wiener?family=hypercube&params=12", Some("student:s1"), None).await;
    assert_eq!((big.status, big.reason().as_str()), (StatusCode::BAD_REQUEST, "size-limit"));
    let bad = call(&state, "GET", "/compute/generate?family=nope&params=1", Some("student:s1"), None).await;
    assert_eq!((bad.status, bad.reason().as_str()), (StatusCode::BAD_REQUEST, "invalid-family"));
}

#[tokio::test]
async fn content_routes() {
    let (_d, state) = fresh();
    let s = Some("student:s1");
    let pages = call(&state, "GET", "/pages", s, None).await.json();
    assert_eq!(pages.as_array().unwrap().len(), seed::pages().len());
    let page = call(&state, "GET", "/pages/ACGT-000003", s, None).await;
    assert_eq!(page.json()["title"], "Wiener index of Odd graphs");
    let fielded = call(&state, "GET", "/pages/ACGT-000003?format=fielded", s, None).await;
    assert!(String::from_utf8(fielded.bytes).unwrap().starts_with("%ID ACGT-000003\n"));
    assert_eq!(call(&state, "GET", "/pages/ACGT-000077", s, None).await.status, StatusCode::NOT_FOUND);
    assert_eq!(call(&state, "GET", "/pages/wheel", s, None).await.status, StatusCode::BAD_REQUEST);
    let hits = call(&state, "GET", "/search?q=Wiener", s, None).await.json();
    assert_eq!(hits[0]["id"], "ACGT-000003");
    let links = call(&state, "GET", "/terms/recurrence%20relations/backlinks", s, None).await.json();
    assert_eq!(links["pages"], json!(["ACGT-000004", "ACGT-000005"]));
    let unused = call(&state, "GET", "/terms/Pascal%27s%20triangle/backlinks", s, None).await.json();
    assert_eq!(unused["pages"], json!([]));
    let r = call(&state, "GET", "/terms/quantum%20widgets/backlinks", s, None).await;
    assert_eq!((r.status, r.reason().as_str()), (StatusCode::NOT_FOUND, "unknown-term"));
    let rel = call(&state, "GET", "/pages/ACGT-000001/relevance", s, None).await.json();
    let d = rel["decimal"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&d));
}

#[tokio::test]
async fn moderation_round_trip_persists() {
    let (dir, state) = fresh();
    let step = |action: &'static str| json!({ "action": action });
    for a in ["start", "approve"] {
        let r = call(&state, "POST", "/submissions/1/review", MOD, Some(step(a))).await;
        assert_eq!(r.status, StatusCode::OK, "{a}");
    }
    let r = call(&state, "POST", "/submissions/1/publish", MOD, None).await;
    assert_eq!(r.status, StatusCode::OK);
    assert!(r.json()["properties"].as_array().unwrap().iter().any(|p| p["text"] == "Gear graphs are bipartite."));
    let again = call(&state, "POST", "/submissions/1/publish", MOD, None).await;
    assert_eq!(again.status, StatusCode::CONFLICT);

    let log = call(&state, "GET", "/students/s1/log", Some("student:s1"), None).await.json();
    assert_eq!(log["entries"][0]["outcome"], "published");
    assert_eq!(log["entries"][0]["credited_page"], "ACGT-000002");

    // A fresh process sees the same state.
    drop(state);
    let reopened = Store::open(dir.path()).unwrap().load().unwrap();
    assert_eq!(reopened.submissions[&1].state().as_str(), "Published");
    assert!(reopened.pages[&seed::GEAR].properties.iter().any(|p| p.text == "Gear graphs are bipartite."));
    assert_eq!(reopened.students["s1"].log().len(), 1);
}

#[tokio::test]
async fn invalid_payload_never_publishes() {
    let (_d, state) = state_with(&seeded_portal(BROKEN_EDIT));
    for a in ["start", "approve"] {
        call(&state, "POST", "/submissions/1/review", MOD, Some(json!({ "action": a }))).await;
    }
    let before = call(&state, "GET", "/pages/ACGT-000002", MOD, None).await.bytes;
    let r = call(&state, "POST", "/submissions/1/publish", MOD, None).await;
    assert_eq!((r.status, r.reason().as_str()), (StatusCode::BAD_REQUEST, "validation-failed"));
    assert_eq!(call(&state, "GET", "/pages/ACGT-000002", MOD, None).await.bytes, before);
    let sub = call(&state, "GET", "/submissions/1", MOD, None).await.json();
    assert_eq!(sub["state"], "Approved");
    assert_eq!(sub["history"].as_array().unwrap().last().unwrap()["action"], "publish-failed");
}

#[tokio::test]
async fn submit_resubmit_and_filters() {
    let (_d, state) = fresh();
    let body = json!({
        "target": { "kind": "page", "id": "ACGT-000001" },
        "payload": "%REMARK(s2) Every wheel is self-dual.\n",
    });
    let r = call(&state, "POST", "/submissions", Some("student:s2"), Some(body)).await;
    assert_eq!(r.status, StatusCode::CREATED);
    assert_eq!(r.json()["id"], 2);
    let bad = json!({ "target": { "kind": "page", "id": "ACGT-000001" }, "payload": "%ZZ x\n" });
    let r = call(&state, "POST", "/submissions", Some("student:s2"), Some(bad)).await;
    assert_eq!((r.status, r.reason().as_str()), (StatusCode::BAD_REQUEST, "invalid-payload"));
    let r = call(&state, "POST", "/submissions", Some("student:s2"), Some(json!({"nope": 1}))).await;
    assert_eq!((r.status, r.reason().as_str()), (StatusCode::BAD_REQUEST, "invalid-body"));

    let listed = call(&state, "GET", "/submissions?state=submitted", MOD, None).await.json();
    assert_eq!(listed.as_array().unwrap().len(), 2);
    let r = call(&state, "GET", "/submissions?state=bogus", MOD, None).await;
    assert_eq!(r.status, StatusCode::BAD_REQUEST);

    call(&state, "POST", "/submissions/2/review", MOD, Some(json!({"action": "start"}))).await;
    call(&state, "POST", "/submissions/2/review", MOD, Some(json!({"action": "request-changes"}))).await;
    let r = call(&state, "POST", "/submissions/2/resubmit", Some("student:s1"), Some(json!({}))).await;
    assert_eq!(r.status, StatusCode::FORBIDDEN);
    let r = call(&state, "POST", "/submissions/2/resubmit", Some("student:s2"), Some(json!({}))).await;
    assert_eq!(r.status, StatusCode::OK);
    assert_eq!(r.json()["state"], "Submitted");
    assert_eq!(call(&state, "GET", "/submissions/99", MOD, None).await.status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn roster_and_plan() {
    let (_d, state) = fresh();
    let roster = json!({"roster": "s3\tCy\tCGT=F\ns1\tAda\tCGT=F,ALG=E\n"});
    let r = call(&state, "POST", "/roster", Some("admin:root"), Some(roster)).await;
    assert_eq!(r.status, StatusCode::OK);
    // First placement is not a change; s1 dropping from group 1 is.
    assert_eq!(r.json()["changes"], json!([{"student": "s1", "from": 1, "to": 3}]));
    let r = call(&state, "POST", "/roster", Some("admin:root"), Some(json!({"roster": "../x\tEve\tCGT=A\n"}))).await;
    assert_eq!((r.status, r.reason().as_str()), (StatusCode::BAD_REQUEST, "invalid-roster"));
    let r = call(&state, "POST", "/roster", Some("admin:root"), Some(json!({"roster": "s4\tDi\tCGT=Q\n"}))).await;
    assert_eq!((r.status, r.reason().as_str()), (StatusCode::BAD_REQUEST, "invalid-roster"));

    let body = json!({ "percentages": "0,0,1", "total": 10 });
    let r = call(&state, "POST", "/plan/exercises", Some("instructor:i1"), Some(body)).await;
    assert_eq!(r.status, StatusCode::OK);
    assert_eq!(r.json()["plan"]["counts"]["a"], 6);
    let bad = json!({ "percentages": "0.5,0.6,0.1", "total": 10 });
    let r = call(&state, "POST", "/plan/exercises", Some("instructor:i1"), Some(bad)).await;
    assert_eq!((r.status, r.reason().as_str()), (StatusCode::BAD_REQUEST, "invalid-percentages"));
}
