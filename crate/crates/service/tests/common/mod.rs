#![allow(dead_code)]

use acgt_core::content::seed;
use acgt_core::workflow::{parse_roster, Actor, Portal, Role, SubmissionTarget};
use acgt_service::{router, AppState, Authenticator, Store};
use axum::body::Body;
use axum::http::{Request, StatusCode};
use chrono::DateTime;
use http_body_util::BodyExt;
use serde_json::Value;
use tempfile::TempDir;
use tower::ServiceExt;

pub const ROSTER: &str = "s1\tAda\tCGT=A,ALG=B\ns2\tBo\tCGT=D,ALG=E\n";
pub const VALID_EDIT: &str = "%PROP(in-course) Gear graphs are bipartite.\n";
pub const BROKEN_EDIT: &str = "%REL ACGT-999999\n";

/// Seeded portal with students s1, s2 and submission 1 by s1 (Submitted).
pub fn seeded_portal(payload: &str) -> Portal {
    let mut p = Portal::seeded();
    p.load_roster(parse_roster(ROSTER).unwrap());
    let at = DateTime::from_timestamp(1_700_000_000, 0).unwrap();
    let target = SubmissionTarget::Page { id: seed::GEAR, attribute: None };
    p.submit(&Actor::new("s1", Role::Student), target, payload.into(), at, None).unwrap();
    p
}

pub fn state_with(portal: &Portal) -> (TempDir, AppState) {
    let dir = tempfile::tempdir().unwrap();
    let mut store = Store::open(dir.path()).unwrap();
    store.save_all(portal).unwrap();
    let state = AppState::new(store, Authenticator::dev("CGT"), "CGT").unwrap();
    (dir, state)
}

pub fn fresh() -> (TempDir, AppState) {
    state_with(&seeded_portal(VALID_EDIT))
}

pub struct Reply {
    pub status: StatusCode,
    pub bytes: Vec<u8>,
}

impl Reply {
    pub fn json(&self) -> Value {
        serde_json::from_slice(&self.bytes).unwrap_or(Value::Null)
    }

    pub fn reason(&self) -> String {
        self.json()["reason"].as_str().unwrap_or("").to_string()
    }
}

pub async fn call(state: &AppState, method: &str, uri: &str, token: Option<&str>, body: Option<Value>) -> Reply {
    let mut req = Request::builder().method(method).uri(uri);
    if let Some(t) = token {
        req = req.header("authorization", format!("Bearer {t}"));
    }
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = router(state.clone()).oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    Reply { status, bytes }
}
