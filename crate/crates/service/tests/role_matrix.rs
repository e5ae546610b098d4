//! Every route against every role: denied calls answer 403 and nothing
//! else does.

mod common;

use acgt_core::workflow::Role;
use axum::http::StatusCode;
use common::*;
use proptest::prelude::*;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy)]
enum Gate {
    Anyone,
    AtLeast(Role),
    /// The submission author or student in the path, whatever the role.
    OwnerOnly,
    OwnerOr(Role),
}

struct Route {
    method: &'static str,
    uri: &'static str,
    body: Option<fn() -> Value>,
    gate: Gate,
}

const fn route(method: &'static str, uri: &'static str, body: Option<fn() -> Value>, gate: Gate) -> Route {
    Route { method, uri, body, gate }
}

const ROUTES: &[Route] = &[
    route("GET", "/pages", None, Gate::Anyone),
    route("GET", "/pages/ACGT-000001", None, Gate::Anyone),
    route("GET", "/pages/ACGT-000001/relevance", None, Gate::Anyone),
    route("GET", "/search?q=wheel", None, Gate::Anyone),
    route("GET", "/terms/graphs/backlinks", None, Gate::Anyone),
    route("GET", "/compute/generate?family=wheel&params=5", None, Gate::Anyone),
    route("GET", "/compute/wiener?family=petersen", None, Gate::Anyone),
    route("GET", "/compute/verify-a136328?max_n=5", None, Gate::Anyone),
    route(
        "POST",
        "/submissions",
        Some(|| json!({"target": {"kind": "page", "id": "ACGT-000002"}, "payload": VALID_EDIT})),
        Gate::AtLeast(Role::Student),
    ),
    route("GET", "/submissions", None, Gate::AtLeast(Role::Moderator)),
    route("GET", "/submissions?state=submitted", None, Gate::AtLeast(Role::Moderator)),
    route("GET", "/submissions/1", None, Gate::OwnerOr(Role::Moderator)),
    route(
        "POST",
        "/submissions/1/review",
        Some(|| json!({"action": "start"})),
        Gate::AtLeast(Role::Moderator),
    ),
    route(
        "POST",
        "/submissions/1/review",
        Some(|| json!({"action": "approve"})),
        Gate::AtLeast(Role::Moderator),
    ),
    route("POST", "/submissions/1/resubmit", Some(|| json!({})), Gate::OwnerOnly),
    route("POST", "/submissions/1/publish", None, Gate::AtLeast(Role::Moderator)),
    route("GET", "/students/s1/log", None, Gate::OwnerOr(Role::Instructor)),
    route(
        "POST",
        "/roster",
        Some(|| json!({"roster": "s7\tGus\tCGT=B\n"})),
        Gate::AtLeast(Role::Admin),
    ),
    route(
        "POST",
        "/plan/exercises",
        Some(|| json!({"percentages": "0.2,0.3,0.5", "total": 10})),
        Gate::AtLeast(Role::Instructor),
    ),
];

fn allowed(gate: Gate, role: Role, owner: bool) -> bool {
    match gate {
        Gate::Anyone => true,
        Gate::AtLeast(min) => role.at_least(min),
        Gate::OwnerOnly => owner,
        Gate::OwnerOr(min) => owner || role.at_least(min),
    }
}

async fn check(r: &Route, role: Role, owner: bool) -> Result<(), String> {
    let (_d, state) = fresh();
    let id = if owner { "s1" } else { "someone-else" };
    let token = format!("{role}:{id}");
    let reply = call(&state, r.method, r.uri, Some(&token), r.body.map(|b| b())).await;
    let expect = allowed(r.gate, role, owner);
    let ok = match expect {
        true => reply.status != StatusCode::FORBIDDEN && reply.status != StatusCode::UNAUTHORIZED,
        false => reply.status == StatusCode::FORBIDDEN && reply.reason() == "forbidden-role",
    };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "{} {} as {token}: expected {}, got {} {}",
            r.method,
            r.uri,
            if expect { "allow" } else { "deny" },
            reply.status,
            String::from_utf8_lossy(&reply.bytes)
        ))
    }
}

#[tokio::test]
async fn full_allow_deny_matrix() {
    let mut failures = Vec::new();
    for r in ROUTES {
        for role in Role::ALL {
            for owner in [false, true] {
                if let Err(e) = check(r, role, owner).await {
                    failures.push(e);
                }
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[tokio::test]
async fn anonymous_callers_are_rejected_everywhere_but_health() {
    let (_d, state) = fresh();
    for r in ROUTES {
        let reply = call(&state, r.method, r.uri, None, r.body.map(|b| b())).await;
        assert_eq!(reply.status, StatusCode::UNAUTHORIZED, "{} {}", r.method, r.uri);
        let bogus = call(&state, r.method, r.uri, Some("root"), r.body.map(|b| b())).await;
        assert_eq!(bogus.status, StatusCode::UNAUTHORIZED, "{} {}", r.method, r.uri);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Random route, role and ownership; the gate decides.
    #[test]
    fn random_calls_follow_the_matrix(
        r in 0..ROUTES.len(),
        role in proptest::sample::select(Role::ALL.to_vec()),
        owner in any::<bool>(),
    ) {
        let rt = tokio::runtime::Builder::new_current_thread().enable_all().build().unwrap();
        let result = rt.block_on(check(&ROUTES[r], role, owner));
        prop_assert!(result.is_ok(), "{}", result.unwrap_err());
    }
}
