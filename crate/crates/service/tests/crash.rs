//! Publishing under injected crashes: after reopening, the store holds the
//! pre-publish or the post-publish state, never a mix.

mod common;

use std::fs;
use std::path::Path;

use acgt_core::content::seed;
use acgt_core::workflow::{Portal, SubmissionState};
use acgt_service::{AppState, Authenticator, CrashPoint, Store};
use axum::http::StatusCode;
use common::*;
use proptest::prelude::*;
use serde_json::json;

const MOD: Option<&str> = Some("moderator:m1");

#[derive(Debug, PartialEq, Eq)]
enum Observed {
    Pre,
    Post,
}

/// Classifies a reloaded portal, failing on any hybrid.
fn observe(p: &Portal) -> Observed {
    let published = p.submissions[&1].state() == SubmissionState::Published;
    let page_changed = p.pages[&seed::GEAR] != seed::pages()[&seed::GEAR];
    let credited = p.students["s1"].log().iter().any(|e| e.credited_page.is_some());
    assert_eq!(published, page_changed, "page and submission disagree");
    assert_eq!(published, credited, "contribution log and submission disagree");
    if published {
        Observed::Post
    } else {
        assert_eq!(p.submissions[&1].state(), SubmissionState::Approved);
        Observed::Pre
    }
}

async fn approved() -> (tempfile::TempDir, AppState) {
    let (dir, state) = fresh();
    for a in ["start", "approve"] {
        let r = call(&state, "POST", "/submissions/1/review", MOD, Some(json!({ "action": a }))).await;
        assert_eq!(r.status, StatusCode::OK);
    }
    (dir, state)
}

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), target).unwrap();
        }
    }
}

#[tokio::test]
async fn every_crash_point_recovers_to_pre_or_post() {
    for point in CrashPoint::ALL {
        let (dir, state) = approved().await;
        state.inject_crash(Some(point));
        let r = call(&state, "POST", "/submissions/1/publish", MOD, None).await;
        assert_eq!(r.status, StatusCode::INTERNAL_SERVER_ERROR, "{point:?}");
        // The live snapshot never showed the publish.
        assert_eq!(observe(&state.snapshot()), Observed::Pre);
        drop(state);

        let store = Store::open(dir.path()).unwrap();
        let seen = observe(&store.load().unwrap());
        let want = if point == CrashPoint::TornJournalAppend { Observed::Pre } else { Observed::Post };
        assert_eq!(seen, want, "{point:?}");

        // The recovered store keeps working.
        let state = AppState::new(store, Authenticator::dev("CGT"), "CGT").unwrap();
        let again = call(&state, "POST", "/submissions/1/publish", MOD, None).await;
        let expected = if want == Observed::Pre { StatusCode::OK } else { StatusCode::CONFLICT };
        assert_eq!(again.status, expected, "{point:?}");
        drop(state);
        assert_eq!(observe(&Store::open(dir.path()).unwrap().load().unwrap()), Observed::Post);
    }
}

/// Pre-publish directory plus the journal line a publish appends.
fn torn_fixture() -> (tempfile::TempDir, tempfile::TempDir, Vec<u8>) {
    let rt = tokio::runtime::Builder::new_current_thread().enable_all().build().unwrap();
    rt.block_on(async {
        let (live, state) = approved().await;
        let pre = tempfile::tempdir().unwrap();
        copy_dir(live.path(), pre.path());
        let before = fs::read(pre.path().join("journal.log")).unwrap();
        let r = call(&state, "POST", "/submissions/1/publish", MOD, None).await;
        assert_eq!(r.status, StatusCode::OK);
        let after = fs::read(live.path().join("journal.log")).unwrap();
        assert!(after.starts_with(&before));
        let line = after[before.len()..].to_vec();
        (live, pre, line)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// A crash can leave any prefix of the publish record in the journal.
    #[test]
    fn any_journal_prefix_recovers_cleanly(frac in 0.0f64..=1.0) {
        thread_local! {
            static FIXTURE: (tempfile::TempDir, tempfile::TempDir, Vec<u8>) = torn_fixture();
        }
        FIXTURE.with(|(_live, pre, line)| {
            let cut = ((line.len() as f64) * frac) as usize;
            let dir = tempfile::tempdir().unwrap();
            copy_dir(pre.path(), dir.path());
            let mut journal = fs::read(dir.path().join("journal.log")).unwrap();
            journal.extend_from_slice(&line[..cut]);
            fs::write(dir.path().join("journal.log"), journal).unwrap();
            let seen = observe(&Store::open(dir.path()).unwrap().load().unwrap());
            let want = if cut == line.len() { Observed::Post } else { Observed::Pre };
            prop_assert_eq!(seen, want);
            Ok(())
        })?;
    }
}

#[test]
fn complete_line_without_marker_is_replayed() {
    let (_live, pre, line) = torn_fixture();
    let mut journal = fs::read(pre.path().join("journal.log")).unwrap();
    journal.extend_from_slice(&line);
    fs::write(pre.path().join("journal.log"), journal).unwrap();
    assert_eq!(observe(&Store::open(pre.path()).unwrap().load().unwrap()), Observed::Post);
}
