//! HTTP routes. Every body is JSON; errors are [`ErrorBody`](crate::error::ErrorBody).

use std::collections::BTreeSet;

use acgt_core::content::{
    backward_links, export_page, relevance, search, ColorCode, LogicalPage, PageId, PageKind, PageStatus,
};
use acgt_core::families::generate;
use acgt_core::index::hosoya_wiener;
use acgt_core::workflow::{
    contribution_report, parse_percentages, parse_roster, plan_exercises, Action, ContributionReport, ExercisePlan,
    Group, Portal, Role, Submission, SubmissionState, SubmissionTarget,
};
use acgt_core::odd::VerificationReport;
use acgt_core::{verify_a136328, wiener, FamilySpec};
use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{FromRequestParts, Path, Query, State};
use axum::http::header::{AUTHORIZATION, CONTENT_TYPE};
use axum::http::request::Parts;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use chrono::Utc;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::ApiError;
use crate::store::{valid_student_id, Document};
use crate::AppState;

/// Largest graph the generate endpoint will emit.
pub const MAX_GENERATE_VERTICES: usize = 50_000;
/// Largest graph the Wiener endpoint will run all-pairs BFS on.
pub const MAX_WIENER_VERTICES: usize = 2_000;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/pages", get(list_pages))
        .route("/pages/{id}", get(get_page))
        .route("/pages/{id}/relevance", get(page_relevance))
        .route("/search", get(search_pages))
        .route("/terms/{term}/backlinks", get(term_backlinks))
        .route("/submissions", post(create_submission).get(list_submissions))
        .route("/submissions/{id}", get(get_submission))
        .route("/submissions/{id}/review", post(review_submission))
        .route("/submissions/{id}/resubmit", post(resubmit_submission))
        .route("/submissions/{id}/publish", post(publish_submission))
        .route("/students/{id}/log", get(student_log))
        .route("/roster", post(load_roster))
        .route("/plan/exercises", post(plan))
        .route("/compute/generate", get(compute_generate))
        .route("/compute/wiener", get(compute_wiener))
        .route("/compute/verify-a136328", get(compute_verify))
        .fallback(|| async { ApiError::not_found("unknown-route", "no such route") })
        .with_state(state)
}

/// The authenticated caller. Students must be on the course roster.
pub struct Auth(pub crate::auth::Principal);

impl FromRequestParts<AppState> for Auth {
    type Rejection = ApiError;

    async fn from_request_parts(parts: &mut Parts, state: &AppState) -> Result<Self, Self::Rejection> {
        let header = parts.headers.get(AUTHORIZATION).and_then(|v| v.to_str().ok());
        let p = state.auth().authenticate(header).ok_or_else(ApiError::unauthenticated)?;
        if p.role == Role::Student && !p.enrolled_in(state.course()) {
            return Err(ApiError::new(
                StatusCode::FORBIDDEN,
                "not-enrolled",
                format!("{} is not on the {} roster", p.id, state.course()),
            ));
        }
        Ok(Auth(p))
    }
}

fn require(auth: &Auth, min: Role, what: &str) -> Result<(), ApiError> {
    if auth.0.role.at_least(min) {
        Ok(())
    } else {
        Err(ApiError::forbidden(format!("{} may not {what}", auth.0.role)))
    }
}

fn body<T>(r: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    r.map(|Json(t)| t).map_err(|e| ApiError::bad_request("invalid-body", e.body_text()))
}

fn query<T>(r: Result<Query<T>, QueryRejection>) -> Result<T, ApiError> {
    r.map(|Query(t)| t).map_err(|e| ApiError::bad_request("invalid-query", e.body_text()))
}

fn page_id(s: &str) -> Result<PageId, ApiError> {
    Ok(s.parse::<PageId>()?)
}

fn submission_id(s: &str) -> Result<u64, ApiError> {
    s.parse()
        .map_err(|_| ApiError::bad_request("invalid-submission-id", format!("`{s}` is not a submission id")))
}

/// Students see published pages only; drafts look like missing pages.
fn visible_page<'a>(portal: &'a Portal, auth: &Auth, id: PageId) -> Result<&'a LogicalPage, ApiError> {
    portal
        .pages
        .get(&id)
        .filter(|p| p.is_published() || auth.0.role.at_least(Role::Instructor))
        .ok_or_else(|| ApiError::not_found("unknown-page", format!("no page {id}")))
}

async fn health() -> Json<serde_json::Value> {
    Json(serde_json::json!({ "status": "ok" }))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PageSummary {
    pub id: PageId,
    pub title: String,
    pub kind: PageKind,
    pub status: PageStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<ColorCode>,
}

async fn list_pages(State(state): State<AppState>, auth: Auth) -> Json<Vec<PageSummary>> {
    let portal = state.snapshot();
    let staff = auth.0.role.at_least(Role::Instructor);
    Json(
        portal
            .pages
            .values()
            .filter(|p| staff || p.is_published())
            .map(|p| PageSummary {
                id: p.id,
                title: p.title.clone(),
                kind: p.kind,
                status: p.status,
                color: p.color,
            })
            .collect(),
    )
}

#[derive(Debug, Deserialize)]
struct PageQuery {
    format: Option<String>,
}

async fn get_page(
    State(state): State<AppState>,
    auth: Auth,
    Path(id): Path<String>,
    q: Result<Query<PageQuery>, QueryRejection>,
) -> Result<Response, ApiError> {
    let id = page_id(&id)?;
    let q = query(q)?;
    let portal = state.snapshot();
    let page = visible_page(&portal, &auth, id)?;
    match q.format.as_deref() {
        None | Some("json") => Ok(Json(page).into_response()),
        Some("fielded") => Ok(([(CONTENT_TYPE, "text/plain; charset=utf-8")], export_page(page)).into_response()),
        Some(other) => Err(ApiError::bad_request("invalid-query", format!("unknown format `{other}`"))),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RelevanceBody {
    pub page: PageId,
    /// Exact value, `p/q` or an integer.
    pub relevance: String,
    pub decimal: f64,
}

async fn page_relevance(
    State(state): State<AppState>,
    auth: Auth,
    Path(id): Path<String>,
) -> Result<Json<RelevanceBody>, ApiError> {
    let id = page_id(&id)?;
    let portal = state.snapshot();
    let page = visible_page(&portal, &auth, id)?;
    let r = relevance(page, &portal.corpus, &portal.syllabus);
    Ok(Json(RelevanceBody {
        page: id,
        relevance: acgt_core::graph::format_rational(&r),
        decimal: r.to_f64().unwrap_or(f64::NAN),
    }))
}

#[derive(Debug, Deserialize)]
struct SearchQuery {
    #[serde(default)]
    q: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SearchResult {
    pub id: PageId,
    pub title: String,
    pub score: u64,
}

async fn search_pages(
    State(state): State<AppState>,
    _auth: Auth,
    q: Result<Query<SearchQuery>, QueryRejection>,
) -> Result<Json<Vec<SearchResult>>, ApiError> {
    let q = query(q)?;
    let portal = state.snapshot();
    let hits = search(&q.q, portal.pages.values())
        .into_iter()
        .map(|h| SearchResult {
            id: h.id,
            title: portal.pages[&h.id].title.clone(),
            score: h.score,
        })
        .collect();
    Ok(Json(hits))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BacklinksBody {
    pub term: String,
    pub pages: Vec<PageId>,
}

async fn term_backlinks(
    State(state): State<AppState>,
    _auth: Auth,
    Path(term): Path<String>,
) -> Result<Json<BacklinksBody>, ApiError> {
    let portal = state.snapshot();
    let pages = backward_links(&term, &portal.corpus, &portal.pages)?;
    Ok(Json(BacklinksBody { term, pages }))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NewSubmission {
    pub target: SubmissionTarget,
    /// Fielded-format fragment (or a whole page for `new-page`).
    pub payload: String,
    #[serde(default)]
    pub note: Option<String>,
}

async fn create_submission(
    State(state): State<AppState>,
    auth: Auth,
    req: Result<Json<NewSubmission>, JsonRejection>,
) -> Result<(StatusCode, Json<Submission>), ApiError> {
    require(&auth, Role::Student, "submit")?;
    let req = body(req)?;
    let actor = auth.0.actor();
    let sub = state.write(|portal| {
        let sub = portal.submit(&actor, req.target, req.payload, Utc::now(), req.note)?.clone();
        let docs = vec![Document::submission(&sub)];
        Ok((Ok(sub), docs))
    })?;
    Ok((StatusCode::CREATED, Json(sub)))
}

#[derive(Debug, Deserialize)]
struct StateQuery {
    state: Option<String>,
}

async fn list_submissions(
    State(state): State<AppState>,
    auth: Auth,
    q: Result<Query<StateQuery>, QueryRejection>,
) -> Result<Json<Vec<Submission>>, ApiError> {
    require(&auth, Role::Moderator, "list submissions")?;
    let q = query(q)?;
    let filter = q
        .state
        .map(|s| {
            s.parse::<SubmissionState>()
                .map_err(|_| ApiError::bad_request("invalid-query", format!("unknown state `{s}`")))
        })
        .transpose()?;
    let portal = state.snapshot();
    Ok(Json(portal.submissions_in(filter).cloned().collect()))
}

async fn get_submission(
    State(state): State<AppState>,
    auth: Auth,
    Path(id): Path<String>,
) -> Result<Json<Submission>, ApiError> {
    let id = submission_id(&id)?;
    let portal = state.snapshot();
    let sub = portal.submission(id)?;
    if sub.author != auth.0.id && !auth.0.role.at_least(Role::Moderator) {
        return Err(ApiError::forbidden("only the author or a moderator may view a submission"));
    }
    Ok(Json(sub.clone()))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReviewRequest {
    pub action: Action,
    #[serde(default)]
    pub note: Option<String>,
}

async fn review_submission(
    State(state): State<AppState>,
    auth: Auth,
    Path(id): Path<String>,
    req: Result<Json<ReviewRequest>, JsonRejection>,
) -> Result<Json<Submission>, ApiError> {
    require(&auth, Role::Moderator, "review submissions")?;
    let id = submission_id(&id)?;
    let req = body(req)?;
    let actor = auth.0.actor();
    let sub = state.write(|portal| {
        let sub = portal.review(&actor, id, req.action, Utc::now(), req.note)?.clone();
        let mut docs = vec![Document::submission(&sub)];
        if req.action == Action::Reject {
            if let Some(s) = portal.students.get(&sub.author) {
                docs.push(Document::student(s)?);
            }
        }
        Ok((Ok(sub), docs))
    })?;
    Ok(Json(sub))
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct ResubmitRequest {
    #[serde(default)]
    pub payload: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
}

async fn resubmit_submission(
    State(state): State<AppState>,
    auth: Auth,
    Path(id): Path<String>,
    req: Result<Json<ResubmitRequest>, JsonRejection>,
) -> Result<Json<Submission>, ApiError> {
    let id = submission_id(&id)?;
    let req = body(req)?;
    let actor = auth.0.actor();
    let sub = state.write(|portal| {
        let sub = portal.resubmit(&actor, id, req.payload, Utc::now(), req.note)?.clone();
        let docs = vec![Document::submission(&sub)];
        Ok((Ok(sub), docs))
    })?;
    Ok(Json(sub))
}

/// Publishes atomically. A payload that fails validation leaves the page
/// untouched, records a `publish-failed` entry and answers 400.
async fn publish_submission(
    State(state): State<AppState>,
    auth: Auth,
    Path(id): Path<String>,
) -> Result<Json<LogicalPage>, ApiError> {
    require(&auth, Role::Moderator, "publish")?;
    let id = submission_id(&id)?;
    let actor = auth.0.actor();
    state.write(|portal| {
        let now = Utc::now();
        portal.submission(id)?.check(&actor, Action::Publish)?;
        match portal.prepare_publish(&actor, id, now) {
            Ok(outcome) => {
                let mut docs = vec![Document::page(&outcome.page), Document::submission(&outcome.submission)];
                if let Some(s) = &outcome.student {
                    docs.push(Document::student(s)?);
                }
                let page = outcome.page.clone();
                portal.commit(outcome);
                Ok((Ok(page), docs))
            }
            Err(e) => {
                let sub = portal.record_publish_failure(&actor, id, now, &e)?;
                Ok((Err(e.into()), vec![Document::submission(sub)]))
            }
        }
    })
    .map(Json)
}

async fn student_log(
    State(state): State<AppState>,
    auth: Auth,
    Path(id): Path<String>,
) -> Result<Json<ContributionReport>, ApiError> {
    if auth.0.id != id && !auth.0.role.at_least(Role::Instructor) {
        return Err(ApiError::forbidden("only the student or an instructor may read a contribution log"));
    }
    let portal = state.snapshot();
    Ok(Json(contribution_report(&portal.students, &id)?))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RosterRequest {
    /// Roster file contents: `id<TAB>name<TAB>subject=grade,...` per line.
    pub roster: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GroupChangeBody {
    pub student: String,
    pub from: Option<Group>,
    pub to: Group,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RosterResponse {
    pub students: usize,
    /// Group changes awaiting instructor confirmation.
    pub changes: Vec<GroupChangeBody>,
}

async fn load_roster(
    State(state): State<AppState>,
    auth: Auth,
    req: Result<Json<RosterRequest>, JsonRejection>,
) -> Result<Json<RosterResponse>, ApiError> {
    require(&auth, Role::Admin, "load a roster")?;
    let req = body(req)?;
    let records = parse_roster(&req.roster)?;
    if let Some(r) = records.iter().find(|r| !valid_student_id(&r.id)) {
        return Err(ApiError::bad_request(
            "invalid-roster",
            format!("student id `{}` must be 1-64 letters, digits, `-` or `_`", r.id),
        ));
    }
    let ids: BTreeSet<String> = records.iter().map(|r| r.id.clone()).collect();
    state
        .write(|portal| {
            let changes = portal.load_roster(records);
            let docs = ids
                .iter()
                .map(|id| Document::student(&portal.students[id]))
                .collect::<Result<Vec<_>, _>>()?;
            let changes = changes
                .into_iter()
                .map(|(student, c)| GroupChangeBody {
                    student,
                    from: c.from,
                    to: c.to,
                })
                .collect();
            Ok((
                Ok(RosterResponse {
                    students: ids.len(),
                    changes,
                }),
                docs,
            ))
        })
        .map(Json)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PlanRequest {
    /// Group shares as `g1,g2,g3`, each a decimal or fraction.
    pub percentages: String,
    pub total: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PlanResponse {
    pub plan: ExercisePlan,
    pub table: String,
}

async fn plan(auth: Auth, req: Result<Json<PlanRequest>, JsonRejection>) -> Result<Json<PlanResponse>, ApiError> {
    require(&auth, Role::Instructor, "plan exercises")?;
    let req = body(req)?;
    let pcts = parse_percentages(&req.percentages)?;
    let plan = plan_exercises(&pcts, req.total)?;
    let table = plan.to_string();
    Ok(Json(PlanResponse { plan, table }))
}

#[derive(Debug, Deserialize)]
struct FamilyQuery {
    family: String,
    #[serde(default)]
    params: String,
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

fn size_limit(spec: &FamilySpec, n: usize, max: usize) -> Result<(), ApiError> {
    if n > max {
        Err(ApiError::bad_request(
            "size-limit",
            format!("{spec} has {n} vertices; this endpoint accepts at most {max}"),
        ))
    } else {
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GenerateBody {
    pub spec: String,
    pub vertices: usize,
    pub edges: usize,
    /// Edge-list text: `n m` header then one `u v` line per edge.
    pub edge_list: String,
}

async fn compute_generate(
    _auth: Auth,
    q: Result<Query<FamilyQuery>, QueryRejection>,
) -> Result<Json<GenerateBody>, ApiError> {
    let q = query(q)?;
    blocking(move || {
        let spec = FamilySpec::parse(&q.family, &q.params)?;
        let g = generate(&spec)?;
        size_limit(&spec, g.vertex_count(), MAX_GENERATE_VERTICES)?;
        Ok(GenerateBody {
            spec: spec.to_string(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            edge_list: g.to_edge_list(),
        })
    })
    .await
    .map(Json)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WienerBody {
    pub spec: String,
    pub vertices: usize,
    pub edges: usize,
    /// Decimal integer; may exceed 64 bits.
    pub wiener: String,
    pub hosoya_wiener: String,
}

async fn compute_wiener(
    _auth: Auth,
    q: Result<Query<FamilyQuery>, QueryRejection>,
) -> Result<Json<WienerBody>, ApiError> {
    let q = query(q)?;
    blocking(move || {
        let spec = FamilySpec::parse(&q.family, &q.params)?;
        let g = generate(&spec)?;
        size_limit(&spec, g.vertex_count(), MAX_WIENER_VERTICES)?;
        let index_err = |e: acgt_core::IndexError| ApiError::bad_request("disconnected-graph", e.to_string());
        let w = wiener(&g).map_err(index_err)?;
        let h = hosoya_wiener(&g).map_err(index_err)?;
        Ok(WienerBody {
            spec: spec.to_string(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            wiener: w.to_string(),
            hosoya_wiener: h.to_string(),
        })
    })
    .await
    .map(Json)
}

#[derive(Debug, Deserialize)]
struct VerifyQuery {
    max_n: Option<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyBody {
    pub max_n: u32,
    pub passed: usize,
    pub all_passed: bool,
    pub report: VerificationReport,
    pub table: String,
}

async fn compute_verify(
    _auth: Auth,
    q: Result<Query<VerifyQuery>, QueryRejection>,
) -> Result<Json<VerifyBody>, ApiError> {
    let q = query(q)?;
    let max_n = q.max_n.unwrap_or(17);
    blocking(move || {
        let report =
            verify_a136328(max_n).map_err(|e| ApiError::bad_request("invalid-parameter", e.to_string()))?;
        Ok(VerifyBody {
            max_n,
            passed: report.passed(),
            all_passed: report.all_passed(),
            table: report.to_string(),
            report,
        })
    })
    .await
    .map(Json)
}
