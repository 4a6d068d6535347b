//! HTTP API. All bodies are JSON; errors are `{"error": CODE, "message": ...}`.
//!
//! | route | |
//! |---|---|
//! | `GET /api/items?status=` | items, optionally filtered by `pending`, `accepted`, `overridden` |
//! | `GET /api/items/{id}` | one item with example sentences |
//! | `POST /api/items/{id}/decision` | `{"decision": UPOS, "annotator": text}` |
//! | `GET /api/table` | the current mapping table |
//! | `GET /api/report` | UPOS delta of the current table over the corpus |

use std::path::Path;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path as UrlPath, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use koalign::align::{align_corpus, delta_report};
use koalign::review::{Decision, ItemStatus, ReviewItem};
use koalign::UposTag;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::services::ServeDir;

use super::{now_millis, ReviewState, Shared};

pub struct ApiError {
    status: StatusCode,
    code: String,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code: code.into(),
            message: message.into(),
        }
    }
}

impl From<anyhow::Error> for ApiError {
    fn from(err: anyhow::Error) -> Self {
        let message = format!("{err:#}");
        match err.downcast_ref::<koalign::Error>() {
            Some(e) => {
                let status = match e {
                    koalign::Error::NoSuchItem(_) => StatusCode::NOT_FOUND,
                    koalign::Error::Conflict(_) => StatusCode::CONFLICT,
                    koalign::Error::BadDecision(_) | koalign::Error::BadUpos(_) => {
                        StatusCode::BAD_REQUEST
                    }
                    _ => StatusCode::INTERNAL_SERVER_ERROR,
                };
                ApiError::new(status, e.code(), message)
            }
            None => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", message),
        }
    }
}

impl From<koalign::Error> for ApiError {
    fn from(err: koalign::Error) -> Self {
        anyhow::Error::from(err).into()
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = Json(json!({ "error": self.code, "message": self.message }));
        (self.status, body).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

fn poisoned() -> ApiError {
    ApiError::new(
        StatusCode::INTERNAL_SERVER_ERROR,
        "INTERNAL",
        "state lock poisoned",
    )
}

#[derive(Serialize)]
struct ExampleView<'a> {
    form: &'a str,
    sent_id: &'a str,
    text: Option<&'a str>,
}

#[derive(Serialize)]
struct ItemView<'a> {
    id: &'a str,
    construction: String,
    frequency: u64,
    examples: Vec<ExampleView<'a>>,
    contexts: &'a [koalign::review::TokenContext],
    proposed_upos: UposTag,
    rule_id: &'a str,
    status: ItemStatus,
    decided_upos: Option<UposTag>,
    annotator: Option<&'a str>,
    round: u32,
    timestamp: Option<u64>,
    flags: &'a [koalign::align::ReviewFlag],
    sampled_tokens: usize,
}

fn item_view<'a>(state: &'a ReviewState, item: &'a ReviewItem) -> ItemView<'a> {
    let examples = item
        .construction
        .examples
        .iter()
        .map(|e| ExampleView {
            form: &e.form,
            sent_id: &e.sent_id,
            text: state
                .corpus
                .sentences
                .iter()
                .find(|s| s.sent_id() == Some(e.sent_id.as_str()))
                .and_then(|s| s.text()),
        })
        .collect();
    ItemView {
        id: &item.id,
        construction: item.construction.xpos_seq.to_string(),
        frequency: item.construction.frequency,
        examples,
        contexts: &item.contexts,
        proposed_upos: item.proposed_upos,
        rule_id: &item.proposal_source,
        status: item.status,
        decided_upos: item.decided_upos,
        annotator: item.annotator.as_deref(),
        round: item.round,
        timestamp: item.timestamp,
        flags: &item.flags,
        sampled_tokens: item.sampled_tokens,
    }
}

#[derive(Deserialize)]
struct ItemsQuery {
    status: Option<String>,
}

async fn list_items(State(shared): State<Shared>, Query(q): Query<ItemsQuery>) -> ApiResult<Value> {
    let status = q
        .status
        .as_deref()
        .filter(|s| !s.is_empty())
        .map(str::parse::<ItemStatus>)
        .transpose()?;
    let state = shared.read().map_err(|_| poisoned())?;
    let s = &state.session;
    let count = |st| s.items.iter().filter(|i| i.status == st).count();
    let items: Vec<ItemView> = s
        .items_with_status(status)
        .into_iter()
        .map(|i| item_view(&state, i))
        .collect();
    Ok(Json(json!({
        "items": items,
        "counts": {
            "pending": count(ItemStatus::Pending),
            "accepted": count(ItemStatus::Accepted),
            "overridden": count(ItemStatus::Overridden),
        },
        "session": {
            "round": s.round,
            "seed": s.seed,
            "sample_fraction": s.sample_fraction.to_string(),
            "table_version_at_open": s.table_version_at_open,
            "total_changes": s.total_changes,
            "sampled_changes": s.sampled_changes,
        },
        "table_version": state.table.version(),
    })))
}

async fn get_item(State(shared): State<Shared>, UrlPath(id): UrlPath<String>) -> ApiResult<Value> {
    let state = shared.read().map_err(|_| poisoned())?;
    let item = state
        .session
        .item(&id)
        .ok_or_else(|| koalign::Error::NoSuchItem(id.clone()))?;
    Ok(Json(json!(item_view(&state, item))))
}

#[derive(Deserialize)]
struct DecisionBody {
    decision: String,
    annotator: String,
    /// Optional echo of the item id; must match the path when present.
    construction: Option<String>,
}

async fn post_decision(
    State(shared): State<Shared>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<DecisionBody>, JsonRejection>,
) -> ApiResult<Value> {
    let Json(body) =
        body.map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "BAD_REQUEST", e.body_text()))?;
    if body.construction.as_ref().is_some_and(|c| *c != id) {
        return Err(ApiError::new(
            StatusCode::BAD_REQUEST,
            "BAD_DECISION",
            format!(
                "body names {:?} but the path names {id:?}",
                body.construction.unwrap()
            ),
        ));
    }
    let decision = Decision {
        item_id: id,
        decision: body.decision.parse()?,
        annotator: body.annotator,
        timestamp: now_millis(),
    };
    let mut state = shared.write().map_err(|_| poisoned())?;
    let item = state.decide(&decision)?;
    let version = state.table.version();
    Ok(Json(json!({
        "item": item_view(&state, &item),
        "table_version": version,
    })))
}

async fn get_table(State(shared): State<Shared>) -> ApiResult<Value> {
    let state = shared.read().map_err(|_| poisoned())?;
    let t = &state.table;
    Ok(Json(json!({
        "version": t.version(),
        "history": t.history(),
        "entries": t.entries().collect::<Vec<_>>(),
    })))
}

async fn get_report(State(shared): State<Shared>) -> ApiResult<Value> {
    let state = shared.read().map_err(|_| poisoned())?;
    let (aligned, changes) = align_corpus(&state.corpus, &state.table, &state.config)?;
    let report = delta_report(&state.corpus, &aligned)?;
    let rows: Vec<Value> = report
        .rows
        .iter()
        .filter(|r| r.before != 0 || r.after != 0)
        .map(|r| {
            json!({
                "upos": r.upos.map_or("_".to_string(), |u| u.to_string()),
                "unaligned": r.before,
                "aligned": r.after,
                "delta": r.delta(),
            })
        })
        .collect();
    Ok(Json(json!({
        "table_version": state.table.version(),
        "changes": changes.len(),
        "tokens": report.before_total(),
        "rows": rows,
    })))
}

pub fn router(shared: Shared, ui_dir: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/items", get(list_items))
        .route("/api/items/{id}", get(get_item))
        .route("/api/items/{id}/decision", post(post_decision))
        .route("/api/table", get(get_table))
        .route("/api/report", get(get_report))
        .with_state(shared);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}
