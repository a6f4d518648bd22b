//! HTTP front end for the advisor engine.
//!
//! The knowledge base is loaded once and shared read-only. The only mutable
//! state is the [`SessionStore`], where each walkthrough sits behind its own
//! lock so answers to one session are serialized while distinct sessions
//! proceed in parallel.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use msa_advisor_core::advisor::{Decision, Session};
use msa_advisor_core::api::{
    self, to_body, CreateSessionRequest, ErrorBody, RecommendRequest, SessionView, TradeoffRequest,
};
use msa_advisor_core::error::EntityKind;
use msa_advisor_core::{AdvisorError, KnowledgeBase, NotFound};
use serde::de::DeserializeOwned;
use serde::Serialize;
use tower_http::services::ServeDir;

pub const DEFAULT_EXPIRY: Duration = Duration::from_secs(3600);

struct Entry {
    session: Session,
    last_access: Instant,
}

/// Live walkthroughs keyed by an opaque random id, with idle expiry.
pub struct SessionStore {
    entries: Mutex<HashMap<String, Arc<Mutex<Entry>>>>,
    expiry: Duration,
}

impl SessionStore {
    pub fn new(expiry: Duration) -> Self {
        SessionStore {
            entries: Mutex::new(HashMap::new()),
            expiry,
        }
    }

    pub fn expiry(&self) -> Duration {
        self.expiry
    }

    pub fn insert(&self, session: Session) -> String {
        let id = session.id().to_string();
        let entry = Entry {
            session,
            last_access: Instant::now(),
        };
        let mut map = self.entries.lock().unwrap();
        self.sweep(&mut map);
        map.insert(id.clone(), Arc::new(Mutex::new(entry)));
        id
    }

    pub fn len(&self) -> usize {
        let mut map = self.entries.lock().unwrap();
        self.sweep(&mut map);
        map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Runs `f` on the session while holding its lock, refreshing its idle
    /// timer.
    pub fn with_session<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> T) -> Result<T, NotFound> {
        let entry = {
            let mut map = self.entries.lock().unwrap();
            self.sweep(&mut map);
            map.get(id).cloned().ok_or_else(|| NotFound::session(id))?
        };
        let mut entry = entry.lock().unwrap();
        if entry.last_access.elapsed() >= self.expiry {
            return Err(NotFound::session(id));
        }
        entry.last_access = Instant::now();
        Ok(f(&mut entry.session))
    }

    fn sweep(&self, map: &mut HashMap<String, Arc<Mutex<Entry>>>) {
        map.retain(|_, e| match e.try_lock() {
            Ok(e) => e.last_access.elapsed() < self.expiry,
            // in use right now, so not idle
            Err(_) => true,
        });
    }
}

impl Default for SessionStore {
    fn default() -> Self {
        SessionStore::new(DEFAULT_EXPIRY)
    }
}

pub struct AppState {
    pub kb: Arc<KnowledgeBase>,
    pub sessions: SessionStore,
}

impl AppState {
    pub fn new(kb: KnowledgeBase) -> Self {
        AppState {
            kb: Arc::new(kb),
            sessions: SessionStore::default(),
        }
    }

    pub fn with_expiry(kb: KnowledgeBase, expiry: Duration) -> Self {
        AppState {
            kb: Arc::new(kb),
            sessions: SessionStore::new(expiry),
        }
    }
}

/// A JSON response whose body is rendered by [`to_body`], so it matches the
/// CLI's output byte for byte.
pub struct JsonBody(StatusCode, String);

impl JsonBody {
    fn ok<T: Serialize>(value: &T) -> Self {
        JsonBody(StatusCode::OK, to_body(value))
    }
}

impl IntoResponse for JsonBody {
    fn into_response(self) -> Response {
        (self.0, [(header::CONTENT_TYPE, "application/json")], self.1).into_response()
    }
}

pub struct ApiError(StatusCode, ErrorBody);

impl ApiError {
    fn bad_request(message: impl Into<String>) -> Self {
        ApiError(StatusCode::BAD_REQUEST, ErrorBody::new("E_BAD_REQUEST", message))
    }
}

/// HTTP status for an engine error.
pub fn status_of(e: &AdvisorError) -> StatusCode {
    match e {
        AdvisorError::NotFound(nf) => match nf.kind {
            EntityKind::Model | EntityKind::Session | EntityKind::Node => StatusCode::NOT_FOUND,
            EntityKind::Pattern | EntityKind::QualityAttribute => StatusCode::UNPROCESSABLE_ENTITY,
        },
        AdvisorError::ChoiceArity { .. } | AdvisorError::NotPending(_) => StatusCode::CONFLICT,
        AdvisorError::Incomplete(_)
        | AdvisorError::UnknownQa(_)
        | AdvisorError::InvalidWeight { .. }
        | AdvisorError::ForeignPattern { .. }
        | AdvisorError::BadEdge { .. } => StatusCode::UNPROCESSABLE_ENTITY,
    }
}

impl From<AdvisorError> for ApiError {
    fn from(e: AdvisorError) -> Self {
        ApiError(status_of(&e), ErrorBody::from(&e))
    }
}

impl From<NotFound> for ApiError {
    fn from(e: NotFound) -> Self {
        AdvisorError::from(e).into()
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        JsonBody(self.0, to_body(&self.1)).into_response()
    }
}

type Reply = Result<JsonBody, ApiError>;

fn parse<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("invalid request body: {e}")))
}

async fn health() -> JsonBody {
    JsonBody::ok(&serde_json::json!({ "status": "ok" }))
}

async fn list_models(State(st): State<Arc<AppState>>) -> JsonBody {
    JsonBody::ok(&api::list_models(&st.kb))
}

async fn get_model(State(st): State<Arc<AppState>>, Path(id): Path<String>) -> Reply {
    Ok(JsonBody::ok(&api::model_detail(&st.kb, &id)?))
}

async fn create_session(State(st): State<Arc<AppState>>, body: Bytes) -> Reply {
    let req: CreateSessionRequest = parse(&body)?;
    let session = Session::start(&st.kb, &req.model)?;
    let view = SessionView::of(&st.kb, &session);
    st.sessions.insert(session);
    Ok(JsonBody(StatusCode::CREATED, to_body(&view)))
}

async fn submit_answer(State(st): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes) -> Reply {
    let answer: Decision = parse(&body)?;
    let view = st.sessions.with_session(&id, |s| {
        s.apply_answer(&st.kb, &answer.gateway, &answer.edges)
            .map(|()| SessionView::of(&st.kb, s))
    })??;
    Ok(JsonBody::ok(&view))
}

async fn session_result(State(st): State<Arc<AppState>>, Path(id): Path<String>) -> Reply {
    let result = st.sessions.with_session(&id, |s| s.result(&st.kb))??;
    Ok(JsonBody::ok(&result))
}

async fn recommend(State(st): State<Arc<AppState>>, body: Bytes) -> Reply {
    let req: RecommendRequest = parse(&body)?;
    Ok(JsonBody::ok(&api::recommend(&st.kb, &req)?))
}

async fn tradeoff(State(st): State<Arc<AppState>>, body: Bytes) -> Reply {
    let req: TradeoffRequest = parse(&body)?;
    Ok(JsonBody::ok(&api::tradeoff(&st.kb, &req)?))
}

async fn not_found() -> ApiError {
    ApiError(StatusCode::NOT_FOUND, ErrorBody::new("E_NOT_FOUND", "no such route"))
}

/// API routes only; unknown paths get a JSON 404.
pub fn router(state: Arc<AppState>) -> Router {
    api_routes().fallback(not_found).with_state(state)
}

/// API routes with the built web UI served from `web_dir` for every other
/// path.
pub fn router_with_static(state: Arc<AppState>, web_dir: PathBuf) -> Router {
    api_routes().fallback_service(ServeDir::new(web_dir)).with_state(state)
}

fn api_routes() -> Router<Arc<AppState>> {
    Router::new()
        .route("/health", get(health))
        .route("/models", get(list_models))
        .route("/models/{id}", get(get_model))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/answers", post(submit_answer))
        .route("/sessions/{id}/result", get(session_result))
        .route("/recommend", post(recommend))
        .route("/tradeoff", post(tradeoff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use msa_advisor_core::builtin_kb;

    #[test]
    fn store_expires_idle_sessions() {
        let kb = builtin_kb();
        let store = SessionStore::new(Duration::ZERO);
        let id = store.insert(Session::start(&kb, "discovery").unwrap());
        assert_eq!(store.with_session(&id, |_| ()).unwrap_err(), NotFound::session(&id));
        assert!(store.is_empty());
    }

    #[test]
    fn store_keeps_fresh_sessions() {
        let kb = builtin_kb();
        let store = SessionStore::default();
        let a = store.insert(Session::start(&kb, "discovery").unwrap());
        let b = store.insert(Session::start(&kb, "discovery").unwrap());
        assert_ne!(a, b);
        assert_eq!(store.len(), 2);
        assert!(store.with_session(&a, |s| s.is_complete()).is_ok());
        assert!(store.with_session("missing", |_| ()).is_err());
    }

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&NotFound::session("x").into()), StatusCode::NOT_FOUND);
        assert_eq!(
            status_of(&NotFound::pattern("x").into()),
            StatusCode::UNPROCESSABLE_ENTITY
        );
        assert_eq!(status_of(&AdvisorError::NotPending("g".into())), StatusCode::CONFLICT);
        assert_eq!(
            status_of(&AdvisorError::Incomplete(vec![])),
            StatusCode::UNPROCESSABLE_ENTITY
        );
    }
}
