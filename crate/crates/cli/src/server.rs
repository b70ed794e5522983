//! HTTP service over the pipeline and edit sessions.
//!
//! Projects live in memory and are written to `<data dir>/<id>.json` after
//! every change. Edits carry the revision the client last saw; a stale
//! revision is rejected with 409 so concurrent editors cannot silently
//! overwrite each other.

use std::collections::HashMap;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use storyuml_core::diagram::render;
use storyuml_core::editsession::EditError;
use storyuml_core::extract::Location;
use storyuml_core::project::{load_project, save_project};
use storyuml_core::{run_pipeline, EditCommand, Pipeline, PipelineResult, Session};
use tokio::sync::Mutex;
use tower_http::services::ServeDir;

use crate::cli::CliError;

/// Environment variable overriding the data directory.
pub const DATA_DIR_ENV: &str = "STORYUML_DATA_DIR";

const FALLBACK_PAGE: &str = include_str!("fallback.html");

#[derive(Debug, Clone)]
pub struct ServeOptions {
    pub host: String,
    pub port: u16,
    pub data_dir: PathBuf,
    pub assets: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<Location>,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code: code.to_string(),
            message: message.into(),
            location: None,
        }
    }

    fn not_found(id: &str) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, "not_found", format!("no project {id:?}"))
    }

    fn internal(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }
}

impl From<EditError> for ApiError {
    fn from(e: EditError) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.code(), e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

struct Project {
    result: PipelineResult,
    session: Session,
    deleted: bool,
}

pub struct AppState {
    pipeline: Pipeline,
    data_dir: PathBuf,
    projects: RwLock<HashMap<String, Arc<Mutex<Project>>>>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '-')
}

impl AppState {
    /// Creates the data directory if needed and loads the projects in it.
    /// Returns the state and one message per file that could not be loaded.
    pub fn open(pipeline: Pipeline, data_dir: PathBuf) -> std::io::Result<(Self, Vec<String>)> {
        std::fs::create_dir_all(&data_dir)?;
        let mut projects = HashMap::new();
        let mut skipped = Vec::new();
        for entry in std::fs::read_dir(&data_dir)? {
            let path = entry?.path();
            let Some(id) = path
                .file_name()
                .and_then(|n| n.to_str())
                .and_then(|n| n.strip_suffix(".json"))
                .filter(|id| valid_id(id))
            else {
                continue;
            };
            match load_project(&path) {
                Ok((result, session)) => {
                    let project = Project {
                        result,
                        session,
                        deleted: false,
                    };
                    projects.insert(id.to_string(), Arc::new(Mutex::new(project)));
                }
                Err(e) => skipped.push(format!("{}: {e}", path.display())),
            }
        }
        let state = AppState {
            pipeline,
            data_dir,
            projects: RwLock::new(projects),
        };
        Ok((state, skipped))
    }

    fn path(&self, id: &str) -> PathBuf {
        self.data_dir.join(format!("{id}.json"))
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Project>>, ApiError> {
        if !valid_id(id) {
            return Err(ApiError::not_found(id));
        }
        self.projects
            .read()
            .expect("project table lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(id))
    }
}

async fn persist(path: PathBuf, result: &PipelineResult, session: &Session) -> Result<(), ApiError> {
    let (result, session) = (result.clone(), session.clone());
    tokio::task::spawn_blocking(move || save_project(&result, &session, &path))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))?
        .map_err(|e| ApiError::internal(e.to_string()))
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body)
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_request", e.to_string()))
}

#[derive(Debug, Deserialize)]
struct CreateRequest {
    story: String,
    system_name: Option<String>,
    filter: Option<bool>,
}

#[derive(Debug, Deserialize)]
struct EditRequest {
    command: EditCommand,
    #[serde(alias = "revision")]
    expected_revision: u64,
}

#[derive(Debug, Default, Deserialize)]
struct UndoRequest {
    #[serde(default, alias = "revision")]
    expected_revision: Option<u64>,
}

fn model_view(id: &str, session: &Session) -> Value {
    json!({
        "project_id": id,
        "model": session.model,
        "plantuml": render(&session.model),
        "revision": session.revision,
    })
}

fn project_view(id: &str, project: &Project) -> Value {
    let mut v = model_view(id, &project.session);
    v["result"] = serde_json::to_value(&project.result).expect("result serializes");
    v
}

async fn create_project(State(state): State<Arc<AppState>>, body: Bytes) -> Result<Response, ApiError> {
    let req: CreateRequest = parse_body(&body)?;
    let mut pipeline = state.pipeline.clone();
    if let Some(name) = req.system_name.filter(|n| !n.trim().is_empty()) {
        pipeline.config.system_name = name;
    }
    if let Some(filter) = req.filter {
        pipeline.config.filter = filter;
    }
    let story = req.story;
    let result = tokio::task::spawn_blocking(move || run_pipeline(&story, &pipeline))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))?
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "empty_input", e.to_string()))?;
    let session = Session::new(result.filtered_model.clone());
    let id = uuid::Uuid::new_v4().to_string();
    persist(state.path(&id), &result, &session).await?;
    let project = Project {
        result,
        session,
        deleted: false,
    };
    let view = project_view(&id, &project);
    state
        .projects
        .write()
        .expect("project table lock")
        .insert(id, Arc::new(Mutex::new(project)));
    Ok((StatusCode::CREATED, Json(view)).into_response())
}

async fn get_project(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Result<Json<Value>, ApiError> {
    let project = state.get(&id)?;
    let project = project.lock().await;
    if project.deleted {
        return Err(ApiError::not_found(&id));
    }
    Ok(Json(project_view(&id, &project)))
}

async fn get_plantuml(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Result<Response, ApiError> {
    let project = state.get(&id)?;
    let project = project.lock().await;
    if project.deleted {
        return Err(ApiError::not_found(&id));
    }
    let text = render(&project.session.model);
    Ok(([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], text).into_response())
}

fn conflict(expected: u64, current: u64) -> ApiError {
    ApiError::new(
        StatusCode::CONFLICT,
        "revision_conflict",
        format!("expected revision {expected}, project is at {current}"),
    )
}

async fn apply_edit(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Json<Value>, ApiError> {
    let project = state.get(&id)?;
    let req: EditRequest = parse_body(&body)?;
    let mut guard = project.lock().await;
    let p = &mut *guard;
    if p.deleted {
        return Err(ApiError::not_found(&id));
    }
    if req.expected_revision != p.session.revision {
        return Err(conflict(req.expected_revision, p.session.revision));
    }
    p.session.apply_edit(&req.command)?;
    if let Err(e) = persist(state.path(&id), &p.result, &p.session).await {
        p.session.undo().expect("just applied");
        return Err(e);
    }
    Ok(Json(model_view(&id, &p.session)))
}

async fn undo(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Json<Value>, ApiError> {
    let project = state.get(&id)?;
    let req: UndoRequest = if body.iter().all(u8::is_ascii_whitespace) {
        UndoRequest::default()
    } else {
        parse_body(&body)?
    };
    let mut guard = project.lock().await;
    let p = &mut *guard;
    if p.deleted {
        return Err(ApiError::not_found(&id));
    }
    if let Some(expected) = req.expected_revision.filter(|&r| r != p.session.revision) {
        return Err(conflict(expected, p.session.revision));
    }
    let before = p.session.clone();
    p.session.undo()?;
    if let Err(e) = persist(state.path(&id), &p.result, &p.session).await {
        p.session = before;
        return Err(e);
    }
    Ok(Json(model_view(&id, &p.session)))
}

async fn delete_project(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Result<StatusCode, ApiError> {
    let project = state.get(&id)?;
    let mut p = project.lock().await;
    if p.deleted {
        return Err(ApiError::not_found(&id));
    }
    p.deleted = true;
    state.projects.write().expect("project table lock").remove(&id);
    match tokio::fs::remove_file(state.path(&id)).await {
        Ok(()) => Ok(StatusCode::NO_CONTENT),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(StatusCode::NO_CONTENT),
        Err(e) => Err(ApiError::internal(e.to_string())),
    }
}

async fn api_not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint")
}

/// Routes for the JSON API, plus the web UI from `assets` (or a short
/// built-in page) at `/`.
pub fn router(state: Arc<AppState>, assets: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/projects", post(create_project))
        .route("/projects/{id}", get(get_project).delete(delete_project))
        .route("/projects/{id}/edits", post(apply_edit))
        .route("/projects/{id}/undo", post(undo))
        .route("/projects/{id}/plantuml", get(get_plantuml))
        .fallback(api_not_found)
        .with_state(state);
    let app = Router::new().nest("/api", api);
    match assets {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app.route("/", get(|| async { Html(FALLBACK_PAGE) })),
    }
}

pub async fn serve(pipeline: Pipeline, options: ServeOptions, log: &mut dyn Write) -> Result<(), CliError> {
    let (state, skipped) = AppState::open(pipeline, options.data_dir.clone())
        .map_err(|e| CliError::Input(anyhow::anyhow!("data directory {}: {e}", options.data_dir.display())))?;
    for s in skipped {
        let _ = writeln!(log, "warning: skipped {s}");
    }
    let addr: SocketAddr = format!("{}:{}", options.host, options.port)
        .parse()
        .map_err(|e| CliError::Input(anyhow::anyhow!("bad address: {e}")))?;
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|e| CliError::Input(anyhow::anyhow!("cannot listen on {addr}: {e}")))?;
    let _ = writeln!(
        log,
        "listening on http://{} (projects in {})",
        listener.local_addr().unwrap_or(addr),
        options.data_dir.display()
    );
    let app = router(Arc::new(state), options.assets.as_deref());
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .map_err(|e| CliError::Internal(e.into()))
}
