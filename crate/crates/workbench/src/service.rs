//! HTTP/JSON frame service over a workspace directory.

use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::{Path as UrlPath, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;

use crate::document::DesignDocument;
use crate::error::{Error, Result, Violation};
use crate::frames::{classify_model, mesh_frame, range_of, surface_at, DEFAULT_RESOLUTION};
use crate::obj::to_obj;

/// Designs stored as `designs/<id>.json`. Reads are unsynchronized; every mutation holds the
/// single writer lock.
#[derive(Debug)]
pub struct Workspace {
    root: PathBuf,
    writer: tokio::sync::Mutex<()>,
}

impl Workspace {
    pub fn open(root: impl AsRef<Path>) -> Result<Self> {
        let root = root.as_ref().to_path_buf();
        std::fs::create_dir_all(root.join("designs"))?;
        Ok(Self {
            root,
            writer: tokio::sync::Mutex::new(()),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path_of(&self, id: &str) -> Result<PathBuf> {
        let valid =
            id.len() == 7 && id.starts_with('d') && id[1..].bytes().all(|b| b.is_ascii_digit());
        if !valid {
            return Err(Error::NotFound(id.to_string()));
        }
        Ok(self.root.join("designs").join(format!("{id}.json")))
    }

    /// Stores a validated document and returns its new id.
    pub async fn insert(&self, doc: &DesignDocument) -> Result<String> {
        let _guard = self.writer.lock().await;
        let dir = self.root.join("designs");
        let mut last = 0u32;
        for entry in std::fs::read_dir(&dir)? {
            let name = entry?.file_name();
            let name = name.to_string_lossy();
            if let Some(k) = name
                .strip_prefix('d')
                .and_then(|s| s.strip_suffix(".json"))
                .and_then(|s| s.parse::<u32>().ok())
            {
                last = last.max(k);
            }
        }
        let id = format!("d{:06}", last + 1);
        let tmp = dir.join(format!(".{id}.tmp"));
        std::fs::write(&tmp, doc.to_json())?;
        std::fs::rename(&tmp, dir.join(format!("{id}.json")))?;
        Ok(id)
    }

    pub fn get(&self, id: &str) -> Result<DesignDocument> {
        let path = self.path_of(id)?;
        let text = match std::fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(Error::NotFound(id.to_string()))
            }
            Err(e) => return Err(e.into()),
        };
        DesignDocument::from_json(&text)
    }
}

/// Error body with a status code per error class.
pub struct ApiError(pub Error);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        Self(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let message = self.0.to_string();
        let (status, body) = match self.0 {
            Error::SchemaViolation(v) => (
                StatusCode::BAD_REQUEST,
                json!({"error": "schema_violation", "message": message, "violations": [v]}),
            ),
            Error::InvariantViolation(vs) => (
                StatusCode::BAD_REQUEST,
                json!({"error": "invariant_violation", "message": message, "violations": vs}),
            ),
            Error::OutOfRange { t, range, blocking } => (
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({
                    "error": "out_of_range",
                    "message": message,
                    "t": t,
                    "range": range,
                    "blocking": blocking,
                }),
            ),
            Error::NotFound(_) => (
                StatusCode::NOT_FOUND,
                json!({"error": "not_found", "message": message}),
            ),
            Error::Core(_) | Error::Unsupported(_) => (
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({"error": "computation_failed", "message": message}),
            ),
            Error::Io(_) | Error::Json(_) => (
                StatusCode::INTERNAL_SERVER_ERROR,
                json!({"error": "internal", "message": message}),
            ),
        };
        (status, Json(body)).into_response()
    }
}

type Shared = Arc<Workspace>;
type ApiResult<T> = std::result::Result<T, ApiError>;

#[derive(Debug, Deserialize)]
pub struct FrameQuery {
    #[serde(default)]
    pub t: Option<f64>,
    /// Samples per direction for smooth surfaces.
    #[serde(default)]
    pub res: Option<usize>,
}

pub fn router(workspace: Shared) -> Router {
    Router::new()
        .route("/designs", post(create))
        .route("/designs/{id}", get(fetch))
        .route("/designs/{id}/range", get(range))
        .route("/designs/{id}/mesh", get(mesh))
        .route("/designs/{id}/obj", get(obj))
        .route("/designs/{id}/classify", get(classify))
        .with_state(workspace)
}

async fn create(State(ws): State<Shared>, body: Bytes) -> ApiResult<Response> {
    let text = std::str::from_utf8(&body)
        .map_err(|e| Error::SchemaViolation(Violation::new("document", "Schema", e.to_string())))?;
    let doc = DesignDocument::from_json(text)?;
    let id = ws.insert(&doc).await?;
    let location = format!("/designs/{id}");
    Ok((
        StatusCode::CREATED,
        [(header::LOCATION, location)],
        Json(json!({"id": id, "kind": doc.kind()})),
    )
        .into_response())
}

async fn fetch(State(ws): State<Shared>, UrlPath(id): UrlPath<String>) -> ApiResult<Response> {
    let doc = ws.get(&id)?;
    Ok(([(header::CONTENT_TYPE, "application/json")], doc.to_json()).into_response())
}

async fn range(State(ws): State<Shared>, UrlPath(id): UrlPath<String>) -> ApiResult<Response> {
    let model = ws.get(&id)?.model()?;
    Ok(Json(range_of(&model)?).into_response())
}

async fn classify(State(ws): State<Shared>, UrlPath(id): UrlPath<String>) -> ApiResult<Response> {
    let model = ws.get(&id)?.model()?;
    Ok(Json(classify_model(&model)?).into_response())
}

fn frame_query(q: std::result::Result<Query<FrameQuery>, QueryRejection>) -> Result<(f64, usize)> {
    let Query(q) = q.map_err(|e| {
        Error::SchemaViolation(Violation::new("query", "InvalidQuery", e.body_text()))
    })?;
    Ok((q.t.unwrap_or(0.0), q.res.unwrap_or(DEFAULT_RESOLUTION)))
}

async fn mesh(
    State(ws): State<Shared>,
    UrlPath(id): UrlPath<String>,
    query: std::result::Result<Query<FrameQuery>, QueryRejection>,
) -> ApiResult<Response> {
    let (t, res) = frame_query(query)?;
    let model = ws.get(&id)?.model()?;
    let frame = tokio::task::spawn_blocking(move || mesh_frame(&model, t, res))
        .await
        .map_err(|e| Error::Unsupported(format!("worker failed: {e}")))??;
    Ok(Json(frame).into_response())
}

async fn obj(
    State(ws): State<Shared>,
    UrlPath(id): UrlPath<String>,
    query: std::result::Result<Query<FrameQuery>, QueryRejection>,
) -> ApiResult<Response> {
    let (t, res) = frame_query(query)?;
    let model = ws.get(&id)?.model()?;
    let text = tokio::task::spawn_blocking(move || surface_at(&model, t, res).map(|s| to_obj(&s)))
        .await
        .map_err(|e| Error::Unsupported(format!("worker failed: {e}")))??;
    Ok(([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], text).into_response())
}

/// Serves `workspace_dir` on `addr` until the process ends.
pub async fn serve(workspace_dir: impl AsRef<Path>, addr: SocketAddr) -> Result<()> {
    let ws = Arc::new(Workspace::open(workspace_dir)?);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(ws)).await?;
    Ok(())
}
