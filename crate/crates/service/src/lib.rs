//! HTTP service for the portal: a document-per-entity file store with a
//! write-ahead journal, bearer-token authentication and the JSON API.
//!
//! Reads work on an immutable snapshot of the portal; every write goes
//! through a single writer that persists the touched documents before the
//! new snapshot becomes visible.

pub mod api;
pub mod auth;
pub mod config;
pub mod error;
pub mod store;

use std::fs;
use std::sync::{Arc, Mutex, RwLock};

use acgt_core::workflow::Portal;
use thiserror::Error;

pub use api::router;
pub use auth::{AuthMode, Authenticator, Principal};
pub use config::Config;
pub use error::{ApiError, ErrorBody};
pub use store::{CrashPoint, Document, Store, StoreError};

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Config(#[from] config::ConfigError),
    #[error(transparent)]
    Auth(#[from] auth::AuthError),
    #[error("cannot read {path}: {source}")]
    TokenFile { path: String, source: std::io::Error },
    #[error("server error: {0}")]
    Io(#[from] std::io::Error),
}

struct Shared {
    snapshot: RwLock<Arc<Portal>>,
    writer: Mutex<Store>,
    auth: Authenticator,
    course: String,
}

#[derive(Clone)]
pub struct AppState(Arc<Shared>);

impl AppState {
    pub fn new(store: Store, auth: Authenticator, course: impl Into<String>) -> Result<Self, StoreError> {
        let portal = store.load()?;
        Ok(AppState(Arc::new(Shared {
            snapshot: RwLock::new(Arc::new(portal)),
            writer: Mutex::new(store),
            auth,
            course: course.into(),
        })))
    }

    /// Opens the store under `config.data_dir` and builds the authenticator.
    pub fn from_config(config: &Config) -> Result<Self, ServiceError> {
        let store = Store::open(&config.data_dir)?;
        let auth = match config.auth_mode {
            AuthMode::Dev => Authenticator::dev(config.course.clone()),
            AuthMode::Static => {
                let path = config.data_dir.join(config::TOKEN_FILE);
                let text = fs::read_to_string(&path).map_err(|source| ServiceError::TokenFile {
                    path: path.display().to_string(),
                    source,
                })?;
                Authenticator::from_token_table(&text)?
            }
        };
        Ok(Self::new(store, auth, config.course.clone())?)
    }

    pub fn snapshot(&self) -> Arc<Portal> {
        self.0.snapshot.read().unwrap_or_else(|e| e.into_inner()).clone()
    }

    pub fn auth(&self) -> &Authenticator {
        &self.0.auth
    }

    pub fn course(&self) -> &str {
        &self.0.course
    }

    /// Test hook forwarded to the store.
    pub fn inject_crash(&self, point: Option<CrashPoint>) {
        self.0.writer.lock().unwrap_or_else(|e| e.into_inner()).inject_crash(point);
    }

    /// Runs `f` on a copy of the portal. An outer error discards the copy.
    /// Otherwise the returned documents are persisted and the copy becomes
    /// the visible snapshot, even when the inner result is an error (a
    /// failed publish still records its failure).
    pub fn write<T>(
        &self,
        f: impl FnOnce(&mut Portal) -> Result<(Result<T, ApiError>, Vec<Document>), ApiError>,
    ) -> Result<T, ApiError> {
        let mut store = self.0.writer.lock().unwrap_or_else(|e| e.into_inner());
        let mut next = (*self.snapshot()).clone();
        let (result, docs) = f(&mut next)?;
        store.commit(docs)?;
        *self.0.snapshot.write().unwrap_or_else(|e| e.into_inner()) = Arc::new(next);
        result
    }
}

/// Binds `0.0.0.0:PORT` and serves until Ctrl-C.
pub async fn serve(config: Config) -> Result<(), ServiceError> {
    let state = AppState::from_config(&config)?;
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", config.port)).await?;
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
