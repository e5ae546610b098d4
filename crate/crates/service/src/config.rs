use std::env;
use std::path::PathBuf;

use thiserror::Error;

use crate::auth::{AuthError, AuthMode};

/// Name of the token table read from the data directory in static mode.
pub const TOKEN_FILE: &str = "tokens.tsv";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("PORT must be a port number, got `{0}`")]
    Port(String),
    #[error(transparent)]
    Auth(#[from] AuthError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub port: u16,
    pub data_dir: PathBuf,
    pub auth_mode: AuthMode,
    /// Course whose roster students must be on.
    pub course: String,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            port: 8080,
            data_dir: PathBuf::from("data"),
            auth_mode: AuthMode::Dev,
            course: "CGT".into(),
        }
    }
}

impl Config {
    /// Reads `PORT`, `DATA_DIR` and `AUTH_MODE`, falling back to defaults.
    pub fn from_env() -> Result<Self, ConfigError> {
        let mut c = Config::default();
        if let Ok(p) = env::var("PORT") {
            c.port = p.parse().map_err(|_| ConfigError::Port(p))?;
        }
        if let Ok(d) = env::var("DATA_DIR") {
            c.data_dir = d.into();
        }
        if let Ok(m) = env::var("AUTH_MODE") {
            c.auth_mode = m.parse()?;
        }
        Ok(c)
    }
}
