//! Bearer-token authentication.
//!
//! * `dev` mode accepts tokens of the form `role:id` or
//!   `role:id:course1,course2`. Without a course list the principal is
//!   enrolled in the service's course.
//! * `static` mode looks tokens up in a table loaded from a file with lines
//!   `token<TAB>role<TAB>id<TAB>course1,course2`.

use std::collections::{BTreeSet, HashMap};
use std::str::FromStr;

use acgt_core::workflow::{Actor, Role};
use thiserror::Error;

use crate::store::valid_student_id;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Principal {
    pub id: String,
    pub role: Role,
    pub courses: BTreeSet<String>,
}

impl Principal {
    pub fn actor(&self) -> Actor {
        Actor::new(self.id.clone(), self.role)
    }

    pub fn enrolled_in(&self, course: &str) -> bool {
        self.courses.contains(course)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuthError {
    #[error("unknown auth mode `{0}` (expected dev or static)")]
    UnknownMode(String),
    #[error("token file line {line}: {message}")]
    TokenFile { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuthMode {
    Dev,
    Static,
}

impl FromStr for AuthMode {
    type Err = AuthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dev" => Ok(AuthMode::Dev),
            "static" => Ok(AuthMode::Static),
            _ => Err(AuthError::UnknownMode(s.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Authenticator {
    Dev { course: String },
    Static(HashMap<String, Principal>),
}

fn parse_principal(role: &str, id: &str, courses: Option<&str>, default_course: &str) -> Option<Principal> {
    let role = role.parse().ok()?;
    if !valid_student_id(id) {
        return None;
    }
    let courses = match courses {
        Some(list) => list.split(',').map(str::trim).filter(|c| !c.is_empty()).map(String::from).collect(),
        None => BTreeSet::from([default_course.to_string()]),
    };
    Some(Principal {
        id: id.to_string(),
        role,
        courses,
    })
}

impl Authenticator {
    pub fn dev(course: impl Into<String>) -> Self {
        Authenticator::Dev { course: course.into() }
    }

    /// Parses a token table. Blank lines and `#` comments are skipped.
    pub fn from_token_table(text: &str) -> Result<Self, AuthError> {
        let mut table = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let err = |message: &str| AuthError::TokenFile {
                line: line_no,
                message: message.to_string(),
            };
            if fields.len() != 4 {
                return Err(err("expected token, role, id and courses separated by tabs"));
            }
            let p = parse_principal(fields[1], fields[2], Some(fields[3]), "").ok_or_else(|| err("invalid role or id"))?;
            if table.insert(fields[0].to_string(), p).is_some() {
                return Err(err("duplicate token"));
            }
        }
        Ok(Authenticator::Static(table))
    }

    /// Resolves an `Authorization` header value to a principal.
    pub fn authenticate(&self, header: Option<&str>) -> Option<Principal> {
        let token = header?.strip_prefix("Bearer ")?.trim();
        match self {
            Authenticator::Dev { course } => {
                let mut parts = token.splitn(3, ':');
                let role = parts.next()?;
                let id = parts.next()?;
                parse_principal(role, id, parts.next(), course)
            }
            Authenticator::Static(table) => table.get(token).cloned(),
        }
    }
}
