use std::fmt;
use std::process::ExitCode;

use serde_json::json;

/// A user-facing failure that does not come from the library.
#[derive(Debug)]
pub struct UserError {
    pub code: &'static str,
    pub message: String,
}

impl UserError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        UserError {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for UserError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for UserError {}

const USER_ERROR: u8 = 2;
const INTERNAL_ERROR: u8 = 1;

/// Prints `{"error": CODE, "message": ...}` to stderr and picks the exit
/// status: 2 for bad input, 1 for anything unexpected.
pub fn report(err: &anyhow::Error) -> ExitCode {
    let message = format!("{err:#}");
    let (body, status) = if let Some(e) = err.downcast_ref::<koalign::Error>() {
        let mut body = json!({ "error": e.code(), "message": message });
        if let koalign::Error::InvalidCorpus(issues) = e {
            body["issues"] = json!(issues);
        }
        (body, USER_ERROR)
    } else if let Some(e) = err.downcast_ref::<UserError>() {
        (json!({ "error": e.code, "message": message }), USER_ERROR)
    } else {
        (
            json!({ "error": "INTERNAL", "message": message }),
            INTERNAL_ERROR,
        )
    };
    eprintln!("{body}");
    ExitCode::from(status)
}
