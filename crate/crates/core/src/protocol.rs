//! JSON wire protocol for the engine.
//!
//! One request per line:
//!
//! ```text
//! {"v":1,"op":"create","n":4}
//! {"v":1,"op":"drag","session":1,"dowel":2,"target":{"arm":"h","c":0}}
//! {"v":1,"op":"reset","session":1}
//! {"v":1,"op":"state","session":1}
//! {"v":1,"op":"export","session":1}
//! ```
//!
//! Successful replies carry the state and the letters the command emitted;
//! failures carry a stable error code:
//!
//! ```text
//! {"v":1,"ok":true,"state":{...},"letters":[1]}
//! {"v":1,"ok":false,"err":"StemOccupied"}
//! ```
//!
//! The same bodies are served over HTTP by [`route_http`].

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::engine::{BoxState, DragCommand, Engine, SessionId};
use crate::tpage::TPoint;

pub const VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Create,
    Drag,
    Reset,
    State,
    Export,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Request {
    pub v: Option<u64>,
    pub op: Op,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub session: Option<SessionId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quandle: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dowel: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TPoint>,
}

/// Serialised view of a [`BoxState`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateView {
    pub session: SessionId,
    pub n: usize,
    pub dowels: Vec<TPoint>,
    pub rank: Vec<usize>,
    pub word: Vec<i32>,
    pub loops: Vec<String>,
    pub quandle: Option<Vec<String>>,
}

impl From<&BoxState> for StateView {
    fn from(s: &BoxState) -> Self {
        Self {
            session: s.id,
            n: s.n,
            dowels: s.dowels.clone(),
            rank: s.rank.clone(),
            word: s.word.letters().to_vec(),
            loops: s.loops.images().iter().map(|w| w.to_string()).collect(),
            quandle: s
                .quandle
                .as_ref()
                .map(|t| t.iter().map(|q| q.to_string()).collect()),
        }
    }
}

/// Protocol-level failures that never reach the engine.
const BAD_REQUEST: &str = "BadRequest";
const MISSING_VERSION: &str = "MissingVersion";
const UNSUPPORTED_VERSION: &str = "UnsupportedVersion";

fn ok(state: &BoxState, letters: &[i32]) -> Value {
    json!({
        "v": VERSION,
        "ok": true,
        "state": StateView::from(state),
        "letters": letters,
    })
}

fn err(code: &str) -> Value {
    json!({ "v": VERSION, "ok": false, "err": code })
}

pub fn handle(engine: &Engine, req: &Request) -> Value {
    match req.v {
        None => return err(MISSING_VERSION),
        Some(VERSION) => {}
        Some(_) => return err(UNSUPPORTED_VERSION),
    }
    let session = || req.session.ok_or(BAD_REQUEST);
    let result: Result<Value, &str> = (|| {
        Ok(match req.op {
            Op::Create => {
                let n = req.n.ok_or(BAD_REQUEST)?;
                engine
                    .create_session(n, req.quandle.unwrap_or(false))
                    .map(|s| ok(&s, &[]))
                    .map_err(|e| e.code())?
            }
            Op::Drag => {
                let cmd = DragCommand {
                    dowel: req.dowel.ok_or(BAD_REQUEST)?,
                    target: req.target.ok_or(BAD_REQUEST)?,
                };
                engine
                    .drag(session()?, cmd)
                    .map(|(s, letters)| ok(&s, &letters))
                    .map_err(|e| e.code())?
            }
            Op::Reset => engine
                .reset(session()?)
                .map(|s| ok(&s, &[]))
                .map_err(|e| e.code())?,
            Op::State => engine
                .state(session()?)
                .map(|s| ok(&s, &[]))
                .map_err(|e| e.code())?,
            Op::Export => {
                let motion = engine.export_motion(session()?).map_err(|e| e.code())?;
                json!({ "v": VERSION, "ok": true, "motion": motion })
            }
        })
    })();
    result.unwrap_or_else(err)
}

/// Handles one line of the line-delimited protocol.
pub fn handle_line(engine: &Engine, line: &str) -> String {
    let reply = match serde_json::from_str::<Value>(line) {
        Err(_) => err(BAD_REQUEST),
        Ok(value) => dispatch_value(engine, value),
    };
    reply.to_string()
}

fn dispatch_value(engine: &Engine, value: Value) -> Value {
    if value.get("v").is_none() {
        return err(MISSING_VERSION);
    }
    match serde_json::from_value::<Request>(value) {
        Ok(req) => handle(engine, &req),
        Err(_) => err(BAD_REQUEST),
    }
}

/// Routes an HTTP request onto the protocol. Returns the status code and the
/// JSON body.
///
/// - `POST /session` with `{"v":1,"n":4}`
/// - `POST /session/{id}/drag` with `{"v":1,"dowel":2,"target":{...}}`
/// - `POST /session/{id}/reset` with `{"v":1}`
/// - `GET /session/{id}` and `GET /session/{id}/motion`
pub fn route_http(engine: &Engine, method: &str, path: &str, body: &str) -> (u16, String) {
    let segments: Vec<&str> = path
        .split('?')
        .next()
        .unwrap_or("")
        .split('/')
        .filter(|s| !s.is_empty())
        .collect();
    let parse_id = |s: &str| s.parse::<SessionId>().ok();
    let op_and_session = match (method, segments.as_slice()) {
        ("POST", ["session"]) => Some((Op::Create, None)),
        ("POST", ["session", id, "drag"]) => parse_id(id).map(|id| (Op::Drag, Some(id))),
        ("POST", ["session", id, "reset"]) => parse_id(id).map(|id| (Op::Reset, Some(id))),
        ("GET", ["session", id]) => parse_id(id).map(|id| (Op::State, Some(id))),
        ("GET", ["session", id, "motion"]) => parse_id(id).map(|id| (Op::Export, Some(id))),
        _ => None,
    };
    let Some((op, session)) = op_and_session else {
        return (404, err("NotFound").to_string());
    };

    let mut value = if method == "GET" && body.trim().is_empty() {
        json!({ "v": VERSION })
    } else {
        match serde_json::from_str::<Value>(body) {
            Ok(v @ Value::Object(_)) => v,
            _ => return (400, err(BAD_REQUEST).to_string()),
        }
    };
    let obj = value.as_object_mut().expect("object");
    obj.insert("op".into(), serde_json::to_value(op).expect("op"));
    if let Some(id) = session {
        obj.insert("session".into(), id.into());
    }

    let reply = dispatch_value(engine, value);
    let status = if reply["ok"] == true {
        200
    } else {
        match reply["err"].as_str() {
            Some("UnknownSession") => 404,
            Some(BAD_REQUEST | MISSING_VERSION | UNSUPPORTED_VERSION) => 400,
            _ => 409,
        }
    };
    (status, reply.to_string())
}
