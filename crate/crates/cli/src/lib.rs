//! Batch front end: file formats, task runners, and the invariant
//! verification suites behind the `texradon` binary.

use std::fmt;

pub mod format;
pub mod tasks;
pub mod verify;

/// Task failures carrying their process exit code: 2 tolerance failure,
/// 3 infeasible cubature, 4 I/O or malformed input.
#[derive(Debug)]
pub enum TaskError {
    Tolerance(String),
    Infeasible(String),
    Io(String),
}

impl TaskError {
    pub fn exit_code(&self) -> i32 {
        match self {
            TaskError::Tolerance(_) => 2,
            TaskError::Infeasible(_) => 3,
            TaskError::Io(_) => 4,
        }
    }
}

impl fmt::Display for TaskError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaskError::Tolerance(m) => write!(f, "tolerance failure: {m}"),
            TaskError::Infeasible(m) => write!(f, "infeasible cubature: {m}"),
            TaskError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<std::io::Error> for TaskError {
    fn from(e: std::io::Error) -> Self {
        TaskError::Io(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for TaskError {
    fn from(e: serde_json::Error) -> Self {
        TaskError::Io(format!("json error: {e}"))
    }
}

impl From<texradon_core::Error> for TaskError {
    fn from(e: texradon_core::Error) -> Self {
        match e {
            texradon_core::Error::Infeasible { residual } => {
                TaskError::Infeasible(format!("moment system residual {residual:e}"))
            }
            texradon_core::Error::CertificationFailed {
                separation,
                covering,
                bound,
            } => TaskError::Tolerance(format!(
                "lattice certification failed: separation {separation:e}, covering {covering:e}, bound {bound:e}"
            )),
            other => TaskError::Io(format!("invalid input: {other:?}")),
        }
    }
}

pub type TaskResult<T> = Result<T, TaskError>;

/// Thread count: explicit flag, else TEXRADON_THREADS, else 1.
pub fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("TEXRADON_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .filter(|&n| n >= 1)
    .unwrap_or(1)
}

/// Apply `f` to every item, possibly on several threads, with the output
/// order fixed by the input order so results are bitwise reproducible.
pub fn map_ordered<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if threads <= 1 || items.len() < 2 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let mut out: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        for (chunk_in, chunk_out) in items.chunks(chunk).zip(out.chunks_mut(chunk)) {
            s.spawn(|| {
                for (item, slot) in chunk_in.iter().zip(chunk_out.iter_mut()) {
                    *slot = Some(f(item));
                }
            });
        }
    });
    out.into_iter().map(|o| o.expect("every slot filled")).collect()
}
