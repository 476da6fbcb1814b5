//! JSON reports. Keys come out sorted (serde_json's default map), and all
//! polynomials are rendered in canonical text, so identical runs produce
//! identical bytes apart from the `elapsed_ms` field.

use serde_json::{json, Value};

use crate::groebner::{CompletionConfig, CompletionResult, Presentation};
use crate::par::Execution;
use crate::poly::Polynomial;
use crate::quotient::{dims_to_u64, Quotient};
use crate::words::{Alphabet, Word};

pub const SCHEMA: u32 = 1;

pub fn polys(ps: &[Polynomial], alphabet: &Alphabet) -> Value {
    ps.iter().map(|p| p.display(alphabet).to_string()).collect()
}

pub fn words(ws: &[Word], alphabet: &Alphabet) -> Value {
    ws.iter().map(|w| alphabet.display(w).to_string()).collect()
}

pub fn config(cfg: &CompletionConfig) -> Value {
    json!({
        "max_degree": cfg.max_degree,
        "max_iterations": cfg.max_iterations,
        "max_basis_size": cfg.max_basis_size,
        "execution": match cfg.execution {
            Execution::Sequential => "sequential",
            Execution::Parallel => "parallel",
        },
    })
}

pub fn presentation(p: &Presentation) -> Value {
    json!({
        "label": p.label,
        "alphabet": p.alphabet.letters().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "generators": polys(&p.generators, &p.alphabet),
    })
}

pub fn completion(r: &CompletionResult, with_snapshots: bool) -> Value {
    let mut v = json!({
        "status": r.status,
        "basis": polys(&r.basis, &r.alphabet),
        "basis_size": r.basis.len(),
        "iterations": r.iterations,
        "profile": r.profile(),
    });
    if with_snapshots {
        v["snapshots"] = r.snapshots.iter().map(|s| polys(s, &r.alphabet)).collect();
    }
    v
}

/// Finiteness, then either the normal words or a window of graded
/// dimensions.
pub fn quotient(q: &Quotient, window: usize) -> Value {
    let a = q.alphabet();
    match q.normal_words() {
        Ok(ws) => json!({
            "finite": true,
            "dimension": ws.len(),
            "normal_words": words(&ws, a),
        }),
        Err(_) => json!({
            "finite": false,
            "graded_dims": dims_json(&q.graded_dims(window)),
        }),
    }
}

/// The top-level envelope shared by every subcommand.
pub fn run_report(command: &[String], body: Value, elapsed_ms: u128) -> Value {
    let mut v = json!({
        "schema": SCHEMA,
        "command": command,
        "elapsed_ms": elapsed_ms,
    });
    if let (Value::Object(out), Value::Object(b)) = (&mut v, body) {
        out.extend(b);
    }
    v
}

/// Numbers where they fit in `u64`, decimal strings otherwise.
pub fn dims_json(dims: &[num::BigUint]) -> Value {
    match dims_to_u64(dims) {
        Some(v) => json!(v),
        None => dims.iter().map(|d| d.to_string()).collect(),
    }
}
