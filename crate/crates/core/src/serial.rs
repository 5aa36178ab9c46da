//! Deterministic snapshots of a [`Context`].
//!
//! Everything goes through `serde_json::Value`, whose maps are ordered, so
//! the emitted text has sorted keys regardless of struct field order.
//! Integers are written as decimal strings. The fingerprint is the SHA-256
//! of that canonical text.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cohomology::{Cochain1, Cocycle2};
use crate::construction::{BuildOptions, Context, Summand};
use crate::group::Subgroup;
use crate::int::Int;
use crate::lattice::GLattice;

pub const FORMAT: &str = "crossprod-context/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub p: u32,
    pub rank: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub subgroup: Subgroup,
    pub class_order: Int,
    pub transversal: Vec<usize>,
    pub offset: usize,
    pub f: Cochain1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranks {
    pub q: usize,
    pub m_omega: usize,
    pub p: usize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattices {
    pub q: GLattice,
    pub m_omega: GLattice,
    pub p: GLattice,
    pub m: GLattice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycles {
    pub c12: Cocycle2,
    pub c3: Cocycle2,
    pub c4: Cocycle2,
    pub omega: Cocycle2,
}

/// Distinguished elements of `A₂(G12)`, as coordinates in `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embeddings {
    pub u12: Vec<Int>,
    pub b1: Vec<Int>,
    pub b2: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSnapshot {
    pub format: String,
    pub options: BuildOptions,
    pub group: GroupRecord,
    pub ranks: Ranks,
    pub q_summands: Vec<Summand>,
    pub lattices: Lattices,
    pub cocycles: Cocycles,
    pub family: Vec<FamilyRecord>,
    pub embeddings: Embeddings,
}

#[derive(Debug, thiserror::Error)]
pub enum SnapshotError {
    #[error("malformed snapshot: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported snapshot format {0:?}")]
    Format(String),
}

impl ContextSnapshot {
    pub fn of(ctx: &Context) -> ContextSnapshot {
        let g = ctx.group();
        let [q, m_omega, p, m] = ctx.ranks();
        let a2 = ctx.a2();
        ContextSnapshot {
            format: FORMAT.to_string(),
            options: ctx.options(),
            group: GroupRecord {
                p: g.p(),
                rank: g.rank(),
                generators: (1..=g.rank()).map(|i| format!("s{i}")).collect(),
            },
            ranks: Ranks { q, m_omega, p, m },
            q_summands: ctx.q_summands().to_vec(),
            lattices: Lattices {
                q: ctx.q().clone(),
                m_omega: ctx.m_omega().clone(),
                p: ctx.permutation_lattice().clone(),
                m: ctx.m().clone(),
            },
            cocycles: Cocycles {
                c12: ctx.c12().clone(),
                c3: ctx.c3().clone(),
                c4: ctx.c4().clone(),
                omega: ctx.omega().clone(),
            },
            family: ctx
                .family()
                .iter()
                .map(|f| FamilyRecord {
                    subgroup: f.subgroup.clone(),
                    class_order: f.class_order.clone(),
                    transversal: f.transversal.clone(),
                    offset: f.offset,
                    f: f.f.clone(),
                })
                .collect(),
            embeddings: Embeddings {
                u12: ctx.u12_in_m(),
                b1: ctx.embed_a2(a2.b1(), m),
                b2: ctx.embed_a2(a2.b2(), m),
            },
        }
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    /// Parses a snapshot; lattices are re-validated on the way in.
    pub fn from_json(text: &str) -> Result<ContextSnapshot, SnapshotError> {
        let s: ContextSnapshot = serde_json::from_str(text)?;
        if s.format != FORMAT {
            return Err(SnapshotError::Format(s.format));
        }
        Ok(s)
    }

    pub fn fingerprint(&self) -> String {
        sha256_hex(self.to_json().as_bytes())
    }
}

/// Sorted-key JSON text with a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    // Value's object map is a BTreeMap, so keys come out sorted
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Fingerprint of the context's canonical snapshot.
pub fn fingerprint(ctx: &Context) -> String {
    ContextSnapshot::of(ctx).fingerprint()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        #[derive(Serialize)]
        struct T {
            zeta: u8,
            alpha: Int,
        }
        let s = canonical_json(&T { zeta: 1, alpha: Int::small(-5) });
        assert_eq!(s, "{\n  \"alpha\": \"-5\",\n  \"zeta\": 1\n}\n");
    }

    #[test]
    fn digest_of_empty() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
