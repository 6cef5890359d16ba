use std::fmt;

use serde::Serialize;

/// Symbolic description of a constructible group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupSpec {
    Sym(u32),
    Alt(u32),
    Cyc(u32),
    /// Symmetries of the n-gon, order 2n, on n points.
    Dih(u32),
    /// x ↦ x + 1 and x ↦ r·x on Z/n, the second of order m.
    Metacyclic { n: u32, r: u32, m: u32 },
    /// Sp of dimension `dim` over GF(q), on nonzero vectors.
    Sp { dim: u32, q: u32 },
    /// PSp of dimension `dim` over GF(q), on projective points.
    PSp { dim: u32, q: u32 },
    /// Minus-type orthogonal group of dimension `dim`, on nonzero vectors.
    GOMinus { dim: u32, q: u32 },
    PSL2(u32),
    PGL2(u32),
    DirectProduct(Vec<GroupSpec>),
    Wreath(Box<GroupSpec>, u32),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sym(n) => write!(f, "S({n})"),
            GroupSpec::Alt(n) => write!(f, "A({n})"),
            GroupSpec::Cyc(n) => write!(f, "C({n})"),
            GroupSpec::Dih(n) => write!(f, "D({n})"),
            GroupSpec::Metacyclic { n, r, m } => write!(f, "MC({n},{r},{m})"),
            GroupSpec::Sp { dim, q } => write!(f, "Sp({dim},{q})"),
            GroupSpec::PSp { dim, q } => write!(f, "PSp({dim},{q})"),
            GroupSpec::GOMinus { dim, q } => write!(f, "GO-({dim},{q})"),
            GroupSpec::PSL2(q) => write!(f, "PSL2({q})"),
            GroupSpec::PGL2(q) => write!(f, "PGL2({q})"),
            GroupSpec::DirectProduct(parts) => {
                write!(f, "x(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            GroupSpec::Wreath(a, k) => write!(f, "wr({a},{k})"),
        }
    }
}
