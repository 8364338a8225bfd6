//! Point-count providers `|X(F_{q^m})|` for catalog varieties and their
//! combinations, together with optional cell data.

mod elliptic;
mod ingest;
mod weil;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::upow;
use crate::gw::{FqTag, GwError};

pub use elliptic::{elliptic_curve, elliptic_point_count};
pub use ingest::{parse_source_json, IngestError};
pub use weil::WeilData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarietyError {
    #[error(transparent)]
    Gw(#[from] GwError),
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u64, right: u64 },
    #[error("point counts are only defined for m >= 1")]
    ZeroDegree,
    #[error("negative point count {value} at m = {m}")]
    NegativeCount { m: u32, value: BigInt },
    #[error("insufficient data: count for m = {m} requested, table has {available} entries")]
    InsufficientData { m: u32, available: usize },
    #[error("empty count table")]
    EmptyTable,
    #[error("invalid Grassmannian G({r},{n}): need 0 <= r < n")]
    InvalidGrassmannian { r: i64, n: i64 },
    #[error("dimension must be nonnegative, got {0}")]
    NegativeDimension(i64),
    #[error("singular curve: 4A^3 + 27B^2 vanishes mod {p}")]
    SingularCurve { p: u64 },
    #[error("even characteristic unsupported for elliptic curves")]
    EvenCharacteristic,
    #[error("elliptic curves are supported over prime fields only, got q = {0}")]
    NotPrimeField(u64),
    #[error("Weil polynomial Q_{0} is not unit-normalized (constant term must be 1)")]
    WeilNotUnitNormalized(usize),
    #[error("inconsistent Weil data: negative count {value} at m = {m}")]
    InconsistentWeilData { m: u32, value: BigInt },
}

/// Number of `i`-cells in a strict cellular structure, `b[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellData {
    b: Vec<u64>,
}

impl CellData {
    /// Trailing zero ranks are dropped; an all-zero list keeps a single entry.
    pub fn new(mut b: Vec<u64>) -> Self {
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        if b.is_empty() {
            b.push(0);
        }
        CellData { b }
    }

    pub fn ranks(&self) -> &[u64] {
        &self.b
    }

    pub fn top_degree(&self) -> usize {
        self.b.len() - 1
    }

    /// Cells of a product: `b_k = sum_{i+j=k} b_i b'_j`.
    pub fn product(&self, other: &CellData) -> CellData {
        let mut b = vec![0u64; self.b.len() + other.b.len() - 1];
        for (i, x) in self.b.iter().enumerate() {
            for (j, y) in other.b.iter().enumerate() {
                b[i + j] += x * y;
            }
        }
        CellData::new(b)
    }

    pub fn disjoint_union(&self, other: &CellData) -> CellData {
        let len = self.b.len().max(other.b.len());
        let at = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        CellData::new((0..len).map(|i| at(&self.b, i) + at(&other.b, i)).collect())
    }

    /// `sum_i b_i Q^i`, the point count of a strictly cellular variety over
    /// a field with `Q` elements.
    pub fn count_at(&self, big_q: &BigInt) -> BigInt {
        self.b.iter().rev().fold(BigInt::zero(), |acc, &bi| acc * big_q + BigInt::from(bi))
    }
}

/// How a source produces its counts.
#[derive(Clone, Debug, PartialEq)]
pub enum SourceKind {
    ProjectiveSpace(u32),
    AffineSpace(u32),
    /// r-planes in P^n.
    Grassmannian {
        r: u32,
        n: u32,
    },
    /// Weil restriction of P^1 along F_{q^2}/F_q.
    ResP1,
    /// Prime-field elliptic curve with Frobenius trace `a`.
    Elliptic {
        a_coeff: i64,
        b_coeff: i64,
        trace: BigInt,
    },
    Weil(WeilData),
    Table(Vec<BigInt>),
    Product(PointCountSource, PointCountSource),
    DisjointUnion(PointCountSource, PointCountSource),
    Complement {
        ambient: PointCountSource,
        closed: PointCountSource,
    },
}

/// A variety over `F_q`, known through its point counts over `F_{q^m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCountSource {
    field: FqTag,
    dim: u32,
    proper: bool,
    label: String,
    cells: Option<CellData>,
    kind: Arc<SourceKind>,
}

impl PointCountSource {
    fn build(field: FqTag, dim: u32, proper: bool, label: String, cells: Option<CellData>, kind: SourceKind) -> Self {
        PointCountSource { field, dim, proper, label, cells, kind: Arc::new(kind) }
    }

    pub fn field(&self) -> FqTag {
        self.field
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cells(&self) -> Option<&CellData> {
        self.cells.as_ref()
    }

    pub fn kind(&self) -> &SourceKind {
        &self.kind
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Overrides the properness flag, e.g. for tables known to come from a
    /// smooth proper variety.
    pub fn with_proper(mut self, proper: bool) -> Self {
        self.proper = proper;
        self
    }

    /// `|X(F_{q^m})|` for `m >= 1`.
    pub fn count(&self, m: u32) -> Result<BigInt, VarietyError> {
        if m == 0 {
            return Err(VarietyError::ZeroDegree);
        }
        let q = self.field.q();
        let big_q = upow(q, m as u64);
        let value = match &*self.kind {
            SourceKind::ProjectiveSpace(n) => (0..=*n as u64).map(|i| upow(q, i * m as u64)).sum(),
            SourceKind::Grassmannian { r, n } => gaussian_binomial(&big_q, n + 1, r + 1),
            SourceKind::AffineSpace(n) => upow(q, (*n as u64) * m as u64),
            SourceKind::ResP1 => {
                if m % 2 == 1 {
                    upow(q, 2 * m as u64) + 1
                } else {
                    let s = &big_q + 1;
                    &s * &s
                }
            }
            SourceKind::Elliptic { trace, .. } => elliptic::count_from_trace(q, trace, m),
            SourceKind::Weil(w) => w.count(m)?,
            SourceKind::Table(t) => {
                t.get(m as usize - 1).cloned().ok_or(VarietyError::InsufficientData { m, available: t.len() })?
            }
            SourceKind::Product(x, y) => x.count(m)? * y.count(m)?,
            SourceKind::DisjointUnion(x, y) => x.count(m)? + y.count(m)?,
            SourceKind::Complement { ambient, closed } => ambient.count(m)? - closed.count(m)?,
        };
        if value.is_negative() {
            return Err(VarietyError::NegativeCount { m, value });
        }
        Ok(value)
    }

    /// Counts for `m = 1..=order`.
    pub fn counts(&self, order: usize) -> Result<Vec<BigInt>, VarietyError> {
        (1..=order as u32).map(|m| self.count(m)).collect()
    }
}

impl fmt::Display for PointCountSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.label, self.field)
    }
}

/// `[n choose k]_Q`, evaluated exactly by the product formula.
pub fn gaussian_binomial(big_q: &BigInt, n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for j in 0..k {
        num *= crate::arith::big_pow(big_q, (n - j) as u64) - 1;
        den *= crate::arith::big_pow(big_q, (j + 1) as u64) - 1;
    }
    if den.is_zero() {
        // Q = 1: the ordinary binomial coefficient
        return (0..k).fold(BigInt::from(1), |acc, j| acc * (n - j) / (j + 1));
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quot
}

/// Sizes of partitions fitting a `rows x cols` box, indexed by number of boxes.
pub fn box_partition_counts(rows: u32, cols: u32) -> Vec<u64> {
    // coefficients of [rows + cols choose rows]_Q, via Pascal's q-recurrence
    let n = rows + cols;
    let k = rows;
    let mut prev: Vec<Vec<u64>> = vec![vec![1]];
    for n_i in 1..=n {
        let mut cur: Vec<Vec<u64>> = Vec::with_capacity(n_i as usize + 1);
        for k_i in 0..=n_i {
            if k_i == 0 || k_i == n_i {
                cur.push(vec![1]);
                continue;
            }
            // [n, k] = [n-1, k-1] + Q^k [n-1, k]
            let a = &prev[k_i as usize - 1];
            let b = &prev[k_i as usize];
            let len = a.len().max(b.len() + k_i as usize);
            let mut c = vec![0u64; len];
            for (i, x) in a.iter().enumerate() {
                c[i] += x;
            }
            for (i, x) in b.iter().enumerate() {
                c[i + k_i as usize] += x;
            }
            cur.push(c);
        }
        prev = cur;
    }
    prev[k as usize].clone()
}

pub fn point(field: FqTag) -> PointCountSource {
    projective_space(field, 0).with_label("pt")
}

/// `P^n`: one cell in each dimension `0..=n`.
pub fn projective_space(field: FqTag, n: u32) -> PointCountSource {
    let cells = CellData::new(vec![1; n as usize + 1]);
    PointCountSource::build(field, n, true, format!("Pn({n})"), Some(cells), SourceKind::ProjectiveSpace(n))
}

pub fn affine_space(field: FqTag, n: u32) -> PointCountSource {
    PointCountSource::build(field, n, false, format!("A({n})"), None, SourceKind::AffineSpace(n))
}

/// `G(r, n)`, the r-planes in `P^n`, with its Schubert cells.
pub fn grassmannian(field: FqTag, r: i64, n: i64) -> Result<PointCountSource, VarietyError> {
    if r < 0 || r >= n || n > u32::MAX as i64 {
        return Err(VarietyError::InvalidGrassmannian { r, n });
    }
    let (r, n) = (r as u32, n as u32);
    let cells = CellData::new(box_partition_counts(r + 1, n - r));
    let dim = (r + 1) * (n - r);
    Ok(PointCountSource::build(
        field,
        dim,
        true,
        format!("Gr({r},{n})"),
        Some(cells),
        SourceKind::Grassmannian { r, n },
    ))
}

/// `Res_{F_{q^2}/F_q} P^1`.
pub fn weil_restriction_p1(field: FqTag) -> PointCountSource {
    PointCountSource::build(field, 2, true, "resP1".into(), None, SourceKind::ResP1)
}

fn same_field(x: &PointCountSource, y: &PointCountSource) -> Result<FqTag, VarietyError> {
    if x.field != y.field {
        return Err(VarietyError::FieldMismatch { left: x.field.q(), right: y.field.q() });
    }
    Ok(x.field)
}

pub fn product(x: &PointCountSource, y: &PointCountSource) -> Result<PointCountSource, VarietyError> {
    let field = same_field(x, y)?;
    let cells = match (&x.cells, &y.cells) {
        (Some(a), Some(b)) => Some(a.product(b)),
        _ => None,
    };
    Ok(PointCountSource::build(
        field,
        x.dim + y.dim,
        x.proper && y.proper,
        format!("prod({},{})", x.label, y.label),
        cells,
        SourceKind::Product(x.clone(), y.clone()),
    ))
}

pub fn disjoint_union(x: &PointCountSource, y: &PointCountSource) -> Result<PointCountSource, VarietyError> {
    let field = same_field(x, y)?;
    let cells = match (&x.cells, &y.cells) {
        (Some(a), Some(b)) => Some(a.disjoint_union(b)),
        _ => None,
    };
    Ok(PointCountSource::build(
        field,
        x.dim.max(y.dim),
        x.proper && y.proper,
        format!("disj({},{})", x.label, y.label),
        cells,
        SourceKind::DisjointUnion(x.clone(), y.clone()),
    ))
}

/// The open complement of `closed` in `ambient`; the caller asserts the
/// inclusion, and a negative count surfaces as an error when evaluated.
pub fn complement(ambient: &PointCountSource, closed: &PointCountSource) -> Result<PointCountSource, VarietyError> {
    let field = same_field(ambient, closed)?;
    Ok(PointCountSource::build(
        field,
        ambient.dim,
        false,
        format!("({} \\ {})", ambient.label, closed.label),
        None,
        SourceKind::Complement { ambient: ambient.clone(), closed: closed.clone() },
    ))
}

/// A source backed by an explicit table, `counts(m) = table[m - 1]`.
pub fn from_table(field: FqTag, table: Vec<BigInt>, proper: bool) -> Result<PointCountSource, VarietyError> {
    if table.is_empty() {
        return Err(VarietyError::EmptyTable);
    }
    if let Some((i, v)) = table.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(VarietyError::NegativeCount { m: i as u32 + 1, value: v.clone() });
    }
    Ok(PointCountSource::build(field, 0, proper, "table".into(), None, SourceKind::Table(table)))
}

pub fn from_weil_data(data: WeilData) -> Result<PointCountSource, VarietyError> {
    data.check_normalized()?;
    let field = data.field();
    let dim = data.dim();
    Ok(PointCountSource::build(field, dim, true, "weil".into(), None, SourceKind::Weil(data)))
}

/// The standard list of proper test varieties over `field`: a point,
/// `P^1..P^5`, `G(1,3)`, `P^1×P^1`, `P^1×P^2`, `G(1,3)×P^1`, and for odd `q`
/// the Weil restriction of `P^1` and an elliptic curve (a short Weierstrass
/// model over prime fields, Weil data with trace 1 otherwise).
pub fn catalog(field: FqTag) -> Vec<PointCountSource> {
    let p1 = projective_space(field, 1);
    let g13 = grassmannian(field, 1, 3).expect("valid");
    let mut out = vec![point(field)];
    out.extend((1..=5).map(|n| projective_space(field, n)));
    out.push(g13.clone());
    out.push(product(&p1, &p1).expect("same field").with_label("P1xP1"));
    out.push(product(&p1, &projective_space(field, 2)).expect("same field"));
    out.push(product(&g13, &p1).expect("same field"));
    if field.odd() {
        out.push(weil_restriction_p1(field));
        if field.k() == 1 {
            let (a, b) = (1..field.p() as i64)
                .flat_map(|a| (1..field.p() as i64).map(move |b| (a, b)))
                .find(|&(a, b)| elliptic_curve(field, a, b).is_ok())
                .expect("a nonsingular curve exists for p >= 3");
            out.push(elliptic_curve(field, a, b).expect("checked"));
        } else {
            let q = BigInt::from(field.q());
            let polys = vec![vec![1.into(), (-1).into()], vec![1.into(), (-1).into(), q.clone()], vec![1.into(), -q]];
            out.push(from_weil_data(WeilData::new(field, polys)).expect("normalized").with_label("ell(weil)"));
        }
    }
    out
}
