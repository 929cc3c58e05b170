//! The quantum Reed-Solomon MDS code built from a Vandermonde matrix.
//!
//! For parameters `[[n, k, d]]_q` with `n = k + 2(d-1)` the code is described
//! by the `(k+d-1) x n` matrix `(A; B)` whose row `r` (from the top) holds
//! `alpha_i^(k+d-2-r)`. The first `k` rows form `A`, the last `d-1` rows `B`.
//! The joint state of the reference and the coded qudits is the uniform
//! superposition over the row space of the generator `G = [E_k | (A; B)]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{is_prime, Field};
use crate::linalg::MatrixGF;
use crate::subsystem::MAX_REGISTERS;

/// Validated `[[n, k, d]]_q` parameters of a quantum MDS code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub q: u64,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, d: usize, q: u64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if d < 2 {
            return Err(Error::InvalidParams("d must be at least 2".into()));
        }
        if n != k + 2 * (d - 1) {
            return Err(Error::InvalidParams(format!(
                "n must equal k+2(d-1) = {} (got n = {n})",
                k + 2 * (d - 1)
            )));
        }
        if !is_prime(q) {
            return Err(Error::InvalidParams(format!(
                "q must be prime (got q = {q})"
            )));
        }
        if q < n as u64 {
            return Err(Error::InvalidParams(format!(
                "q must be at least n = {n} (got q = {q})"
            )));
        }
        if k + n > MAX_REGISTERS {
            return Err(Error::InvalidParams(format!(
                "k+n must be at most {MAX_REGISTERS} (got {})",
                k + n
            )));
        }
        Ok(Self { n, k, d, q })
    }

    /// Number of generator rows, `k + d - 1`. Also half the joint system size.
    pub fn generator_rows(&self) -> usize {
        self.k + self.d - 1
    }

    /// Number of qudits in `R Q_1 ... Q_n`.
    pub fn total_qudits(&self) -> usize {
        self.k + self.n
    }

    /// Size of every surviving set that must decode, `n - (d-1)`.
    pub fn surviving_size(&self) -> usize {
        self.n - (self.d - 1)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]_{}", self.n, self.k, self.d, self.q)
    }
}

/// JSON descriptor `{"q", "n", "k", "d", "alphas"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub alphas: Vec<u64>,
}

/// A constructed Vandermonde quantum MDS code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumMdsCode {
    params: CodeParams,
    field: Field,
    alphas: Vec<u64>,
    ab: MatrixGF,
    generator: MatrixGF,
}

impl QuantumMdsCode {
    /// Builds the code; evaluation points default to `0, 1, ..., n-1`.
    pub fn construct(params: CodeParams, alphas: Option<&[u64]>) -> Result<Self> {
        let alphas = match alphas {
            Some(a) => a.to_vec(),
            None => (0..params.n as u64).collect(),
        };
        for (i, &x) in alphas.iter().enumerate() {
            if let Some(j) = alphas[i + 1..].iter().position(|&y| y == x) {
                return Err(Error::DuplicateAlpha {
                    first: i + 1,
                    second: i + j + 2,
                    value: x,
                });
            }
        }
        Self::from_parts_unchecked(params, alphas)
    }

    /// Like [`construct`](Self::construct) but without the distinctness
    /// check, so [`validate`](Self::validate) can diagnose degenerate point
    /// sets.
    pub fn from_parts_unchecked(params: CodeParams, alphas: Vec<u64>) -> Result<Self> {
        let params = CodeParams::new(params.n, params.k, params.d, params.q)?;
        let field = Field::new(params.q)?;
        if alphas.len() != params.n {
            return Err(Error::InvalidParams(format!(
                "expected {} evaluation points, got {}",
                params.n,
                alphas.len()
            )));
        }
        if let Some(&value) = alphas.iter().find(|&&a| a >= params.q) {
            return Err(Error::NotAnElement { value, q: params.q });
        }
        let ab = vandermonde(field, &alphas, params.generator_rows());
        let r_block = MatrixGF::identity(field, params.generator_rows())
            .select_columns(&(0..params.k).collect::<Vec<_>>())?;
        let generator = r_block.hstack(&ab)?;
        Ok(Self {
            params,
            field,
            alphas,
            ab,
            generator,
        })
    }

    pub fn from_descriptor(desc: &CodeDescriptor) -> Result<Self> {
        let params = CodeParams::new(desc.n, desc.k, desc.d, desc.q)?;
        Self::construct(params, Some(&desc.alphas))
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            q: self.params.q,
            n: self.params.n,
            k: self.params.k,
            d: self.params.d,
            alphas: self.alphas.clone(),
        }
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn alphas(&self) -> &[u64] {
        &self.alphas
    }

    /// The Vandermonde matrix `(A; B)`.
    pub fn ab(&self) -> &MatrixGF {
        &self.ab
    }

    /// First `k` rows of `(A; B)`.
    pub fn a(&self) -> MatrixGF {
        self.ab.row_range(0, self.params.k).expect("k <= rows")
    }

    /// Last `d-1` rows of `(A; B)`.
    pub fn b(&self) -> MatrixGF {
        self.ab
            .row_range(self.params.k, self.params.generator_rows())
            .expect("rows in range")
    }

    /// Joint-state generator `[E_k | (A; B)]`; columns are the registers in
    /// canonical order.
    pub fn generator(&self) -> &MatrixGF {
        &self.generator
    }

    /// Splits `(A; B)` by surviving coded qudits (1-based labels).
    ///
    /// Both unitarity conditions of the decoder are checked here: the
    /// surviving block must be square and invertible, and so must the `B`
    /// block of the erased columns.
    pub fn erasure_submatrices(&self, surviving: &[usize]) -> Result<ErasureSplit> {
        let p = self.params;
        let mut surv = surviving.to_vec();
        surv.sort_unstable();
        if let Some(&bad) = surv.iter().find(|&&i| i == 0 || i > p.n) {
            return Err(Error::InvalidErasure(format!(
                "Q{bad} out of range for a code of length {}",
                p.n
            )));
        }
        if surv.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidErasure("surviving set has duplicates".into()));
        }
        if surv.len() != p.surviving_size() {
            return Err(Error::InvalidErasure(format!(
                "need exactly {} surviving qudits (n-(d-1)), got {}",
                p.surviving_size(),
                surv.len()
            )));
        }
        let erased: Vec<usize> = (1..=p.n).filter(|i| !surv.contains(i)).collect();
        let zero_based = |v: &[usize]| v.iter().map(|i| i - 1).collect::<Vec<_>>();
        let surviving_ab = self.ab.select_columns(&zero_based(&surv))?;
        let erased_ab = self.ab.select_columns(&zero_based(&erased))?;
        let surviving_inverse = surviving_ab.invert()?;
        let erased_b = erased_ab.row_range(p.k, p.generator_rows())?;
        erased_b.invert()?;
        Ok(ErasureSplit {
            surviving: surv,
            erased,
            surviving_ab,
            surviving_inverse,
            erased_ab,
        })
    }

    /// Checks every structural invariant of the code. Failures become report
    /// entries rather than errors.
    pub fn validate(&self) -> ValidationReport {
        let p = self.params;
        let rows = p.generator_rows();
        let mut checks = Vec::new();

        checks.push(Check::new(
            "parameters",
            CodeParams::new(p.n, p.k, p.d, p.q).is_ok(),
            format!("{p}: n = k+2(d-1), q prime, q >= n"),
        ));

        let duplicates: Vec<String> = (0..p.n)
            .flat_map(|i| (i + 1..p.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.alphas[i] == self.alphas[j])
            .map(|(i, j)| format!("alpha_{} = alpha_{}", i + 1, j + 1))
            .collect();
        checks.push(Check::new(
            "distinct evaluation points",
            duplicates.is_empty(),
            if duplicates.is_empty() {
                format!("alphas = {:?}", self.alphas)
            } else {
                duplicates.join(", ")
            },
        ));

        let expected = vandermonde(self.field, &self.alphas, rows);
        checks.push(Check::new(
            "vandermonde rows",
            expected == self.ab,
            format!("row r holds alpha_i^({}-r)", rows - 1),
        ));

        let rank_ab = self.ab.rank();
        checks.push(Check::new(
            "rank(AB) = k+d-1",
            rank_ab == rows,
            format!("rank {rank_ab}, expected {rows}"),
        ));

        let (total, singular) = count_singular(&self.ab, p.n, rows, 0, rows);
        checks.push(Check::new(
            "square AB submatrices invertible",
            singular == 0,
            format!(
                "{} of {total} column subsets of size {rows} invertible",
                total - singular
            ),
        ));

        let (total, singular) = count_singular(&self.ab, p.n, p.d - 1, p.k, rows);
        checks.push(Check::new(
            "square B submatrices invertible",
            singular == 0,
            format!(
                "{} of {total} column subsets of size {} invertible",
                total - singular,
                p.d - 1
            ),
        ));

        let r_block_ok = (0..p.k).all(|c| {
            self.generator
                .column(c)
                .iter()
                .enumerate()
                .all(|(r, &v)| v == u64::from(r == c))
        });
        checks.push(Check::new(
            "generator R block is standard basis",
            r_block_ok,
            format!("first {} generator columns are e_1..e_{}", p.k, p.k),
        ));

        let rank_g = self.generator.rank();
        checks.push(Check::new(
            "rank(G) = k+d-1",
            rank_g == rows,
            format!("rank {rank_g}, expected {rows}"),
        ));

        ValidationReport { checks }
    }
}

impl fmt::Display for QuantumMdsCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} alphas={:?}", self.params, self.alphas)
    }
}

/// Column split of `(A; B)` for one erasure pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasureSplit {
    /// Surviving coded-qudit labels, ascending, 1-based.
    pub surviving: Vec<usize>,
    /// Erased coded-qudit labels, ascending, 1-based.
    pub erased: Vec<usize>,
    /// `(A_I; B_I)`, square of size `k+d-1`.
    pub surviving_ab: MatrixGF,
    pub surviving_inverse: MatrixGF,
    /// `(A_Ic; B_Ic)`, of shape `(k+d-1) x (d-1)`.
    pub erased_ab: MatrixGF,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn vandermonde(field: Field, alphas: &[u64], rows: usize) -> MatrixGF {
    let mut entries = Vec::with_capacity(rows * alphas.len());
    for r in 0..rows {
        let e = (rows - 1 - r) as u64;
        entries.extend(alphas.iter().map(|&a| field.pow(a, e)));
    }
    MatrixGF::new(field, rows, alphas.len(), entries).expect("entries are reduced")
}

/// Over all `size`-column subsets, counts those whose restriction to rows
/// `row_start..row_end` is singular. Returns `(subsets, singular)`.
fn count_singular(
    m: &MatrixGF,
    n: usize,
    size: usize,
    row_start: usize,
    row_end: usize,
) -> (usize, usize) {
    let block = m
        .row_range(row_start, row_end)
        .expect("row range in bounds");
    let subsets = k_subsets(n, size);
    let singular = subsets
        .iter()
        .filter(|cols| {
            let sub = block.select_columns(cols).expect("columns in range");
            sub.rank() < size
        })
        .count();
    (subsets.len(), singular)
}

/// All `r`-element subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < r - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, r, current, out);
            current.pop();
        }
    }
    if r <= n {
        rec(0, n, r, &mut current, &mut out);
    }
    out
}
