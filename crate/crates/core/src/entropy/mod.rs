//! Exact subsystem entropies of the code state.
//!
//! The joint state `R Q_1 ... Q_n` is a uniform superposition over the row
//! space of the generator `G`. For such a state the entropy (in q-ary units)
//! of a set of registers equals the dimension of the intersection of the
//! column spans of `G` restricted to that set and to its complement. This
//! turns every entropy into an exact integer computed by rank arithmetic.
//!
//! [`full_profile`] evaluates every subsystem with `R` atomic and compares it
//! with `min(|S|, 2(k+d-1) - |S|)`. The functions in [`checks`] audit a
//! profile against the entropy identities and inequalities the code must
//! satisfy.

pub mod checks;

use serde::Serialize;

use crate::code::{CodeDescriptor, CodeParams, QuantumMdsCode};
use crate::error::{Error, Result};
use crate::linalg::intersection_dim;
use crate::subsystem::{register_names, RegisterSet, SubsystemSpec};

/// Entropy of an arbitrary register set, in q-ary units.
pub fn register_entropy(code: &QuantumMdsCode, registers: &RegisterSet) -> Result<usize> {
    let g = code.generator();
    if registers.total() != g.cols() {
        return Err(Error::InvalidSubsystem(format!(
            "register set over {} registers, code state has {}",
            registers.total(),
            g.cols()
        )));
    }
    if g.rank() != g.rows() {
        return Err(Error::InvalidState(format!(
            "generator rank {} below its {} rows",
            g.rank(),
            g.rows()
        )));
    }
    let inside = g.select_columns(&registers.to_vec())?;
    let outside = g.select_columns(&registers.complement().to_vec())?;
    intersection_dim(&inside, &outside)
}

/// Entropy of a subsystem with `R` atomic, in q-ary units.
pub fn subsystem_entropy(code: &QuantumMdsCode, sub: &SubsystemSpec) -> Result<usize> {
    let p = code.params();
    register_entropy(code, &sub.registers(p.k, p.n)?)
}

/// `min(size, 2(k+d-1) - size)` for `0 <= size <= k+n`.
pub fn expected_entropy(size: usize, k: usize, d: usize) -> Result<usize> {
    if k < 1 || d < 2 {
        return Err(Error::InvalidParams("need k >= 1 and d >= 2".into()));
    }
    let total = 2 * (k + d - 1);
    if size > total {
        return Err(Error::InvalidSubsystem(format!(
            "subsystem size {size} exceeds the {total} qudits of the joint state"
        )));
    }
    Ok(size.min(total - size))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    pub subsystem: SubsystemSpec,
    pub size: usize,
    pub entropy: usize,
    pub expected: usize,
    pub matches: bool,
}

/// A subsystem that splits `R`. No expected value is asserted for these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedEntry {
    pub registers: RegisterSet,
    pub size: usize,
    pub entropy: usize,
}

/// Entropies of all `2^(n+1)` atomic subsystems, indexed by
/// [`SubsystemSpec::encoding`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyProfile {
    descriptor: CodeDescriptor,
    params: CodeParams,
    entries: Vec<ProfileEntry>,
    extended: Vec<ExtendedEntry>,
}

/// Profile of every subsystem with `R` atomic.
pub fn full_profile(code: &QuantumMdsCode) -> Result<EntropyProfile> {
    let p = code.params();
    let mut entries = Vec::with_capacity(1 << (p.n + 1));
    for encoding in 0..(1u64 << (p.n + 1)) {
        let subsystem = SubsystemSpec::from_encoding(p.n, encoding)?;
        let size = subsystem.size(p.k);
        let entropy = subsystem_entropy(code, &subsystem)?;
        let expected = expected_entropy(size, p.k, p.d)?;
        entries.push(ProfileEntry {
            subsystem,
            size,
            entropy,
            expected,
            matches: entropy == expected,
        });
    }
    Ok(EntropyProfile {
        descriptor: code.descriptor(),
        params: p,
        entries,
        extended: Vec::new(),
    })
}

/// [`full_profile`] plus every register set that contains some but not all
/// of the reference qudits.
pub fn extended_profile(code: &QuantumMdsCode) -> Result<EntropyProfile> {
    let mut profile = full_profile(code)?;
    let p = code.params();
    let total = p.total_qudits();
    let r_mask = (1u64 << p.k) - 1;
    for mask in 0..(1u64 << total) {
        let r_bits = mask & r_mask;
        if r_bits == 0 || r_bits == r_mask {
            continue;
        }
        let registers = RegisterSet::from_mask(total, mask)?;
        profile.extended.push(ExtendedEntry {
            registers,
            size: registers.len(),
            entropy: register_entropy(code, &registers)?,
        });
    }
    Ok(profile)
}

impl EntropyProfile {
    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn descriptor(&self) -> &CodeDescriptor {
        &self.descriptor
    }

    /// Atomic entries in canonical encoding order.
    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    pub fn extended(&self) -> &[ExtendedEntry] {
        &self.extended
    }

    /// Entropy of the atomic subsystem with the given encoding.
    ///
    /// Panics if the encoding does not belong to this code.
    pub fn entropy(&self, encoding: u64) -> usize {
        self.entries[encoding as usize].entropy
    }

    pub fn entropy_of(&self, sub: &SubsystemSpec) -> Result<usize> {
        sub.validate(self.params.n)?;
        Ok(self.entropy(sub.encoding()))
    }

    pub fn all_match(&self) -> bool {
        self.entries.iter().all(|e| e.matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ProfileEntry> {
        self.entries.iter().filter(|e| !e.matches)
    }

    /// Distinct `(size, entropy)` pairs, sorted. For a profile consistent
    /// with the size-only formula this is one row per size.
    pub fn size_entropy_rows(&self) -> Vec<(usize, usize)> {
        let mut rows: Vec<(usize, usize)> = self
            .entries
            .iter()
            .map(|e| (e.size, e.entropy))
            .chain(self.extended.iter().map(|e| (e.size, e.entropy)))
            .collect();
        rows.sort_unstable();
        rows.dedup();
        rows
    }

    pub fn to_csv(&self) -> String {
        size_entropy_csv(&self.size_entropy_rows())
    }

    /// Serializable form with subsystem names `"R"`, `"Q1"`, ...
    pub fn document(&self) -> ProfileDocument {
        let k = self.params.k;
        let mut entries: Vec<DocumentEntry> = self
            .entries
            .iter()
            .map(|e| DocumentEntry {
                subsystem: e.subsystem.names(),
                size: e.size,
                entropy: e.entropy,
                expected: Some(e.expected),
                matches: Some(e.matches),
            })
            .collect();
        entries.extend(self.extended.iter().map(|e| DocumentEntry {
            subsystem: register_names(k, &e.registers),
            size: e.size,
            entropy: e.entropy,
            expected: None,
            matches: None,
        }));
        ProfileDocument {
            code: self.descriptor.clone(),
            entries,
        }
    }
}

/// Renders `size,entropy` rows with a header line.
pub fn size_entropy_csv(rows: &[(usize, usize)]) -> String {
    let mut out = String::from("size,entropy\n");
    for (s, h) in rows {
        out.push_str(&format!("{s},{h}\n"));
    }
    out
}

/// Rows `(s, min(s, 2(k+d-1)-s))` for `s = 0..=2(k+d-1)`, from the formula
/// alone.
pub fn figure_rows(k: usize, d: usize) -> Result<Vec<(usize, usize)>> {
    let total = 2 * (k + d - 1);
    (0..=total)
        .map(|s| expected_entropy(s, k, d).map(|h| (s, h)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileDocument {
    pub code: CodeDescriptor,
    pub entries: Vec<DocumentEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DocumentEntry {
    pub subsystem: Vec<String>,
    pub size: usize,
    pub entropy: usize,
    pub expected: Option<usize>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}
