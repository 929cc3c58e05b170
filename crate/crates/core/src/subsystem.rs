//! Subsystems of the joint state `R Q_1 ... Q_n`.
//!
//! Registers are laid out in canonical order: the `k` qudits of the reference
//! system `R` first (registers `0..k`), then the coded qudits `Q_1..Q_n`
//! (registers `k..k+n`). [`SubsystemSpec`] is the atomic view where `R` is
//! all-or-nothing; [`RegisterSet`] addresses individual registers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Register sets are bitmasks, so the joint system is capped at 64 qudits.
pub const MAX_REGISTERS: usize = 64;

/// A set of register indices out of `total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegisterSet {
    total: usize,
    mask: u64,
}

impl RegisterSet {
    pub fn new(total: usize, registers: &[usize]) -> Result<Self> {
        if total > MAX_REGISTERS {
            return Err(Error::InvalidSubsystem(format!(
                "{total} registers exceeds the limit of {MAX_REGISTERS}"
            )));
        }
        let mut mask = 0u64;
        for &r in registers {
            if r >= total {
                return Err(Error::InvalidSubsystem(format!(
                    "register {r} out of range for {total} registers"
                )));
            }
            if mask & (1 << r) != 0 {
                return Err(Error::InvalidSubsystem(format!(
                    "register {r} listed twice"
                )));
            }
            mask |= 1 << r;
        }
        Ok(Self { total, mask })
    }

    pub fn from_mask(total: usize, mask: u64) -> Result<Self> {
        if total > MAX_REGISTERS || (total < 64 && mask >> total != 0) {
            return Err(Error::InvalidSubsystem(format!(
                "mask {mask:#b} does not fit {total} registers"
            )));
        }
        Ok(Self { total, mask })
    }

    pub fn empty(total: usize) -> Self {
        Self { total, mask: 0 }
    }

    pub fn full(total: usize) -> Self {
        Self {
            total,
            mask: full_mask(total),
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == full_mask(self.total)
    }

    pub fn contains(&self, register: usize) -> bool {
        register < self.total && self.mask & (1 << register) != 0
    }

    pub fn complement(&self) -> Self {
        Self {
            total: self.total,
            mask: !self.mask & full_mask(self.total),
        }
    }

    /// Registers in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.total).filter(move |&r| self.contains(r))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

fn full_mask(total: usize) -> u64 {
    if total >= 64 {
        u64::MAX
    } else {
        (1u64 << total) - 1
    }
}

/// A subsystem with `R` treated as a single `k`-qudit block.
///
/// Coded qudits use the 1-based labels `Q_1..Q_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsystemSpec {
    include_r: bool,
    q_indices: Vec<usize>,
}

impl SubsystemSpec {
    /// Builds a subsystem from `R` membership and 1-based coded-qudit labels.
    /// Labels are sorted; zero and duplicates are rejected. The upper bound
    /// is checked once the code length is known.
    pub fn new(include_r: bool, q_indices: &[usize]) -> Result<Self> {
        let mut sorted = q_indices.to_vec();
        sorted.sort_unstable();
        if sorted.first() == Some(&0) {
            return Err(Error::InvalidSubsystem(
                "coded qudits are labelled from 1".into(),
            ));
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubsystem(format!("Q{} listed twice", w[0])));
        }
        Ok(Self {
            include_r,
            q_indices: sorted,
        })
    }

    pub fn empty() -> Self {
        Self {
            include_r: false,
            q_indices: Vec::new(),
        }
    }

    pub fn everything(n: usize) -> Self {
        Self {
            include_r: true,
            q_indices: (1..=n).collect(),
        }
    }

    /// Decodes the atomic encoding: bit 0 is `R`, bit `i` is `Q_i`.
    pub fn from_encoding(n: usize, encoding: u64) -> Result<Self> {
        if n + 1 > MAX_REGISTERS || (n + 1 < 64 && encoding >> (n + 1) != 0) {
            return Err(Error::InvalidSubsystem(format!(
                "encoding {encoding:#b} does not fit R plus {n} coded qudits"
            )));
        }
        Ok(Self {
            include_r: encoding & 1 == 1,
            q_indices: (1..=n).filter(|i| encoding & (1 << i) != 0).collect(),
        })
    }

    pub fn encoding(&self) -> u64 {
        let mut e = u64::from(self.include_r);
        for &i in &self.q_indices {
            e |= 1 << i;
        }
        e
    }

    pub fn include_r(&self) -> bool {
        self.include_r
    }

    pub fn q_indices(&self) -> &[usize] {
        &self.q_indices
    }

    /// Number of qudits, counting `R` as `k`.
    pub fn size(&self, k: usize) -> usize {
        let r = if self.include_r { k } else { 0 };
        r + self.q_indices.len()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.q_indices.last() {
            Some(&last) if last > n => Err(Error::InvalidSubsystem(format!(
                "Q{last} out of range for a code of length {n}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn complement(&self, n: usize) -> Result<Self> {
        self.validate(n)?;
        Ok(Self {
            include_r: !self.include_r,
            q_indices: (1..=n).filter(|i| !self.q_indices.contains(i)).collect(),
        })
    }

    /// Register-level view in the canonical `R`-first layout.
    pub fn registers(&self, k: usize, n: usize) -> Result<RegisterSet> {
        self.validate(n)?;
        let mut regs: Vec<usize> = if self.include_r {
            (0..k).collect()
        } else {
            Vec::new()
        };
        regs.extend(self.q_indices.iter().map(|&i| k + i - 1));
        RegisterSet::new(k + n, &regs)
    }

    /// Report names: `"R"` then `"Q1".."Qn"`.
    pub fn names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.q_indices.len() + 1);
        if self.include_r {
            names.push("R".to_string());
        }
        names.extend(self.q_indices.iter().map(|i| format!("Q{i}")));
        names
    }
}

impl fmt::Display for SubsystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(","))
    }
}

/// Names for an arbitrary register set: `"R"` when it holds all of `R`,
/// otherwise `"R1".."Rk"` for the individual reference qudits.
pub fn register_names(k: usize, set: &RegisterSet) -> Vec<String> {
    let r_regs: Vec<usize> = set.iter().filter(|&r| r < k).collect();
    let mut names = Vec::new();
    if r_regs.len() == k && k > 0 {
        names.push("R".to_string());
    } else {
        names.extend(r_regs.iter().map(|r| format!("R{}", r + 1)));
    }
    names.extend(
        set.iter()
            .filter(|&r| r >= k)
            .map(|r| format!("Q{}", r - k + 1)),
    );
    names
}
