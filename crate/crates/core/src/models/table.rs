use rand::Rng;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::ModelError;

/// Tolerance for the normalization and positivity of a table.
pub const TABLE_TOL: f64 = 1e-12;

/// A ±1 measurement outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    fn index(self) -> usize {
        match self {
            Outcome::Plus => 0,
            Outcome::Minus => 1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Outcome::Plus => '+',
            Outcome::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    A,
    B,
}

/// Joint distribution P(σ, τ) of the two outcomes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityTable {
    p: [[f64; 2]; 2],
}

impl ProbabilityTable {
    /// Builds a table from `f(σ, τ)`, validating positivity and normalization.
    ///
    /// Entries in (−1e−14, 0) are rounding residue and are set to zero.
    pub fn from_fn<F: Fn(f64, f64) -> f64>(f: F) -> Result<Self, ModelError> {
        let mut p = [[0.0; 2]; 2];
        for s in Outcome::BOTH {
            for t in Outcome::BOTH {
                let v = f(s.sign(), t.sign());
                p[s.index()][t.index()] = if v < 0.0 && v > -1e-14 { 0.0 } else { v };
            }
        }
        Self::validated(p)
    }

    /// Table with rows indexed by σ ∈ (+, −) and columns by τ ∈ (+, −).
    pub fn from_rows(p: [[f64; 2]; 2]) -> Result<Self, ModelError> {
        Self::validated(p)
    }

    fn validated(p: [[f64; 2]; 2]) -> Result<Self, ModelError> {
        let entries = p.iter().flatten();
        if let Some(bad) = entries.clone().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(ModelError::InvalidTable(format!("entry {bad:e} is negative or not finite")));
        }
        let sum: f64 = entries.sum();
        if (sum - 1.0).abs() > TABLE_TOL {
            return Err(ModelError::InvalidTable(format!("entries sum to {sum}")));
        }
        Ok(Self { p })
    }

    pub fn uniform() -> Self {
        Self { p: [[0.25; 2]; 2] }
    }

    pub fn get(&self, sigma: Outcome, tau: Outcome) -> f64 {
        self.p[sigma.index()][tau.index()]
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        self.p
    }

    pub fn sum(&self) -> f64 {
        self.p.iter().flatten().sum()
    }

    /// ⟨στ⟩ under the table.
    pub fn correlator(&self) -> f64 {
        let mut c = 0.0;
        for s in Outcome::BOTH {
            for t in Outcome::BOTH {
                c += s.sign() * t.sign() * self.get(s, t);
            }
        }
        c
    }

    /// Marginal distribution of one party, as (P(+), P(−)).
    pub fn marginal(&self, party: Party) -> (f64, f64) {
        match party {
            Party::A => (self.p[0][0] + self.p[0][1], self.p[1][0] + self.p[1][1]),
            Party::B => (self.p[0][0] + self.p[1][0], self.p[0][1] + self.p[1][1]),
        }
    }

    /// P(σ | τ) for party A's outcome given party B's outcome `tau`, as (P(+|τ), P(−|τ)).
    pub fn conditional(&self, tau: Outcome) -> Result<(f64, f64), ModelError> {
        let (plus, minus) = self.marginal(Party::B);
        let pt = if tau == Outcome::Plus { plus } else { minus };
        if pt < 1e-14 {
            return Err(ModelError::UndefinedConditional(pt));
        }
        Ok((self.get(Outcome::Plus, tau) / pt, self.get(Outcome::Minus, tau) / pt))
    }

    /// Draws one outcome pair from the table.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (Outcome, Outcome) {
        let r: f64 = rng.random();
        let mut acc = 0.0;
        let cells = [(Outcome::Plus, Outcome::Plus), (Outcome::Plus, Outcome::Minus), (Outcome::Minus, Outcome::Plus)];
        for (s, t) in cells {
            let p = self.get(s, t);
            acc += p;
            if r < acc && p > 0.0 {
                return (s, t);
            }
        }
        // r fell into the last cell, or into rounding slack after a zero last cell
        if self.get(Outcome::Minus, Outcome::Minus) > 0.0 {
            (Outcome::Minus, Outcome::Minus)
        } else {
            cells.into_iter().rev().find(|(s, t)| self.get(*s, *t) > 0.0).expect("table has mass")
        }
    }
}

impl Serialize for ProbabilityTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        for s in Outcome::BOTH {
            for t in Outcome::BOTH {
                map.serialize_entry(&format!("{}{}", s.symbol(), t.symbol()), &self.get(s, t))?;
            }
        }
        map.end()
    }
}

pub fn sample_outcomes<R: Rng + ?Sized>(t: &ProbabilityTable, rng: &mut R) -> (Outcome, Outcome) {
    t.sample(rng)
}
