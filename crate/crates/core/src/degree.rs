//! Degrees in `N^k` and their extended variant with unbounded coordinates.
//!
//! The partial order `m <= n` is coordinatewise and is exposed through
//! [`Degree::le`]; `Degree` deliberately does not implement `PartialOrd` so
//! that a lexicographic comparison can never be mistaken for it.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::KgError;

/// An element of `N^k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn new(coords: Vec<u32>) -> Self {
        Degree(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Degree(vec![0; rank])
    }

    /// The generator `e_i` (0-based `i`).
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut d = Degree::zero(rank);
        d.0[i] = 1;
        d
    }

    /// `b·𝟙`
    pub fn splat(rank: usize, b: u32) -> Self {
        Degree(vec![b; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_coord(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &Degree) -> bool {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self ∧ other`
    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `self ∨ other`
    pub fn join(&self, other: &Degree) -> Degree {
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// `self - other`, failing if any coordinate would go negative.
    pub fn checked_sub(&self, other: &Degree) -> Result<Degree, KgError> {
        let mut out = Vec::with_capacity(self.rank());
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.checked_sub(*b) {
                Some(c) => out.push(c),
                None => {
                    return Err(KgError::DegreeUnderflow {
                        lhs: self.clone(),
                        rhs: other.clone(),
                    })
                }
            }
        }
        Ok(Degree(out))
    }

    /// Subtraction for callers that have already established `other <= self`.
    pub(crate) fn sub(&self, other: &Degree) -> Degree {
        self.checked_sub(other)
            .expect("degree subtraction precondition violated")
    }

    pub fn with(&self, i: usize, value: u32) -> Degree {
        let mut d = self.clone();
        d.0[i] = value;
        d
    }

    /// All degrees `d` with `0 <= d <= self`, in lexicographic order.
    pub fn box_below(&self) -> Vec<Degree> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &c in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=c).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }

    /// The colour word `0^{d_0} 1^{d_1} ...` of a path of this degree in normal form.
    pub fn sorted_word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
            .collect()
    }

    /// Parse `"1,2"`, `"(1,2)"` or a bare `"3"`; a single number is
    /// broadcast to all `rank` coordinates.
    pub fn parse_for_rank(s: &str, rank: usize) -> Result<Degree, String> {
        let d: Degree = s.parse()?;
        if d.rank() == rank {
            Ok(d)
        } else if d.rank() == 1 {
            Ok(Degree::splat(rank, d.0[0]))
        } else {
            Err(format!(
                "degree {d} has rank {} but the graph has rank {rank}",
                d.rank()
            ))
        }
    }
}

impl FromStr for Degree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Err("empty degree".into());
        }
        trimmed
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u32>()
                    .map_err(|e| format!("bad degree coordinate {c:?}: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Degree)
    }
}

impl Add for &Degree {
    type Output = Degree;

    fn add(self, rhs: &Degree) -> Degree {
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        &self + &rhs
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One coordinate of an [`ExtDegree`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum ExtCoord {
    Finite(u32),
    Unbounded,
}

/// An element of `(N ∪ {∞})^k`, used for degrees of boundary paths.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ExtDegree(Vec<ExtCoord>);

impl ExtDegree {
    pub fn new(coords: Vec<ExtCoord>) -> Self {
        ExtDegree(coords)
    }

    pub fn infinite(rank: usize) -> Self {
        ExtDegree(vec![ExtCoord::Unbounded; rank])
    }

    pub fn coords(&self) -> &[ExtCoord] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `m ∧ self`, always a finite degree.
    pub fn meet(&self, m: &Degree) -> Degree {
        Degree(
            self.0
                .iter()
                .zip(m.coords())
                .map(|(c, &x)| match c {
                    ExtCoord::Finite(d) => x.min(*d),
                    ExtCoord::Unbounded => x,
                })
                .collect(),
        )
    }

    /// Coordinatewise `m <= self`.
    pub fn contains(&self, m: &Degree) -> bool {
        self.0.iter().zip(m.coords()).all(|(c, &x)| match c {
            ExtCoord::Finite(d) => x <= *d,
            ExtCoord::Unbounded => true,
        })
    }
}

impl From<&Degree> for ExtDegree {
    fn from(d: &Degree) -> Self {
        ExtDegree(d.coords().iter().map(|&c| ExtCoord::Finite(c)).collect())
    }
}

impl fmt::Display for ExtDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match c {
                ExtCoord::Finite(d) => write!(f, "{d}")?,
                ExtCoord::Unbounded => write!(f, "∞")?,
            }
        }
        write!(f, ")")
    }
}
