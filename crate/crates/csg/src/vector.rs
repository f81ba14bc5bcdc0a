//! Type compositions and coalition vectors, with the four order relations
//! everything else is built on: componentwise `<=`, the shift order,
//! incomparability, and the lexicographic tie-break order.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompositionError {
    #[error("type composition must have at least one class")]
    Empty,
    #[error("class {0} has size 0; every class must contain at least one agent")]
    ZeroPart(usize),
}

/// The vector of equivalence-class sizes `(n_1, ..., n_t)`.
///
/// Class 1 is the strongest class. `t` is the number of classes and
/// `n` the total agent count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeComposition {
    parts: Vec<u32>,
}

impl TypeComposition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CompositionError> {
        if parts.is_empty() {
            return Err(CompositionError::Empty);
        }
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(CompositionError::ZeroPart(i + 1));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of classes.
    pub fn class_count(&self) -> usize {
        self.parts.len()
    }

    /// Total number of agents.
    pub fn agent_count(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The full coalition vector, one entire class per entry.
    pub fn full_vector(&self) -> CoalitionVector {
        CoalitionVector::new(self.parts.clone())
    }

    pub fn zero_vector(&self) -> CoalitionVector {
        CoalitionVector::new(vec![0; self.parts.len()])
    }

    /// True iff `v` has matching length and stays within the class sizes.
    pub fn contains(&self, v: &CoalitionVector) -> bool {
        v.len() == self.parts.len() && v.entries().iter().zip(&self.parts).all(|(&s, &n)| s <= n)
    }

    /// Componentwise `self[i] >= other[i]`, same length. The domination
    /// order used by the extension lemma and by composition classification.
    pub fn dominates(&self, other: &TypeComposition) -> bool {
        self.parts.len() == other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a >= b)
    }

    /// Number of coalition vectors bound by this composition.
    pub fn grid_len(&self) -> usize {
        self.parts.iter().map(|&n| n as usize + 1).product()
    }
}

impl fmt::Display for TypeComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_paren_list(f, &self.parts)
    }
}

impl fmt::Debug for TypeComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Per-class counts of participating agents `(s_1, ..., s_t)`.
///
/// A vector is a pure value; whether it fits a particular composition is
/// checked where it is used, so the same vector can be reused across
/// compositions (extension constructions rely on that).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoalitionVector {
    entries: Vec<u32>,
}

impl CoalitionVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&s| s == 0)
    }

    pub fn sum(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// Componentwise `self[i] <= other[i]`.
    pub fn leq(&self, other: &CoalitionVector) -> bool {
        self.check_len(other);
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// The shift order: every prefix sum of `self` is `<=` the matching
    /// prefix sum of `other`. Larger means support moved toward stronger
    /// classes (or more support overall).
    pub fn shift_leq(&self, other: &CoalitionVector) -> bool {
        self.check_len(other);
        let mut a = 0u32;
        let mut b = 0u32;
        for (&x, &y) in self.entries.iter().zip(&other.entries) {
            a += x;
            b += y;
            if a > b {
                return false;
            }
        }
        true
    }

    /// Neither `shift_leq(self, other)` nor `shift_leq(other, self)`.
    pub fn incomparable(&self, other: &CoalitionVector) -> bool {
        self.check_len(other);
        let mut a = 0u32;
        let mut b = 0u32;
        let mut a_exceeds = false;
        let mut b_exceeds = false;
        for (&x, &y) in self.entries.iter().zip(&other.entries) {
            a += x;
            b += y;
            if a > b {
                a_exceeds = true;
            } else if b > a {
                b_exceeds = true;
            }
        }
        a_exceeds && b_exceeds
    }

    /// Lexicographic comparison: the first differing coordinate decides.
    pub fn lex_cmp(&self, other: &CoalitionVector) -> Ordering {
        self.check_len(other);
        self.entries.cmp(&other.entries)
    }

    /// Strictly greater in the lexicographic order. The two vectors must
    /// differ; this is the row order of the canonical matrix form.
    pub fn lex_gtr(&self, other: &CoalitionVector) -> bool {
        debug_assert!(
            self.entries != other.entries,
            "lex_gtr requires distinct vectors"
        );
        self.lex_cmp(other) == Ordering::Greater
    }

    fn check_len(&self, other: &CoalitionVector) {
        assert_eq!(
            self.entries.len(),
            other.entries.len(),
            "coalition vectors of different lengths: {} vs {}",
            self.entries.len(),
            other.entries.len()
        );
    }
}

impl fmt::Display for CoalitionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_paren_list(f, &self.entries)
    }
}

impl fmt::Debug for CoalitionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_paren_list(f: &mut fmt::Formatter<'_>, xs: &[u32]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Mixed-radix indexing over all coalition vectors bound by a composition.
#[derive(Clone)]
pub struct VectorGrid {
    radices: Vec<u32>,
    len: usize,
}

impl VectorGrid {
    pub fn new(comp: &TypeComposition) -> Self {
        let radices: Vec<u32> = comp.parts().iter().map(|&n| n + 1).collect();
        let len = radices.iter().map(|&r| r as usize).product();
        Self { radices, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self, v: &CoalitionVector) -> usize {
        debug_assert_eq!(v.len(), self.radices.len());
        let mut idx = 0usize;
        for (&s, &r) in v.entries().iter().zip(&self.radices) {
            debug_assert!(s < r);
            idx = idx * r as usize + s as usize;
        }
        idx
    }

    pub fn vector(&self, mut idx: usize) -> CoalitionVector {
        let mut entries = vec![0u32; self.radices.len()];
        for (e, &r) in entries.iter_mut().zip(&self.radices).rev() {
            *e = (idx % r as usize) as u32;
            idx /= r as usize;
        }
        CoalitionVector::new(entries)
    }

    pub fn iter(&self) -> impl Iterator<Item = CoalitionVector> + '_ {
        (0..self.len).map(|i| self.vector(i))
    }
}
