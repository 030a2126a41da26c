//! Fixed-width bit sets used for labelsets (one bit per label column).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

const WORD: usize = 64;

/// The set of active labels of one instance.
///
/// Bit `j` corresponds to label column `j`. The canonical textual key is a
/// bit-string in label-column order (`"0110"` means labels 1 and 2 are
/// active), and the `Ord` implementation sorts by that string.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Labelset {
    width: usize,
    words: Vec<u64>,
}

impl Labelset {
    /// An all-zero labelset over `width` labels.
    pub fn empty(width: usize) -> Self {
        Labelset {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut set = Labelset::empty(bits.len());
        for (j, &b) in bits.iter().enumerate() {
            if b {
                set.insert(j);
            }
        }
        set
    }

    /// Builds a labelset from active label indices. Panics if an index is `>= width`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, active: I) -> Self {
        let mut set = Labelset::empty(width);
        for j in active {
            set.insert(j);
        }
        set
    }

    /// Parses a canonical bit-string (`'0'`/`'1'` characters only).
    pub fn parse_bits(s: &str) -> Option<Self> {
        let mut set = Labelset::empty(s.len());
        for (j, c) in s.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => set.insert(j),
                _ => return None,
            }
        }
        Some(set)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn contains(&self, label: usize) -> bool {
        label < self.width && self.words[label / WORD] >> (label % WORD) & 1 == 1
    }

    pub fn insert(&mut self, label: usize) {
        assert!(label < self.width, "label index {label} out of range {}", self.width);
        self.words[label / WORD] |= 1 << (label % WORD);
    }

    pub fn remove(&mut self, label: usize) {
        assert!(label < self.width, "label index {label} out of range {}", self.width);
        self.words[label / WORD] &= !(1 << (label % WORD));
    }

    /// Number of active labels.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Active label indices in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn intersection_len(&self, other: &Labelset) -> usize {
        self.zip_count(other, |a, b| a & b)
    }

    pub fn union_len(&self, other: &Labelset) -> usize {
        self.zip_count(other, |a, b| a | b)
    }

    pub fn symmetric_difference_len(&self, other: &Labelset) -> usize {
        self.zip_count(other, |a, b| a ^ b)
    }

    fn zip_count(&self, other: &Labelset, op: impl Fn(u64, u64) -> u64) -> usize {
        assert_eq!(self.width, other.width, "labelset width mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b).count_ones() as usize)
            .sum()
    }

    /// Canonical bit-string key.
    pub fn to_bit_string(&self) -> String {
        (0..self.width)
            .map(|j| if self.contains(j) { '1' } else { '0' })
            .collect()
    }
}

impl Ord for Labelset {
    fn cmp(&self, other: &Self) -> Ordering {
        for (&a, &b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return if a >> bit & 1 == 1 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        self.width.cmp(&other.width)
    }
}

impl PartialOrd for Labelset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Labelset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.width {
            f.write_str(if self.contains(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Labelset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labelset({self})")
    }
}

/// Iterator over active label indices.
#[derive(Debug)]
pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}
