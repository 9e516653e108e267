use std::cmp::Ordering;
use std::fmt;

use crate::arith::check_modulus;
use crate::error::{Error, Result};

/// A length-`n` vector of residues modulo `m`.
///
/// Residues live in fixed-width lanes packed into `u64` words: one bit per
/// entry when `m = 2`, otherwise the smallest width that holds `m - 1`.
/// Unused high lanes of the last word are always zero, so derived equality and
/// hashing see only the logical entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModVector {
    modulus: u32,
    len: usize,
    words: Vec<u64>,
}

fn lane_width(modulus: u32) -> u32 {
    (32 - (modulus - 1).leading_zeros()).max(1)
}

impl ModVector {
    pub fn zeros(modulus: u32, len: usize) -> Result<Self> {
        let modulus = check_modulus(modulus as u64)?;
        Ok(Self::zeros_unchecked(modulus, len))
    }

    pub(crate) fn zeros_unchecked(modulus: u32, len: usize) -> Self {
        let per = (64 / lane_width(modulus)) as usize;
        ModVector {
            modulus,
            len,
            words: vec![0; len.div_ceil(per)],
        }
    }

    pub fn from_residues(modulus: u32, entries: &[u32]) -> Result<Self> {
        let mut v = Self::zeros(modulus, entries.len())?;
        for (i, &e) in entries.iter().enumerate() {
            if e >= modulus {
                return Err(Error::Residue {
                    value: e as u64,
                    modulus,
                });
            }
            v.set_unchecked(i, e);
        }
        Ok(v)
    }

    /// Reduces arbitrary signed integers into `[0, modulus)`.
    pub fn from_integers(modulus: u32, entries: &[i64]) -> Result<Self> {
        let m = check_modulus(modulus as u64)? as i64;
        let residues: Vec<u32> = entries.iter().map(|e| e.rem_euclid(m) as u32).collect();
        Self::from_residues(modulus, &residues)
    }

    /// Characteristic vector of `support` inside `[0, len)`.
    pub fn indicator(
        modulus: u32,
        len: usize,
        support: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut v = Self::zeros(modulus, len)?;
        for i in support {
            if i >= len {
                return Err(Error::shape(format!(
                    "coordinate {i} outside ground set of size {len}"
                )));
            }
            v.set_unchecked(i, 1);
        }
        Ok(v)
    }

    pub fn ones(modulus: u32, len: usize) -> Result<Self> {
        Self::indicator(modulus, len, 0..len)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn width(&self) -> u32 {
        lane_width(self.modulus)
    }

    #[inline]
    fn per_word(&self) -> usize {
        (64 / self.width()) as usize
    }

    #[inline]
    fn mask(&self) -> u64 {
        (1u64 << self.width()) - 1
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        let per = self.per_word();
        let shift = (i % per) as u32 * self.width();
        ((self.words[i / per] >> shift) & self.mask()) as u32
    }

    pub fn set(&mut self, i: usize, value: u32) -> Result<()> {
        if i >= self.len {
            return Err(Error::shape(format!(
                "index {i} out of range for length {}",
                self.len
            )));
        }
        if value >= self.modulus {
            return Err(Error::Residue {
                value: value as u64,
                modulus: self.modulus,
            });
        }
        self.set_unchecked(i, value);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_unchecked(&mut self, i: usize, value: u32) {
        debug_assert!(i < self.len && value < self.modulus);
        let per = self.per_word();
        let shift = (i % per) as u32 * self.width();
        let mask = self.mask();
        let word = &mut self.words[i / per];
        *word = (*word & !(mask << shift)) | ((value as u64) << shift);
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_residues(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Coordinates with a nonzero entry, ascending.
    pub fn support(&self) -> Vec<usize> {
        if self.modulus == 2 {
            let mut out = Vec::new();
            for (w, &word) in self.words.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    out.push(w * 64 + bits.trailing_zeros() as usize);
                    bits &= bits - 1;
                }
            }
            return out;
        }
        (0..self.len).filter(|&i| self.get(i) != 0).collect()
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        if self.modulus == 2 {
            return self.words.iter().map(|w| w.count_ones() as usize).sum();
        }
        self.iter().filter(|&e| e != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True when every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.modulus == 2 || self.iter().all(|e| e <= 1)
    }

    fn check_same_shape(&self, other: &ModVector) -> Result<()> {
        if self.modulus != other.modulus || self.len != other.len {
            return Err(Error::shape(format!(
                "vectors over Z_{} of length {} and Z_{} of length {}",
                self.modulus, self.len, other.modulus, other.len
            )));
        }
        Ok(())
    }

    fn map_lanes(&self, other: &ModVector, f: impl Fn(u64, u64) -> u64) -> ModVector {
        let mut out = ModVector::zeros_unchecked(self.modulus, self.len);
        for i in 0..self.len {
            let v = f(self.get(i) as u64, other.get(i) as u64);
            out.set_unchecked(i, v as u32);
        }
        out
    }

    /// Coordinate-wise product. For 0/1 vectors this is the indicator of the
    /// intersection of the supports.
    pub fn hadamard(&self, other: &ModVector) -> Result<ModVector> {
        self.check_same_shape(other)?;
        if self.modulus == 2 {
            return Ok(ModVector {
                modulus: 2,
                len: self.len,
                words: self
                    .words
                    .iter()
                    .zip(&other.words)
                    .map(|(a, b)| a & b)
                    .collect(),
            });
        }
        let m = self.modulus as u64;
        Ok(self.map_lanes(other, |a, b| a * b % m))
    }

    pub fn add(&self, other: &ModVector) -> Result<ModVector> {
        let mut out = self.clone();
        out.add_scaled(1, other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &ModVector) -> Result<ModVector> {
        let mut out = self.clone();
        out.add_scaled(self.modulus - 1, other)?;
        Ok(out)
    }

    pub fn scaled(&self, c: u32) -> ModVector {
        let m = self.modulus as u64;
        let c = c as u64 % m;
        if c == 1 {
            return self.clone();
        }
        let mut out = ModVector::zeros_unchecked(self.modulus, self.len);
        if c == 0 {
            return out;
        }
        for i in 0..self.len {
            out.set_unchecked(i, (self.get(i) as u64 * c % m) as u32);
        }
        out
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: u32, other: &ModVector) -> Result<()> {
        self.check_same_shape(other)?;
        let m = self.modulus as u64;
        let c = c as u64 % m;
        if c == 0 {
            return Ok(());
        }
        if self.modulus == 2 {
            for (a, b) in self.words.iter_mut().zip(&other.words) {
                *a ^= b;
            }
            return Ok(());
        }
        for i in 0..self.len {
            let b = other.get(i) as u64;
            if b != 0 {
                let v = (self.get(i) as u64 + c * b) % m;
                self.set_unchecked(i, v as u32);
            }
        }
        Ok(())
    }

    /// Sum of entries reduced modulo the modulus.
    pub fn norm(&self) -> u32 {
        if self.modulus == 2 {
            return (self.weight() % 2) as u32;
        }
        let m = self.modulus as u64;
        (self.iter().map(|e| e as u64).sum::<u64>() % m) as u32
    }

    /// Reinterprets a 0/1 vector over another modulus.
    pub fn lift(&self, modulus: u32) -> Result<ModVector> {
        if !self.is_binary() {
            return Err(Error::shape("only 0/1 vectors can change modulus"));
        }
        ModVector::indicator(modulus, self.len, self.support())
    }

    /// Entries at `coords`, in the given order.
    pub fn restrict(&self, coords: &[usize]) -> ModVector {
        let mut out = ModVector::zeros_unchecked(self.modulus, coords.len());
        for (j, &c) in coords.iter().enumerate() {
            out.set_unchecked(j, self.get(c));
        }
        out
    }

    /// Lexicographic comparison of the entry sequences. For 0/1 vectors this is
    /// the order of their 0/1 strings.
    pub fn lex_cmp(&self, other: &ModVector) -> Ordering {
        if self.modulus == 2 && other.modulus == 2 && self.len == other.len {
            for (a, b) in self.words.iter().zip(&other.words) {
                let diff = a ^ b;
                if diff != 0 {
                    let bit = diff & diff.wrapping_neg();
                    return if a & bit != 0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
            }
            return Ordering::Equal;
        }
        self.iter().cmp(other.iter()).then(self.len.cmp(&other.len))
    }

    /// Entries as a digit string (`0`/`1` for binary vectors); space-separated
    /// when the modulus exceeds 10.
    pub fn to_digit_string(&self) -> String {
        if self.modulus <= 10 {
            self.iter().map(|e| char::from(b'0' + e as u8)).collect()
        } else {
            self.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl Ord for ModVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then(self.len.cmp(&other.len))
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for ModVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}[{}]", self.modulus, self.to_digit_string())
    }
}

impl serde::Serialize for ModVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(m: u32, e: &[u32]) -> ModVector {
        ModVector::from_residues(m, e).unwrap()
    }

    #[test]
    fn packing_round_trips_across_word_boundaries() {
        for m in [2u32, 3, 5, 8, 9, 12, 255, 256, 65536] {
            let entries: Vec<u32> = (0..150).map(|i| (i * 7 + 3) % m).collect();
            let x = v(m, &entries);
            assert_eq!(x.to_residues(), entries, "modulus {m}");
        }
    }

    #[test]
    fn hadamard_examples() {
        assert_eq!(
            v(2, &[1, 0, 1]).hadamard(&v(2, &[1, 1, 0])).unwrap(),
            v(2, &[1, 0, 0])
        );
        assert_eq!(
            v(3, &[2, 1]).hadamard(&v(3, &[2, 2])).unwrap(),
            v(3, &[1, 2])
        );
        let x = v(5, &[4, 0, 3, 1]);
        assert_eq!(x.hadamard(&ModVector::ones(5, 4).unwrap()).unwrap(), x);
    }

    #[test]
    fn hadamard_shape_mismatch() {
        assert!(matches!(
            v(2, &[1, 0]).hadamard(&v(3, &[1, 0])),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            v(2, &[1, 0]).hadamard(&v(2, &[1, 0, 0])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(ModVector::zeros(7, 5).unwrap().norm(), 0);
        assert_eq!(ModVector::ones(3, 6).unwrap().norm(), 0);
        assert_eq!(v(3, &[1, 2, 2]).norm(), 2);
        assert_eq!(v(2, &[1, 1, 1]).norm(), 1);
    }

    #[test]
    fn lex_order_matches_strings() {
        let a = v(2, &[0, 1, 1]);
        let b = v(2, &[1, 0, 0]);
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(
            a.to_digit_string().cmp(&b.to_digit_string()),
            Ordering::Less
        );
    }

    #[test]
    fn residue_validation() {
        assert!(matches!(
            ModVector::from_residues(3, &[3]),
            Err(Error::Residue { .. })
        ));
        assert!(ModVector::zeros(1, 3).is_err());
        assert_eq!(
            ModVector::from_integers(3, &[-1, 4]).unwrap(),
            v(3, &[2, 1])
        );
    }
}
