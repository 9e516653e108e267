use crate::arith::Prime;
use crate::error::{Error, Result};

use super::vector::ModVector;

/// Rows of equal length over a shared modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: u32,
    ncols: usize,
    rows: Vec<ModVector>,
}

impl ModMatrix {
    pub fn new(modulus: u32, ncols: usize, rows: Vec<ModVector>) -> Result<Self> {
        crate::arith::check_modulus(modulus as u64)?;
        for r in &rows {
            if r.modulus() != modulus || r.len() != ncols {
                return Err(Error::shape(format!(
                    "row over Z_{} of length {} in a matrix over Z_{modulus} with {ncols} columns",
                    r.modulus(),
                    r.len()
                )));
            }
        }
        Ok(ModMatrix {
            modulus,
            ncols,
            rows,
        })
    }

    pub fn from_rows(modulus: u32, rows: &[&[u32]]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| ModVector::from_residues(modulus, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, ncols, rows)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[ModVector] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> ModVector {
        let entries: Vec<u32> = self.rows.iter().map(|r| r.get(j)).collect();
        ModVector::from_residues(self.modulus, &entries).expect("entries already reduced")
    }

    pub fn into_rows(self) -> Vec<ModVector> {
        self.rows
    }
}

/// A row-space basis in reduced row-echelon form.
///
/// Row `i` has a 1 at `pivots[i]` and every other row is 0 there; pivots are
/// strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    prime: Prime,
    ncols: usize,
    rows: Vec<ModVector>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[ModVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn as_matrix(&self) -> ModMatrix {
        ModMatrix {
            modulus: self.prime.get(),
            ncols: self.ncols,
            rows: self.rows.clone(),
        }
    }

    /// Column `j` of the basis matrix (length `dim`).
    pub fn column(&self, j: usize) -> ModVector {
        let entries: Vec<u32> = self.rows.iter().map(|r| r.get(j)).collect();
        ModVector::from_residues(self.prime.get(), &entries).expect("entries already reduced")
    }

    /// Coefficients expressing `v` in the basis, or `None` when `v` is outside
    /// the span.
    pub fn membership(&self, v: &ModVector) -> Result<Option<Vec<u32>>> {
        if v.modulus() != self.prime.get() || v.len() != self.ncols {
            return Err(Error::shape(format!(
                "vector over Z_{} of length {} against a basis over F_{} in {} coordinates",
                v.modulus(),
                v.len(),
                self.prime,
                self.ncols
            )));
        }
        let coeffs: Vec<u32> = self.pivots.iter().map(|&c| v.get(c)).collect();
        let mut rest = v.clone();
        let p = self.prime.get();
        for (row, &c) in self.rows.iter().zip(&coeffs) {
            rest.add_scaled(p - c, row)?;
        }
        Ok(rest.is_zero().then_some(coeffs))
    }

    pub fn contains(&self, v: &ModVector) -> Result<bool> {
        Ok(self.membership(v)?.is_some())
    }

    /// `sum_i coeffs[i] * row_i`.
    pub fn combine(&self, coeffs: &[u32]) -> Result<ModVector> {
        if coeffs.len() != self.dim() {
            return Err(Error::shape(format!(
                "{} coefficients for dimension {}",
                coeffs.len(),
                self.dim()
            )));
        }
        let mut out = ModVector::zeros_unchecked(self.prime.get(), self.ncols);
        for (row, &c) in self.rows.iter().zip(coeffs) {
            out.add_scaled(c, row)?;
        }
        Ok(out)
    }

    /// Exact number of 0/1 vectors in the span.
    ///
    /// A span element `sum c_i row_i` takes the value `c_i` at pivot `i`, so a
    /// 0/1 element has every `c_i` in {0, 1}. Only those `2^dim` combinations
    /// are visited, in Gray-code order; `budget` caps that count.
    pub fn count_01_in_span(&self, budget: u64) -> Result<u64> {
        let d = self.dim();
        let needed: u128 = 1u128 << d.min(127);
        if d >= 64 || needed > budget as u128 {
            return Err(Error::Budget { needed, budget });
        }
        let p = self.prime.get();
        let mut current = ModVector::zeros_unchecked(p, self.ncols);
        let mut chosen = vec![false; d];
        let mut count = 1u64; // the zero combination
        for step in 1u64..(1u64 << d) {
            let bit = step.trailing_zeros() as usize;
            if chosen[bit] {
                current.add_scaled(p - 1, &self.rows[bit])?;
            } else {
                current.add_scaled(1, &self.rows[bit])?;
            }
            chosen[bit] = !chosen[bit];
            if current.is_binary() {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Default cap on enumerated span elements.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 20;

fn check_rows(prime: Prime, ncols: usize, rows: &[ModVector]) -> Result<()> {
    for r in rows {
        if r.modulus() != prime.get() || r.len() != ncols {
            return Err(Error::shape(format!(
                "row over Z_{} of length {} where F_{prime}^{ncols} was expected",
                r.modulus(),
                r.len()
            )));
        }
    }
    Ok(())
}

/// Reduced row-echelon basis of the row space. Pivots are taken leftmost; the
/// pivot row is the lowest-index remaining row with a nonzero entry.
pub fn rref(matrix: &ModMatrix) -> Result<SubspaceBasis> {
    let prime = Prime::new(matrix.modulus())?;
    rref_rows(prime, matrix.ncols(), matrix.rows().to_vec())
}

pub fn rref_rows(prime: Prime, ncols: usize, mut rows: Vec<ModVector>) -> Result<SubspaceBasis> {
    check_rows(prime, ncols, &rows)?;
    let p = prime.get();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(found) = (top..rows.len()).find(|&r| rows[r].get(col) != 0) else {
            continue;
        };
        rows.swap(top, found);
        let inv = prime.inv(rows[top].get(col));
        rows[top] = rows[top].scaled(inv);
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != top {
                let e = row.get(col);
                if e != 0 {
                    row.add_scaled(p - e, &pivot_row)?;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    Ok(SubspaceBasis {
        prime,
        ncols,
        rows,
        pivots,
    })
}

/// Dimension of the span of `vectors` over `F_p`.
pub fn dim_span(prime: Prime, ncols: usize, vectors: &[ModVector]) -> Result<usize> {
    Ok(rref_rows(prime, ncols, vectors.to_vec())?.dim())
}

/// Coefficients `c` with `sum c_i generators[i] = v`, or `None` if `v` is not
/// in their span. Generators may be dependent; the returned solution is the
/// one supported on the greedily chosen independent prefix.
pub fn express_in(
    prime: Prime,
    v: &ModVector,
    generators: &[ModVector],
) -> Result<Option<Vec<u32>>> {
    let ncols = v.len();
    check_rows(prime, ncols, std::slice::from_ref(v))?;
    check_rows(prime, ncols, generators)?;
    let mut echelon = Echelon::new(prime, ncols);
    for g in generators {
        echelon.insert(g)?;
    }
    echelon.express(v).map(|opt| {
        opt.map(|combo| {
            let mut out = vec![0; generators.len()];
            for (i, c) in combo {
                out[i] = c;
            }
            out
        })
    })
}

/// Incremental echelon form that remembers how every stored row was built
/// from the inserted vectors.
#[derive(Debug, Clone)]
pub struct Echelon {
    prime: Prime,
    ncols: usize,
    // (pivot column, row normalized to 1 at pivot, combination of inserted vectors)
    rows: Vec<(usize, ModVector, ModVector)>,
    inserted: usize,
    accepted: Vec<usize>,
}

impl Echelon {
    pub fn new(prime: Prime, ncols: usize) -> Self {
        Echelon {
            prime,
            ncols,
            rows: Vec::new(),
            inserted: 0,
            accepted: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Indices (in insertion order) of the vectors that raised the rank.
    pub fn accepted(&self) -> &[usize] {
        &self.accepted
    }

    fn reduce(&self, v: &ModVector) -> Result<(ModVector, Vec<(usize, u32)>)> {
        let p = self.prime.get();
        let mut rest = v.clone();
        let mut used = Vec::new();
        for (idx, (pivot, row, _)) in self.rows.iter().enumerate() {
            let e = rest.get(*pivot);
            if e != 0 {
                rest.add_scaled(p - e, row)?;
                used.push((idx, e));
            }
        }
        Ok((rest, used))
    }

    /// Returns whether `v` was independent of everything inserted before.
    pub fn insert(&mut self, v: &ModVector) -> Result<bool> {
        check_rows(self.prime, self.ncols, std::slice::from_ref(v))?;
        let index = self.inserted;
        self.inserted += 1;
        let p = self.prime.get();
        let (rest, used) = self.reduce(v)?;
        let Some(pivot) = (0..self.ncols).find(|&c| rest.get(c) != 0) else {
            return Ok(false);
        };
        // combination: v - sum e * row  (in terms of inserted vectors)
        let mut combo = ModVector::zeros_unchecked(p, index + 1);
        combo.set_unchecked(index, 1);
        for (idx, e) in used {
            let old = &self.rows[idx].2;
            for j in 0..old.len() {
                let c = old.get(j);
                if c != 0 {
                    let cur = combo.get(j) as u64;
                    let delta = (p - e) as u64 * c as u64;
                    combo.set_unchecked(j, ((cur + delta) % p as u64) as u32);
                }
            }
        }
        let inv = self.prime.inv(rest.get(pivot));
        let row = rest.scaled(inv);
        let combo = combo.scaled(inv);
        self.rows.push((pivot, row, combo));
        self.accepted.push(index);
        Ok(true)
    }

    pub fn contains(&self, v: &ModVector) -> Result<bool> {
        check_rows(self.prime, self.ncols, std::slice::from_ref(v))?;
        Ok(self.reduce(v)?.0.is_zero())
    }

    /// Coefficients over the inserted vectors as `(index, coefficient)` pairs.
    pub fn express(&self, v: &ModVector) -> Result<Option<Vec<(usize, u32)>>> {
        check_rows(self.prime, self.ncols, std::slice::from_ref(v))?;
        let (rest, used) = self.reduce(v)?;
        if !rest.is_zero() {
            return Ok(None);
        }
        let p = self.prime.get() as u64;
        let mut total = vec![0u64; self.inserted];
        for (idx, e) in used {
            let combo = &self.rows[idx].2;
            for (j, t) in total.iter_mut().enumerate().take(combo.len()) {
                *t = (*t + e as u64 * combo.get(j) as u64) % p;
            }
        }
        Ok(Some(
            total
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(i, c)| (i, c as u32))
                .collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn vec_of(p: u32, e: &[u32]) -> ModVector {
        ModVector::from_residues(p, e).unwrap()
    }

    #[test]
    fn rref_small_examples() {
        let m = ModMatrix::from_rows(2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).unwrap();
        let b = rref(&m).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.pivots(), &[0, 1]);
        assert_eq!(b.rows()[0], vec_of(2, &[1, 0, 1]));
        assert_eq!(b.rows()[1], vec_of(2, &[0, 1, 1]));

        let zero = ModMatrix::from_rows(5, &[&[0, 0], &[0, 0]]).unwrap();
        assert_eq!(rref(&zero).unwrap().dim(), 0);
    }

    #[test]
    fn rref_rejects_composite() {
        let m = ModMatrix::from_rows(4, &[&[1, 2]]).unwrap();
        assert_eq!(rref(&m), Err(Error::Modulus(4)));
    }

    #[test]
    fn dim_span_examples() {
        assert_eq!(dim_span(f(3), 2, &[]).unwrap(), 0);
        assert_eq!(
            dim_span(f(3), 2, &[vec_of(3, &[1, 1]), vec_of(3, &[2, 2])]).unwrap(),
            1
        );
    }

    #[test]
    fn membership_basics() {
        let m = ModMatrix::from_rows(3, &[&[1, 2, 0, 1], &[0, 0, 1, 2]]).unwrap();
        let b = rref(&m).unwrap();
        assert_eq!(
            b.membership(&vec_of(3, &[0, 0, 0, 0])).unwrap(),
            Some(vec![0, 0])
        );
        assert_eq!(b.membership(&b.rows()[1]).unwrap(), Some(vec![0, 1]));
        assert_eq!(b.membership(&vec_of(3, &[0, 1, 0, 0])).unwrap(), None);
        assert!(b.membership(&vec_of(2, &[0, 1, 0, 0])).is_err());
    }

    #[test]
    fn express_in_dependent_generators() {
        let p = f(3);
        let gens = [
            vec_of(3, &[1, 1, 0]),
            vec_of(3, &[2, 2, 0]),
            vec_of(3, &[0, 1, 1]),
        ];
        let target = vec_of(3, &[1, 2, 1]);
        let c = express_in(p, &target, &gens).unwrap().unwrap();
        let mut back = ModVector::zeros(3, 3).unwrap();
        for (g, &ci) in gens.iter().zip(&c) {
            back.add_scaled(ci, g).unwrap();
        }
        assert_eq!(back, target);
        assert_eq!(express_in(p, &vec_of(3, &[0, 0, 1]), &gens).unwrap(), None);
    }

    #[test]
    fn count_01_examples() {
        let b = rref(&ModMatrix::from_rows(2, &[&[1, 1, 0], &[0, 1, 1]]).unwrap()).unwrap();
        assert_eq!(b.count_01_in_span(DEFAULT_ENUMERATION_BUDGET).unwrap(), 4);
        let z = rref(&ModMatrix::from_rows(3, &[&[0, 0, 0]]).unwrap()).unwrap();
        assert_eq!(z.count_01_in_span(DEFAULT_ENUMERATION_BUDGET).unwrap(), 1);
        assert!(matches!(b.count_01_in_span(2), Err(Error::Budget { .. })));
    }
}
