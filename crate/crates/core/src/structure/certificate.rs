use serde::Serialize;

use crate::arith::Prime;
use crate::error::Result;
use crate::family::{complement, SetFamily};
use crate::linalg::{dim_span, Echelon, ModVector, SubspaceBasis};

use super::claim::{ClaimCase, ClaimContext};
use super::siblings::{choose_c, sibling_decomposition, SiblingDecomposition};

/// A product `z_c = X·Y` with `X = sum x(i) v_i`, `Y = sum y(i) v_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZVector {
    /// Coordinate of `C` this vector is attached to.
    pub c: usize,
    pub case: ClaimCase,
    /// Partner coordinate in `C`, absent only when `|C| = 1`.
    pub c_prime: Option<usize>,
    pub alpha: u32,
    pub beta: Option<u32>,
    pub k: usize,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub z: ModVector,
}

/// `v_i' = s v_i - v_i·v_i` for a sibling class that is not a twin class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VPrime {
    pub row: usize,
    /// The twin class `A_i` kept inside `S_i`.
    pub atom: Vec<usize>,
    /// Value of `v_i` on `atom`.
    pub s: u32,
    pub vector: ModVector,
}

/// Result of re-deriving every certificate property from the stored data.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CertificateChecks {
    /// Each `z_c` equals `X·Y` recomputed from `x` and `y`.
    pub reconstruction: bool,
    /// `z_c` restricted to `C` is `1_c + alpha 1_{c'}`.
    pub restriction_to_c: bool,
    pub vanishing_outside_b_prime: bool,
    pub disjoint_supports: bool,
    /// `2 dim(W) >= |C|`.
    pub dim_w_bound: bool,
    /// Each `v_i'` vanishes on `A_i` and on every other sibling class, and
    /// not on `S_i \ A_i`.
    pub v_prime_pattern: bool,
    /// The rows and the `v_i'` stay independent after restriction to the
    /// complement of `B'`.
    pub independence: bool,
    /// Every `z_c` and `v_i'` lies in the span of the rows and their products.
    pub membership: bool,
    /// `2|I| + |C| <= 2h`.
    pub doubling_bound: bool,
    /// `dim(V|_B) <= 2h`.
    pub dimension_bound: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.reconstruction
            && self.restriction_to_c
            && self.vanishing_outside_b_prime
            && self.disjoint_supports
            && self.dim_w_bound
            && self.v_prime_pattern
            && self.independence
            && self.membership
            && self.doubling_bound
            && self.dimension_bound
    }
}

/// Witness data for the small-doubling structure bound on one subspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureCertificate {
    pub prime: u32,
    pub ncols: usize,
    /// The basis `v_1..v_d`.
    pub rows: Vec<ModVector>,
    pub d: usize,
    /// `dim <V ∪ V·V> - d`.
    pub h: usize,
    pub siblings: SiblingDecomposition,
    pub c: Vec<usize>,
    pub z: Vec<ZVector>,
    pub dim_w: usize,
    /// Rows whose sibling class is not a twin class.
    pub i: Vec<usize>,
    pub v_prime: Vec<VPrime>,
    /// `A_1..A_d`, one per row.
    pub atoms: Vec<Vec<usize>>,
    /// `B' ∪ (S_i \ A_i for i in I)`, ascending.
    pub b: Vec<usize>,
    pub dim_vb: usize,
    pub checks: CertificateChecks,
}

/// Span of the rows together with all pairwise products of rows, which is
/// `<V ∪ V·V>` by bilinearity.
fn doubling_echelon(prime: Prime, ncols: usize, rows: &[ModVector]) -> Result<Echelon> {
    let mut e = Echelon::new(prime, ncols);
    for r in rows {
        e.insert(r)?;
    }
    for i in 0..rows.len() {
        for j in i..rows.len() {
            e.insert(&rows[i].hadamard(&rows[j])?)?;
        }
    }
    Ok(e)
}

/// `dim <V ∪ V·V> - dim V` for the span of `rows`.
pub fn doubling_excess(prime: Prime, ncols: usize, rows: &[ModVector]) -> Result<usize> {
    let d = dim_span(prime, ncols, rows)?;
    Ok(doubling_echelon(prime, ncols, rows)?.rank() - d)
}

fn combine(prime: Prime, ncols: usize, rows: &[ModVector], coeffs: &[u32]) -> ModVector {
    let mut out = ModVector::zeros(prime.get(), ncols).expect("valid modulus");
    for (r, &a) in rows.iter().zip(coeffs) {
        out.add_scaled(a, r).expect("same shape");
    }
    out
}

/// Builds the certificate for a reduced row-echelon basis without zero
/// columns.
pub fn build_certificate_for_basis(basis: &SubspaceBasis) -> Result<StructureCertificate> {
    let prime = basis.prime();
    let p = prime.get();
    let n = basis.ncols();
    let rows = basis.rows().to_vec();
    let d = rows.len();
    let siblings = sibling_decomposition(basis)?;
    let c = choose_c(basis, &siblings.b_prime)?;

    let mut z = Vec::with_capacity(c.len());
    if !c.is_empty() {
        let w: Vec<ModVector> = rows.iter().map(|r| r.restrict(&c)).collect();
        let ctx = ClaimContext::new(prime, w)?;
        for pos in 0..c.len() {
            let res = ctx.resolve(pos)?;
            let x_vec = combine(prime, n, &rows, &res.x);
            let y_vec = combine(prime, n, &rows, &res.y);
            z.push(ZVector {
                c: c[pos],
                case: res.case,
                c_prime: res.c_prime.map(|u| c[u]),
                alpha: res.alpha,
                beta: res.beta,
                k: res.k,
                x: res.x,
                y: res.y,
                z: x_vec.hadamard(&y_vec)?,
            });
        }
    }
    let dim_w = dim_span(
        prime,
        n,
        &z.iter().map(|zc| zc.z.clone()).collect::<Vec<_>>(),
    )?;

    let mut atoms = Vec::with_capacity(d);
    let mut i_set = Vec::new();
    let mut v_prime = Vec::new();
    let mut b = siblings.b_prime.clone();
    for class in &siblings.classes {
        let groups = class.value_groups();
        let (s, atom) = groups
            .iter()
            .fold(None::<&(u32, Vec<usize>)>, |best, g| match best {
                Some(bg) if bg.1.len() >= g.1.len() => Some(bg),
                _ => Some(g),
            })
            .cloned()
            .expect("sibling classes contain their pivot");
        if groups.len() > 1 {
            let v = &rows[class.row];
            let vector = v.scaled(s).sub(&v.hadamard(v)?)?;
            i_set.push(class.row);
            b.extend(class.coords.iter().filter(|x| !atom.contains(x)));
            v_prime.push(VPrime {
                row: class.row,
                atom: atom.clone(),
                s,
                vector,
            });
        }
        atoms.push(atom);
    }
    b.sort_unstable();
    let restricted: Vec<ModVector> = rows.iter().map(|r| r.restrict(&b)).collect();
    let dim_vb = dim_span(prime, b.len(), &restricted)?;
    let h = doubling_excess(prime, n, &rows)?;

    let mut cert = StructureCertificate {
        prime: p,
        ncols: n,
        rows,
        d,
        h,
        siblings,
        c,
        z,
        dim_w,
        i: i_set,
        v_prime,
        atoms,
        b,
        dim_vb,
        checks: CertificateChecks::default(),
    };
    cert.checks = cert.verify()?;
    Ok(cert)
}

/// Certificate for `<F>_p` of a family without vanishing coordinates.
pub fn build_certificate(family: &SetFamily, prime: Prime) -> Result<StructureCertificate> {
    build_certificate_for_basis(&family.span(prime)?)
}

impl StructureCertificate {
    /// Recomputes every property from the stored vectors.
    pub fn verify(&self) -> Result<CertificateChecks> {
        let prime = Prime::new(self.prime)?;
        let n = self.ncols;
        let outside_b_prime = complement(n, &self.siblings.b_prime);

        let mut reconstruction = true;
        let mut restriction_to_c = true;
        let mut vanishing = true;
        let mut disjoint = true;
        for zc in &self.z {
            let x = combine(prime, n, &self.rows, &zc.x);
            let y = combine(prime, n, &self.rows, &zc.y);
            reconstruction &= x.hadamard(&y)? == zc.z;
            let mut expected = vec![0u32; self.c.len()];
            if let Some(pos) = self.c.iter().position(|&u| u == zc.c) {
                expected[pos] = 1;
            } else {
                restriction_to_c = false;
            }
            if let Some(cp) = zc.c_prime {
                match self.c.iter().position(|&u| u == cp) {
                    Some(pos) if cp != zc.c => expected[pos] = zc.alpha,
                    _ => restriction_to_c = false,
                }
            } else if zc.alpha != 0 {
                restriction_to_c = false;
            }
            restriction_to_c &= zc.z.restrict(&self.c).to_residues() == expected;
            vanishing &= outside_b_prime.iter().all(|&j| zc.z.get(j) == 0);
            disjoint &= zc.x.iter().zip(&zc.y).all(|(&a, &b)| a == 0 || b == 0);
        }
        let zs: Vec<ModVector> = self.z.iter().map(|zc| zc.z.clone()).collect();
        let dim_w = dim_span(prime, n, &zs)?;
        let dim_w_bound = dim_w == self.dim_w && 2 * dim_w >= self.c.len();

        let mut v_prime_pattern = true;
        for vp in &self.v_prime {
            let v = &self.rows[vp.row];
            v_prime_pattern &= vp.vector == v.scaled(vp.s).sub(&v.hadamard(v)?)?;
            for class in &self.siblings.classes {
                for &j in &class.coords {
                    let value = vp.vector.get(j);
                    let should_vanish = class.row != vp.row || vp.atom.contains(&j);
                    if should_vanish && value != 0 {
                        v_prime_pattern = false;
                    }
                }
            }
            let own = &self.siblings.classes[vp.row];
            v_prime_pattern &= own
                .coords
                .iter()
                .any(|j| !vp.atom.contains(j) && vp.vector.get(*j) != 0);
        }

        let mut restricted: Vec<ModVector> = self
            .rows
            .iter()
            .map(|r| r.restrict(&outside_b_prime))
            .collect();
        restricted.extend(
            self.v_prime
                .iter()
                .map(|vp| vp.vector.restrict(&outside_b_prime)),
        );
        let independence =
            dim_span(prime, outside_b_prime.len(), &restricted)? == self.d + self.v_prime.len();

        let doubling = doubling_echelon(prime, n, &self.rows)?;
        let mut membership = true;
        for v in self
            .z
            .iter()
            .map(|zc| &zc.z)
            .chain(self.v_prime.iter().map(|vp| &vp.vector))
        {
            membership &= doubling.contains(v)?;
        }
        let h = doubling.rank() - dim_span(prime, n, &self.rows)?;
        let on_b: Vec<ModVector> = self.rows.iter().map(|r| r.restrict(&self.b)).collect();
        let dim_vb = dim_span(prime, self.b.len(), &on_b)?;

        Ok(CertificateChecks {
            reconstruction,
            restriction_to_c,
            vanishing_outside_b_prime: vanishing,
            disjoint_supports: disjoint,
            dim_w_bound,
            v_prime_pattern,
            independence,
            membership,
            doubling_bound: h == self.h && 2 * self.i.len() + self.c.len() <= 2 * h,
            dimension_bound: dim_vb == self.dim_vb && dim_vb <= 2 * h,
        })
    }

    /// Rewrites every coordinate through `kept` into a ground set of size
    /// `n`, padding vectors with zeros on the coordinates not in `kept`.
    pub fn relabel(&self, kept: &[usize], n: usize) -> StructureCertificate {
        let map = |xs: &[usize]| xs.iter().map(|&x| kept[x]).collect::<Vec<_>>();
        let widen = |v: &ModVector| {
            let mut out = ModVector::zeros(v.modulus(), n).expect("valid modulus");
            for j in v.support() {
                out.set(kept[j], v.get(j)).expect("in range");
            }
            out
        };
        let mut siblings = self.siblings.clone();
        siblings.ncols = n;
        for class in &mut siblings.classes {
            class.coords = map(&class.coords);
        }
        siblings.b_prime = map(&siblings.b_prime);
        StructureCertificate {
            prime: self.prime,
            ncols: n,
            rows: self.rows.iter().map(widen).collect(),
            d: self.d,
            h: self.h,
            siblings,
            c: map(&self.c),
            z: self
                .z
                .iter()
                .map(|zc| ZVector {
                    c: kept[zc.c],
                    c_prime: zc.c_prime.map(|u| kept[u]),
                    z: widen(&zc.z),
                    ..zc.clone()
                })
                .collect(),
            dim_w: self.dim_w,
            i: self.i.clone(),
            v_prime: self
                .v_prime
                .iter()
                .map(|vp| VPrime {
                    atom: map(&vp.atom),
                    vector: widen(&vp.vector),
                    ..vp.clone()
                })
                .collect(),
            atoms: self.atoms.iter().map(|a| map(a)).collect(),
            b: map(&self.b),
            dim_vb: self.dim_vb,
            checks: self.checks,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::s_family;

    #[test]
    fn atomic_family_certificate_is_trivial() {
        let cert = build_certificate(&s_family(8, 2), Prime::new(2).unwrap()).unwrap();
        assert!(cert.c.is_empty() && cert.i.is_empty() && cert.b.is_empty());
        assert_eq!((cert.d, cert.h), (4, 0));
        assert!(cert.checks.all());
    }

    #[test]
    fn relabel_keeps_checks() {
        let f = SetFamily::from_sets(3, [vec![0, 1], vec![1, 2]]).unwrap();
        let cert = build_certificate(&f, Prime::new(2).unwrap()).unwrap();
        let wide = cert.relabel(&[0, 2, 4], 6);
        assert_eq!(wide.verify().unwrap(), cert.checks);
        assert!(cert.checks.all());
    }
}
