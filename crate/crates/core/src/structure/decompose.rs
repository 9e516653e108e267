use serde::Serialize;

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::family::{product, project, reduce, twin_decomposition, SetFamily};

use super::certificate::{build_certificate_for_basis, StructureCertificate};

/// Partition `A_1..A_d, B` of the ground set with `dim <F|_B>_p <= 2h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureResult {
    pub n: usize,
    pub prime: u32,
    /// `dim <F>_p`.
    pub d: usize,
    /// `dim <F ∪ F·F>_p - d`.
    pub h: usize,
    /// Maximal twin classes, one per basis row.
    pub atoms: Vec<Vec<usize>>,
    /// Ascending; includes every coordinate on which `F` vanishes.
    pub b: Vec<usize>,
    /// `dim <F|_B>_p`, computed from the projected family.
    pub dim_fb: usize,
    pub partition_valid: bool,
    pub atoms_are_twin_classes: bool,
    /// The doubling excess of the family and of its span agree.
    pub h_routes_agree: bool,
    pub bound_holds: bool,
    /// Certificate in the coordinates of the input family.
    pub certificate: StructureCertificate,
}

impl StructureResult {
    /// Every structural check and every certificate check passed.
    pub fn all_checks(&self) -> bool {
        self.partition_valid
            && self.atoms_are_twin_classes
            && self.h_routes_agree
            && self.bound_holds
            && self.certificate.checks.all()
    }
}

/// Runs the constructive structure theorem on `<F>_p`.
///
/// Coordinates on which every member vanishes are removed first and added to
/// `B` at the end. Every reported quantity is also recomputed along an
/// independent route (family products rather than basis products, direct
/// projection rather than restricted rows) and compared.
pub fn structure_decompose(family: &SetFamily, prime: Prime) -> Result<StructureResult> {
    let n = family.ground_size();
    let red = reduce(family);
    let basis = red.family.span(prime)?;
    let cert = build_certificate_for_basis(&basis)?.relabel(&red.kept, n);

    let d = family.dim_span(prime)?;
    let doubled = family.union(&product(family, family)?)?;
    let h = doubled.dim_span(prime)? - d;

    let atoms = cert.atoms.clone();
    let mut b = cert.b.clone();
    b.extend(&red.dropped);
    b.sort_unstable();
    let dim_fb = project(family, &b)?.dim_span(prime)?;

    let mut seen = vec![0u32; n];
    for &x in atoms.iter().flatten().chain(&b) {
        seen[x] += 1;
    }
    let partition_valid = seen.iter().all(|&c| c == 1) && atoms.iter().all(|a| !a.is_empty());
    let twins = twin_decomposition(family).class_sets();
    let atoms_are_twin_classes = atoms.iter().all(|a| twins.contains(a));

    if d != cert.d {
        return Err(Error::Structure(format!(
            "span dimension {d} disagrees with basis size {}",
            cert.d
        )));
    }
    Ok(StructureResult {
        n,
        prime: prime.get(),
        d,
        h,
        atoms,
        b,
        dim_fb,
        partition_valid,
        atoms_are_twin_classes,
        h_routes_agree: h == cert.h,
        bound_holds: dim_fb <= 2 * h && dim_fb == cert.dim_vb,
        certificate: cert,
    })
}
