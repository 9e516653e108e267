//! The small-doubling structure theorem with checkable certificates, the
//! divisibility lemmas built on it, and the closure thresholds.
//!
//! Given a subspace `V < F_p^n` with reduced row-echelon basis `v_1..v_d`,
//! the coordinates split into sibling classes `S_i` (columns that are nonzero
//! multiples of pivot `i` alone) and the rest `B'`. The certificate records
//! products `z_c` supported on `B'` and corrections `v_i'` for sibling
//! classes that are not twin classes; together they show that
//! `dim(V|_B) <= 2h` where `h = dim <V ∪ V·V> - d`.

mod certificate;
mod claim;
mod decompose;
mod lemmas;
mod siblings;
mod stability;
mod thresholds;

pub use certificate::{
    build_certificate, build_certificate_for_basis, doubling_excess, CertificateChecks,
    StructureCertificate, VPrime, ZVector,
};
pub use claim::{claim_c_prime, ClaimCase, ClaimResolution};
pub use decompose::{structure_decompose, StructureResult};
pub use lemmas::{
    beta_for, check_bilinear_bound, check_claim_coordinates, check_lemma_prime,
    check_lemma_primepower, check_lemma_smalldim, smalldim_closure_order, BilinearReport,
    CoordinatesReport, PremiseFailure, PrimeLemmaReport, PrimePowerReport, SmallDimReport,
};
pub use siblings::{choose_c, sibling_decomposition, SiblingClass, SiblingDecomposition};
pub use stability::{stability_projection, StabilityReport};
pub use thresholds::{
    compute_k_threshold, compute_stab_threshold, Epsilon, KThreshold, StabThreshold,
};
