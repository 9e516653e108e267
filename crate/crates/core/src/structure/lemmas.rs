//! Checkers for the divisibility lemmas. Each returns a three-valued status:
//! a failed premise gives `NotApplicable` together with the offending data.

use serde::Serialize;

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::family::{is_k_closed, project, twin_decomposition, ClosureReport, SetFamily};
use crate::linalg::{ModVector, SubspaceBasis};
use crate::verdict::Status;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BilinearReport {
    pub status: Status,
    pub dim: usize,
    pub d: usize,
    /// Number of zero coefficients.
    pub z: usize,
    /// Basis rows `(i, j)` with `b(v_i, v_j) != 0`, when the premise fails.
    pub witness: Option<(usize, usize)>,
}

fn form(b: &[u32], p: u32, u: &ModVector, v: &ModVector) -> u32 {
    let mut acc = 0u64;
    for (i, &bi) in b.iter().enumerate() {
        acc = (acc + bi as u64 * u.get(i) as u64 % p as u64 * v.get(i) as u64) % p as u64;
    }
    acc as u32
}

/// `dim V <= (d + z) / 2` for a subspace totally isotropic under
/// `b(v, w) = sum b_i v(i) w(i)`.
pub fn check_bilinear_bound(b: &[u32], basis: &SubspaceBasis) -> Result<BilinearReport> {
    let p = basis.prime().get();
    let d = b.len();
    if basis.ncols() != d {
        return Err(Error::shape(format!(
            "{d} coefficients for a subspace of F^{}",
            basis.ncols()
        )));
    }
    if let Some(&bad) = b.iter().find(|&&x| x >= p) {
        return Err(Error::Residue {
            value: bad as u64,
            modulus: p,
        });
    }
    let rows = basis.rows();
    let z = b.iter().filter(|&&x| x == 0).count();
    let mut report = BilinearReport {
        status: Status::Holds,
        dim: rows.len(),
        d,
        z,
        witness: None,
    };
    for i in 0..rows.len() {
        for j in i..rows.len() {
            if form(b, p, &rows[i], &rows[j]) != 0 {
                report.status = Status::NotApplicable;
                report.witness = Some((i, j));
                return Ok(report);
            }
        }
    }
    report.status = Status::from_bool(2 * report.dim <= d + z);
    Ok(report)
}

/// Reasons a premise can fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "premise", rename_all = "kebab-case")]
pub enum PremiseFailure {
    /// The classes are not a partition of the coordinates.
    NotPartition {
        coordinate: usize,
    },
    /// A class is not a set of twins; `witness` is a vector separating it.
    NotTwins {
        class: usize,
        witness: usize,
    },
    /// Some product of at most two basis vectors has nonzero norm.
    NotTwoClosed {
        rows: (usize, usize),
    },
    Closure {
        report: ClosureReport,
    },
    /// The number of classes differs from `dim <F>_p`.
    ClassCount {
        classes: usize,
        dim: usize,
    },
    /// `dim <F|_B>_p` exceeds the supplied bound.
    ResidualDimension {
        dim: usize,
        bound: usize,
    },
    Reducible {
        coordinate: usize,
    },
    TooSmall {
        size: usize,
        minimum: usize,
    },
}

fn check_partition(n: usize, classes: &[Vec<usize>]) -> Option<PremiseFailure> {
    let mut seen = vec![false; n];
    for &x in classes.iter().flatten() {
        if x >= n || seen[x] {
            return Some(PremiseFailure::NotPartition { coordinate: x });
        }
        seen[x] = true;
    }
    seen.iter()
        .position(|&s| !s)
        .map(|coordinate| PremiseFailure::NotPartition { coordinate })
}

fn constant_on(v: &ModVector, class: &[usize]) -> bool {
    class.windows(2).all(|w| v.get(w[0]) == v.get(w[1]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeLemmaReport {
    pub status: Status,
    pub d: usize,
    pub dim: usize,
    pub h: usize,
    pub divisible: usize,
    /// `d - 2h`, possibly negative.
    pub required: i64,
    pub failure: Option<PremiseFailure>,
}

/// For a 2-closed `V < F_p^n` and a partition of `[n]` into twin classes
/// `A_1..A_d`, at least `d - 2h` of the sizes are divisible by `p`, where
/// `h = d - dim V`.
pub fn check_lemma_prime(
    basis: &SubspaceBasis,
    classes: &[Vec<usize>],
) -> Result<PrimeLemmaReport> {
    let p = basis.prime().get() as usize;
    let d = classes.len();
    let dim = basis.dim();
    let h = d.saturating_sub(dim);
    let mut report = PrimeLemmaReport {
        status: Status::NotApplicable,
        d,
        dim,
        h,
        divisible: classes.iter().filter(|c| c.len() % p == 0).count(),
        required: d as i64 - 2 * h as i64,
        failure: None,
    };
    if let Some(f) = check_partition(basis.ncols(), classes) {
        report.failure = Some(f);
        return Ok(report);
    }
    let rows = basis.rows();
    for (ci, class) in classes.iter().enumerate() {
        if let Some(w) = rows.iter().position(|r| !constant_on(r, class)) {
            report.failure = Some(PremiseFailure::NotTwins {
                class: ci,
                witness: w,
            });
            return Ok(report);
        }
    }
    for i in 0..rows.len() {
        for j in i..rows.len() {
            if rows[i].norm() != 0 || rows[i].hadamard(&rows[j])?.norm() != 0 {
                report.failure = Some(PremiseFailure::NotTwoClosed { rows: (i, j) });
                return Ok(report);
            }
        }
    }
    report.status = Status::from_bool(report.divisible as i64 >= report.required);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePowerReport {
    pub status: Status,
    pub p: u32,
    pub alpha: u32,
    /// Smallest `beta >= alpha` with `beta = 1 (mod p - 1)`.
    pub beta: u32,
    pub d: usize,
    pub h: usize,
    pub dim_fb: usize,
    pub divisible: usize,
    /// `d - 2 alpha h`, possibly negative.
    pub required: i64,
    pub failure: Option<PremiseFailure>,
}

/// Smallest `beta >= alpha` with `beta = 1 (mod p - 1)`.
pub fn beta_for(p: u32, alpha: u32) -> u32 {
    let m = p - 1;
    let mut beta = alpha.max(1);
    while !(beta - 1).is_multiple_of(m) {
        beta += 1;
    }
    beta
}

fn prime_power(p: u32, alpha: u32) -> Result<u32> {
    p.checked_pow(alpha)
        .filter(|&q| q <= crate::MAX_MODULUS)
        .ok_or_else(|| {
            Error::Argument(format!("{p}^{alpha} exceeds the largest supported modulus"))
        })
}

/// For `F` that is `2(p + alpha)`-closed over `Z_{p^alpha}`, a partition
/// `A_1..A_d, B` with twin classes `A_i`, `d = dim <F>_p` and
/// `dim <F|_B>_p <= h`: at least `d - 2 alpha h` of the `|A_i|` are divisible
/// by `p^alpha`.
pub fn check_lemma_primepower(
    family: &SetFamily,
    prime: Prime,
    alpha: u32,
    classes: &[Vec<usize>],
    b: &[usize],
    h: usize,
) -> Result<PrimePowerReport> {
    if alpha == 0 {
        return Err(Error::Argument("alpha must be at least 1".into()));
    }
    let p = prime.get();
    let q = prime_power(p, alpha)?;
    let d = classes.len();
    let mut report = PrimePowerReport {
        status: Status::NotApplicable,
        p,
        alpha,
        beta: beta_for(p, alpha),
        d,
        h,
        dim_fb: project(family, b)?.dim_span(prime)?,
        divisible: classes.iter().filter(|c| c.len() % q as usize == 0).count(),
        required: d as i64 - 2 * alpha as i64 * h as i64,
        failure: None,
    };
    let mut all: Vec<Vec<usize>> = classes.to_vec();
    all.push(b.to_vec());
    if let Some(f) = check_partition(family.ground_size(), &all) {
        report.failure = Some(f);
        return Ok(report);
    }
    for (ci, class) in classes.iter().enumerate() {
        let separated = family.members().iter().position(|m| !constant_on(m, class));
        if class.is_empty() || separated.is_some() {
            report.failure = Some(PremiseFailure::NotTwins {
                class: ci,
                witness: separated.unwrap_or(0),
            });
            return Ok(report);
        }
    }
    let dim = family.dim_span(prime)?;
    if dim != d {
        report.failure = Some(PremiseFailure::ClassCount { classes: d, dim });
        return Ok(report);
    }
    if report.dim_fb > h {
        report.failure = Some(PremiseFailure::ResidualDimension {
            dim: report.dim_fb,
            bound: h,
        });
        return Ok(report);
    }
    let closure = is_k_closed(family, 2 * (p as u64 + alpha as u64), q)?;
    if !closure.holds {
        report.failure = Some(PremiseFailure::Closure { report: closure });
        return Ok(report);
    }
    report.status = Status::from_bool(report.divisible as i64 >= report.required);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallDimReport {
    pub status: Status,
    pub n: usize,
    pub p: u32,
    pub alpha: u32,
    pub t: u32,
    /// Union of the twin classes whose size is not divisible by `p^alpha`.
    pub b: Vec<usize>,
    pub dim_fb: usize,
    /// The bound is `6 n alpha / t`; this is its numerator `6 n alpha`.
    pub bound_numerator: u64,
    /// Closure order actually checked. The stated order `2^(t+1) (p + alpha)`
    /// saturates at `u64::MAX`; the power family of a 0/1 family stops growing
    /// long before that, so the check is still exact.
    pub closure_order: u64,
    pub failure: Option<PremiseFailure>,
}

/// Closure order `2^(t+1) (p + alpha)`, saturating at `u64::MAX`.
pub fn smalldim_closure_order(p: u32, alpha: u32, t: u32) -> u64 {
    1u64.checked_shl(t + 1)
        .filter(|_| t + 1 < 64)
        .and_then(|x| x.checked_mul(p as u64 + alpha as u64))
        .unwrap_or(u64::MAX)
}

/// For a non-reducible `F` that is `2^(t+1) (p + alpha)`-closed over
/// `Z_{p^alpha}`, the union `B` of twin classes with size not divisible by
/// `p^alpha` has `dim <F|_B>_p <= 6 n alpha / t`.
pub fn check_lemma_smalldim(
    family: &SetFamily,
    prime: Prime,
    alpha: u32,
    t: u32,
) -> Result<SmallDimReport> {
    if alpha == 0 || t == 0 {
        return Err(Error::Argument("alpha and t must be at least 1".into()));
    }
    let p = prime.get();
    let q = prime_power(p, alpha)?;
    let n = family.ground_size();
    let twins = twin_decomposition(family);
    let mut b: Vec<usize> = twins
        .classes
        .iter()
        .filter(|c| c.len() % q as usize != 0)
        .flat_map(|c| c.coords.iter().copied())
        .collect();
    b.sort_unstable();
    let closure_order = smalldim_closure_order(p, alpha, t);
    let mut report = SmallDimReport {
        status: Status::NotApplicable,
        n,
        p,
        alpha,
        t,
        dim_fb: project(family, &b)?.dim_span(prime)?,
        b,
        bound_numerator: 6 * n as u64 * alpha as u64,
        closure_order,
        failure: None,
    };
    if let Some(&coordinate) = twins.uncovered.first() {
        report.failure = Some(PremiseFailure::Reducible { coordinate });
        return Ok(report);
    }
    let closure = is_k_closed(family, closure_order, q)?;
    if !closure.holds {
        report.failure = Some(PremiseFailure::Closure { report: closure });
        return Ok(report);
    }
    report.status = Status::from_bool(report.dim_fb as u64 * t as u64 <= report.bound_numerator);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinatesReport {
    pub status: Status,
    pub size: usize,
    pub dim: usize,
    /// `l dim + 3 l`.
    pub bound: u64,
    pub failure: Option<PremiseFailure>,
}

/// Diagnostic: does `|I| <= l dim <F|_I>_p + 3l` hold on this instance? The
/// inequality is only guaranteed under inductive hypotheses that are not
/// checked here, so `Violated` is a legitimate outcome.
pub fn check_claim_coordinates(
    family: &SetFamily,
    coords: &[usize],
    prime: Prime,
    l: u32,
) -> Result<CoordinatesReport> {
    let mut i = coords.to_vec();
    i.sort_unstable();
    i.dedup();
    let dim = project(family, &i)?.dim_span(prime)?;
    let bound = l as u64 * dim as u64 + 3 * l as u64;
    let mut report = CoordinatesReport {
        status: Status::from_bool(i.len() as u64 <= bound),
        size: i.len(),
        dim,
        bound,
        failure: None,
    };
    if i.len() < l as usize {
        report.status = Status::NotApplicable;
        report.failure = Some(PremiseFailure::TooSmall {
            size: i.len(),
            minimum: l as usize,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{atomic_family, s_family, AtomSpec};
    use crate::linalg::{rref, ModMatrix};

    fn basis(p: u32, rows: &[&[u32]]) -> SubspaceBasis {
        rref(&ModMatrix::from_rows(p, rows).unwrap()).unwrap()
    }

    #[test]
    fn bilinear_examples() {
        let v = basis(2, &[&[1, 1]]);
        let r = check_bilinear_bound(&[1, 1], &v).unwrap();
        assert_eq!((r.status, r.dim, r.z), (Status::Holds, 1, 0));
        let full = basis(2, &[&[1, 0], &[0, 1]]);
        let r = check_bilinear_bound(&[1, 1], &full).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
        assert_eq!(r.witness, Some((0, 0)));
        assert_eq!(
            check_bilinear_bound(&[0, 0], &full).unwrap().status,
            Status::Holds
        );
    }

    #[test]
    fn beta_values() {
        assert_eq!(beta_for(2, 3), 3);
        assert_eq!(beta_for(3, 2), 3);
        assert_eq!(beta_for(5, 2), 5);
        assert_eq!(beta_for(7, 1), 1);
    }

    #[test]
    fn prime_lemma_examples() {
        let p = Prime::new(3).unwrap();
        let v = s_family(6, 3).span(p).unwrap();
        let r = check_lemma_prime(&v, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!((r.status, r.divisible, r.h), (Status::Holds, 2, 0));

        let zero = basis(3, &[&[0, 0, 0]]);
        let r = check_lemma_prime(&zero, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!((r.status, r.required), (Status::Holds, -3));

        let r = check_lemma_prime(&v, &[vec![0, 1], vec![2, 3, 4, 5]]).unwrap();
        assert!(matches!(r.failure, Some(PremiseFailure::NotTwins { .. })));
    }

    #[test]
    fn primepower_atomic() {
        let f = s_family(8, 4);
        let r = check_lemma_primepower(
            &f,
            Prime::new(2).unwrap(),
            2,
            &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            &[],
            0,
        )
        .unwrap();
        assert_eq!((r.status, r.divisible), (Status::Holds, 2));
        let e = SetFamily::empty_set_only(3);
        let r = check_lemma_primepower(&e, Prime::new(2).unwrap(), 1, &[], &[0, 1, 2], 0).unwrap();
        assert_eq!(r.status, Status::Holds);
    }

    #[test]
    fn smalldim_examples() {
        let p = Prime::new(2).unwrap();
        let r = check_lemma_smalldim(&s_family(8, 4), p, 2, 3).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert!(r.b.is_empty());

        let spec = AtomSpec::new(9, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![8]]).unwrap();
        let r = check_lemma_smalldim(&atomic_family(&spec), p, 2, 3).unwrap();
        assert_eq!(r.b, vec![8]);
        assert_eq!(r.status, Status::NotApplicable);
        assert!(matches!(r.failure, Some(PremiseFailure::Closure { .. })));
    }

    #[test]
    fn coordinates_examples() {
        let f = s_family(9, 3);
        let p = Prime::new(3).unwrap();
        let r = check_claim_coordinates(&f, &[0, 1, 2], p, 3).unwrap();
        assert_eq!((r.status, r.bound), (Status::Holds, 12));
        let all: Vec<usize> = (0..9).collect();
        assert_eq!(
            check_claim_coordinates(&f, &all, p, 3).unwrap().status,
            Status::Holds
        );
        assert_eq!(
            check_claim_coordinates(&f, &[0], p, 3).unwrap().status,
            Status::NotApplicable
        );
    }
}
