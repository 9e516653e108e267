//! Golden checks for the worked examples of the sibling decomposition, the
//! resolution of each column of `C`, and the resulting certificate.

use ldiv::arith::Prime;
use ldiv::family::parse_vectors;
use ldiv::linalg::{rref_rows, ModVector, SubspaceBasis};
use ldiv::structure::{
    build_certificate_for_basis, claim_c_prime, sibling_decomposition, ClaimCase,
};

fn f3() -> Prime {
    Prime::new(3).unwrap()
}

fn example_basis() -> SubspaceBasis {
    let text = include_str!("../data/worked_example.vec");
    let (n, modulus, rows) = parse_vectors(text).unwrap();
    assert_eq!((n, modulus), (12, 3));
    let basis = rref_rows(f3(), n, rows.clone()).unwrap();
    assert_eq!(basis.rows(), &rows[..], "input is already reduced");
    basis
}

fn sparse(entries: &[(usize, u32)]) -> Vec<(usize, u32)> {
    entries.to_vec()
}

fn nonzero(v: &ModVector) -> Vec<(usize, u32)> {
    v.support().into_iter().map(|j| (j, v.get(j))).collect()
}

pub fn sibling_classes_and_c() {
    let basis = example_basis();
    assert_eq!(basis.pivots(), &[0, 1, 2, 3]);
    let sib = sibling_decomposition(&basis).unwrap();
    let coords: Vec<Vec<usize>> = sib.classes.iter().map(|c| c.coords.clone()).collect();
    assert_eq!(
        coords,
        vec![vec![0, 9], vec![1, 4, 10], vec![2], vec![3, 6]]
    );
    assert_eq!(sib.class_sizes(), vec![2, 3, 1, 2]);
    assert_eq!(sib.b_prime, vec![5, 7, 8, 11]);
    assert_eq!(sib.classes[0].scalars, vec![1, 2]);
    assert_eq!(sib.classes[1].scalars, vec![1, 2, 2]);
    assert!(sib.classes[2].is_twin_class() && sib.classes[3].is_twin_class());
    assert!(!sib.classes[0].is_twin_class() && !sib.classes[1].is_twin_class());
    let c = ldiv::structure::choose_c(&basis, &sib.b_prime).unwrap();
    assert_eq!(c, vec![5, 7, 8]);
}

fn restricted_example() -> Vec<ModVector> {
    [
        [0, 1, 1],
        [1, 1, 2],
        [2, 0, 1],
        [2, 0, 0],
        [1, 0, 0],
        [2, 0, 0],
    ]
    .iter()
    .map(|r| ModVector::from_residues(3, r).unwrap())
    .collect()
}

pub fn first_column_has_a_row_outside_the_basis() {
    let r = claim_c_prime(0, &restricted_example(), f3()).unwrap();
    assert_eq!(r.case, ClaimCase::OutsideBasis);
    assert_eq!(r.k, 3);
    assert_eq!(r.alpha, 0);
    // 1_{c1} = w1 + 2 w2 + w3
    assert_eq!(r.x, vec![1, 2, 1, 0, 0, 0]);
    assert_eq!(r.y, vec![0, 0, 0, 2, 0, 0]);
}

pub fn second_column_has_a_zero_coefficient() {
    let r = claim_c_prime(1, &restricted_example(), f3()).unwrap();
    assert_eq!(r.case, ClaimCase::ZeroCoefficient);
    assert_eq!(r.k, 0);
    assert_eq!(r.x, vec![0, 1, 1, 0, 0, 0]);
    assert_eq!(r.y, vec![1, 0, 0, 0, 0, 0]);
    assert_eq!(r.alpha, 0);
}

pub fn third_column_combines_two_columns() {
    let r = claim_c_prime(2, &restricted_example(), f3()).unwrap();
    assert_eq!(r.case, ClaimCase::Combined);
    assert_eq!(r.c_prime, Some(0));
    assert_eq!(r.k, 0);
    assert_eq!(r.beta, Some(2));
    assert_eq!(r.x, vec![0, 0, 1, 0, 0, 0]);
    assert_eq!(r.y, vec![1, 0, 0, 0, 0, 0]);
    assert_eq!(r.alpha, 0);
}

pub fn certificate_vectors() {
    let cert = build_certificate_for_basis(&example_basis()).unwrap();
    assert!(cert.checks.all(), "{:?}", cert.checks);
    assert_eq!(cert.c, vec![5, 7, 8]);

    let z1 = &cert.z[0];
    assert_eq!(z1.case, ClaimCase::ZeroCoefficient);
    assert_eq!(nonzero(&z1.z), sparse(&[(5, 1), (11, 1)]));

    let z2 = &cert.z[1];
    assert_eq!(z2.case, ClaimCase::Combined);
    assert_eq!((z2.c_prime, z2.beta, z2.alpha), (Some(8), Some(1), 2));
    assert_eq!(nonzero(&z2.z), sparse(&[(7, 1), (8, 2), (11, 1)]));

    // Any valid z_{c3} restricts to 1_{c3} + alpha 1_{c'} on C and vanishes
    // off B'; the deterministic choice here lands in the first case.
    let z3 = &cert.z[2];
    assert_eq!(z3.case, ClaimCase::OutsideBasis);
    assert_eq!(nonzero(&z3.z), sparse(&[(8, 1), (11, 1)]));
    for z in &cert.z {
        assert!(z.z.support().iter().all(|j| [5, 7, 8, 11].contains(j)));
    }

    assert_eq!(cert.i, vec![0, 1]);
    let v1 = &cert.v_prime[0];
    assert_eq!((v1.row, v1.atom.clone(), v1.s), (0, vec![0], 1));
    assert_eq!(v1.vector.support(), vec![5, 9]);
    let v2 = &cert.v_prime[1];
    assert_eq!((v2.row, v2.atom.clone(), v2.s), (1, vec![4, 10], 2));
    assert_eq!(v2.vector.support(), vec![1, 5, 8]);

    assert_eq!(cert.atoms, vec![vec![0], vec![4, 10], vec![2], vec![3, 6]]);
    assert_eq!(cert.b, vec![1, 5, 7, 8, 9, 11]);
    assert!(cert.dim_vb <= 2 * cert.h);
    assert!(2 * cert.i.len() + cert.c.len() <= 2 * cert.h);
}
