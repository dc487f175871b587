mod common;

use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use demazure::linalg::{self, ints, Integer};
use demazure::{pairing, primitive as lib_primitive, Cone, DualVector, LatticeVector, Sublattice};

fn lib_cone(rank: usize, gens: &[Vec<i64>]) -> Cone {
    Cone::build(rank, gens.iter().map(|g| DualVector::from_i64(g)).collect()).unwrap()
}

fn lib_rays(c: &Cone) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = c.extremal_rays().iter().map(|r| small(r.coords())).collect();
    v.sort();
    v
}

#[test]
fn double_description_matches_caratheodory_oracle() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let rank = rng.gen_range(1..=3);
        let gens = random_pointed_cone(&mut rng, rank, 5, 4);
        let cone = lib_cone(rank, &gens);
        assert_eq!(lib_rays(&cone), oracle_rays(&gens), "rays of {gens:?}");
        for p in box_points(rank, 3) {
            assert_eq!(cone.contains(&DualVector::from_i64(&p)), in_cone(&p, &gens), "{p:?} in {gens:?}");
        }
        for n in cone.facet_normals() {
            let n = small(n.coords());
            assert!(gens.iter().all(|g| dot(&n, g) >= 0));
        }
    }
}

#[test]
fn lines_are_rejected_with_witness() {
    let mut rng = StdRng::seed_from_u64(12);
    let mut seen = 0;
    while seen < 50 {
        let rank = rng.gen_range(1..=3);
        let gens: Vec<Vec<i64>> =
            (0..rng.gen_range(2..=5)).map(|_| (0..rank).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        if !has_line(&gens) {
            continue;
        }
        seen += 1;
        match Cone::build(rank, gens.iter().map(|g| DualVector::from_i64(g)).collect()) {
            Err(demazure::Error::NotStrictlyConvex { witness }) => {
                let w: Vec<i64> = witness.iter().map(|s| s.parse().unwrap()).collect();
                let neg: Vec<i64> = w.iter().map(|x| -x).collect();
                assert!(in_cone(&w, &gens) && in_cone(&neg, &gens), "witness {w:?} for {gens:?}");
            }
            other => panic!("{gens:?} gave {other:?}"),
        }
    }
}

#[test]
fn hilbert_bases_match_box_scans() {
    for (name, rank, gens) in cone_catalog() {
        let cone = lib_cone(rank, &gens);
        let hb: BTreeSet<Vec<i64>> = cone.dual_monoid().hilbert_basis.iter().map(|l| small(l.coords())).collect();
        let b = if rank == 2 { 20 } else { 12 };
        assert!(hb.iter().all(|h| h.iter().all(|x| x.abs() <= b / 2)), "{name}: basis leaves the scanned box");
        assert!(hb.iter().all(|h| in_dual(&gens, h)), "{name}");
        let basis: Vec<Vec<i64>> = hb.iter().cloned().collect();
        assert!(ungenerated(&gens, rank, b, &basis).is_empty(), "{name} is not generated");
        if is_full_dimensional(rank, &gens) {
            assert_eq!(hb, brute_hilbert_basis(&gens, rank, b), "{name}");
        }
    }
}

#[test]
fn skew_cone_basis() {
    let cone = lib_cone(2, &[vec![1, 0], vec![1, 2]]);
    let hb: BTreeSet<Vec<i64>> = cone.dual_monoid().hilbert_basis.iter().map(|l| small(l.coords())).collect();
    assert_eq!(hb, BTreeSet::from([vec![0, 1], vec![1, 0], vec![2, -1]]));
}

#[test]
fn index_two_sublattice_monoid() {
    let cone = lib_cone(2, &[vec![1, 0], vec![0, 1]]);
    let m = Sublattice::new(2, vec![ints(&[2, 0]), ints(&[0, 1])]).unwrap();
    let hb: BTreeSet<Vec<i64>> =
        cone.dual_monoid_in(&m).unwrap().hilbert_basis.iter().map(|l| small(l.coords())).collect();
    assert_eq!(hb, BTreeSet::from([vec![0, 1], vec![2, 0]]));
}

fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-30i64..=30, n)
}

proptest! {
    #[test]
    fn pairing_is_bilinear(r in vec_strategy(3), s in vec_strategy(3), a in vec_strategy(3), b in vec_strategy(3), k in -5i64..=5) {
        let rho = DualVector::from_i64(&r);
        let sum: Vec<i64> = r.iter().zip(&s).map(|(x, y)| x + y).collect();
        let la = LatticeVector::from_i64(&a);
        let lb = LatticeVector::from_i64(&b);
        let lhs = pairing(&rho, &(&la + &lb)).unwrap();
        prop_assert_eq!(lhs, pairing(&rho, &la).unwrap() + pairing(&rho, &lb).unwrap());
        prop_assert_eq!(
            pairing(&DualVector::from_i64(&sum), &la).unwrap(),
            pairing(&rho, &la).unwrap() + pairing(&DualVector::from_i64(&s), &la).unwrap()
        );
        prop_assert_eq!(pairing(&rho, &la.scale(&Integer::from(k))).unwrap(), pairing(&rho, &la).unwrap() * k);
    }

    #[test]
    fn primitive_is_idempotent(v in vec_strategy(4)) {
        prop_assume!(v.iter().any(|x| *x != 0));
        let p = lib_primitive(&DualVector::from_i64(&v)).unwrap();
        prop_assert_eq!(lib_primitive(&p).unwrap(), p.clone());
        prop_assert_eq!(small(p.coords()), primitive(&v));
    }

    #[test]
    fn smith_form_round_trips(rows in prop::collection::vec(vec_strategy(3), 1..4)) {
        let a: linalg::IntMatrix = rows.iter().map(|r| ints(r)).collect();
        let snf = linalg::smith_normal_form(&a, 3);
        let uav = linalg::mat_mul(&linalg::mat_mul(&snf.u, &a, 3), &snf.v, 3);
        prop_assert_eq!(&uav, &snf.d);
        prop_assert_eq!(linalg::det(&snf.u).abs(), Integer::from(1));
        prop_assert_eq!(linalg::det(&snf.v).abs(), Integer::from(1));
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0].is_zero_or_divides(&w[1]));
        }
    }

    #[test]
    fn sublattice_membership_matches_scan(v in prop::collection::vec(-6i64..=6, 2)) {
        // M spanned by (2,1) and (0,3): index 6.
        let m = Sublattice::new(2, vec![ints(&[2, 1]), ints(&[0, 3])]).unwrap();
        let scan = (-10..=10).any(|a: i64| (-10..=10).any(|b: i64| 2 * a == v[0] && a + 3 * b == v[1]));
        prop_assert_eq!(m.contains(&LatticeVector::from_i64(&v).retag(demazure::LatticeTag::Characters)).unwrap(), scan);
    }
}

trait DividesExt {
    fn is_zero_or_divides(&self, other: &Integer) -> bool;
}

impl DividesExt for Integer {
    fn is_zero_or_divides(&self, other: &Integer) -> bool {
        use num_traits::Zero;
        if self.is_zero() {
            other.is_zero()
        } else {
            (other % self).is_zero()
        }
    }
}
