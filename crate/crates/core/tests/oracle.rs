mod common;

use common::rewrite::Oracle;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use uqint::uqsl2::SmallQuantumGroup;
use uqint::{CycContext, CycRat};

#[test]
fn oracle_satisfies_defining_relations() {
    let ctx = CycContext::new(5).unwrap();
    let o = Oracle::new(ctx);
    let one = CycRat::one(ctx);
    let e = [((1, 0, 0), one.clone())].into_iter().collect();
    let f = [((0, 0, 1), one.clone())].into_iter().collect();
    let ef = o.mul(&e, &f);
    let fe = o.mul(&f, &e);
    let mut comm = ef.clone();
    for (m, c) in fe {
        let slot = comm.entry(m).or_insert_with(|| CycRat::zero(ctx));
        *slot -= &c;
        if slot.is_zero() {
            comm.remove(&m);
        }
    }
    let expect = [((0, 1, 0), one.clone()), ((0, 4, 0), -one)].into_iter().collect();
    assert_eq!(comm, expect);
}

#[test]
fn idempotents_are_orthogonal() {
    let ctx = CycContext::new(3).unwrap();
    let o = Oracle::new(ctx);
    let u = SmallQuantumGroup::new(ctx);
    for m in 0..3 {
        for n in 0..3 {
            let x = o.lift_terms(u.idem(m).terms());
            let y = o.lift_terms(u.idem(n).terms());
            let p = o.mul(&x, &y);
            if m == n {
                assert_eq!(p, x);
            } else {
                assert!(p.is_empty());
            }
        }
    }
}

#[test]
fn pbw_product_matches_oracle_on_random_pairs() {
    let ctx = CycContext::new(3).unwrap();
    let u = SmallQuantumGroup::new(ctx);
    let o = Oracle::new(ctx);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        let (i, j) = (rng.gen_range(0..u.dim()), rng.gen_range(0..u.dim()));
        let (x, y) = (u.monomial(u.pbw(i)), u.monomial(u.pbw(j)));
        let lhs = o.lift_terms(u.mul(&x, &y).terms());
        let rhs = o.mul(&o.lift_terms(x.terms()), &o.lift_terms(y.terms()));
        assert_eq!(lhs, rhs, "pair {:?} {:?}", u.pbw(i), u.pbw(j));
    }
}

#[test]
fn full_table_matches_oracle_r5_sample() {
    let ctx = CycContext::new(5).unwrap();
    let u = SmallQuantumGroup::new(ctx);
    let o = Oracle::new(ctx);
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..60 {
        let (i, j) = (rng.gen_range(0..u.dim()), rng.gen_range(0..u.dim()));
        let (x, y) = (u.monomial(u.pbw(i)), u.monomial(u.pbw(j)));
        let lhs = o.lift_terms(u.mul(&x, &y).terms());
        let rhs = o.mul(&o.lift_terms(x.terms()), &o.lift_terms(y.terms()));
        assert_eq!(lhs, rhs, "pair {:?} {:?}", u.pbw(i), u.pbw(j));
    }
}
