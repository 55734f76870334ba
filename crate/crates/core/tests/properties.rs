use std::sync::Arc;

use proptest::prelude::*;
use proptest::sample::subsequence;

use twistgrs::bkt::BktTable;
use twistgrs::codes::{grs, GrsSpec, LinearCode};
use twistgrs::cosets::CosetTable;
use twistgrs::galois::{Field, FieldElem};
use twistgrs::ring::{interp, interp_lagrange, PolyR};
use twistgrs::search::{Algorithm, Candidate};

const SHAPES: &[(u32, u32)] = &[(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2)];

fn gf(i: usize) -> Arc<Field> {
    let (p, m) = SHAPES[i % SHAPES.len()];
    Arc::new(Field::new(p, m).unwrap())
}

fn elem(f: &Field, raw: u32) -> FieldElem {
    f.element(raw % f.q()).unwrap()
}

fn poly(f: &Arc<Field>, raws: &[u32]) -> PolyR {
    let coeffs = (0..f.n())
        .map(|i| elem(f, raws[i % raws.len()].wrapping_add(i as u32 * 7)))
        .collect();
    PolyR::from_coeffs(f, coeffs).unwrap()
}

fn code(f: &Arc<Field>, n: usize, rows: usize, raws: &[u32]) -> LinearCode {
    let mut it = raws.iter().cycle().enumerate();
    let rows = (0..rows)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let (i, &r) = it.next().unwrap();
                    elem(f, r.wrapping_mul(31).wrapping_add(i as u32))
                })
                .collect()
        })
        .collect();
    LinearCode::new(f, n, rows).unwrap()
}

/// A cyclotomic element: the trace of an arbitrary polynomial.
fn cyclotomic(f: &Arc<Field>, raws: &[u32]) -> PolyR {
    poly(f, raws).t_map()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_prime_valued_and_linear(fi in 0usize..7, a in any::<u32>(), b in any::<u32>()) {
        let f = gf(fi);
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert!(f.in_prime_field(f.trace(a)));
        prop_assert_eq!(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
        prop_assert_eq!(f.trace(f.frobenius(a, 1)), f.trace(a));
        let c = f.from_int(3);
        prop_assert_eq!(f.trace(f.mul(c, a)), f.mul(c, f.trace(a)));
    }

    #[test]
    fn log_round_trip(fi in 0usize..7, a in any::<u32>()) {
        let f = gf(fi);
        let a = elem(&f, a);
        match f.log(a) {
            None => prop_assert!(a.is_zero()),
            Some(l) => prop_assert_eq!(f.eta_pow(l as i64), a),
        }
        prop_assert_eq!(f.from_digits(&f.digits(a)).unwrap(), a);
    }

    #[test]
    fn ev_is_a_ring_isomorphism(fi in 0usize..7, x in prop::collection::vec(any::<u32>(), 1..8), y in prop::collection::vec(any::<u32>(), 1..8)) {
        let f = gf(fi);
        let (a, b) = (poly(&f, &x), poly(&f, &y));
        let prod = a.mul(&b).unwrap().ev();
        let pointwise: Vec<FieldElem> = a.ev().iter().zip(b.ev()).map(|(&u, v)| f.mul(u, v)).collect();
        prop_assert_eq!(prod, pointwise);
        let sum: Vec<FieldElem> = a.ev().iter().zip(b.ev()).map(|(&u, v)| f.add(u, v)).collect();
        prop_assert_eq!(a.add(&b).unwrap().ev(), sum);
        prop_assert_eq!(interp(&f, &a.ev()).unwrap(), a.clone());
        prop_assert_eq!(interp_lagrange(&f, &a.ev()).unwrap(), a);
    }

    #[test]
    fn t_map_laws(fi in 0usize..7, x in prop::collection::vec(any::<u32>(), 1..8), y in prop::collection::vec(any::<u32>(), 1..8)) {
        let f = gf(fi);
        let h = poly(&f, &x);
        let g = cyclotomic(&f, &y);
        let th = h.t_map();
        prop_assert!(th.is_cyclotomic());
        prop_assert_eq!(h.mul(&g).unwrap().t_map(), g.mul(&th).unwrap());
        let m_mod_p = f.from_int(f.m() as i64);
        prop_assert_eq!(th.t_map(), th.scale(m_mod_p));
        let check = g.cyclotomic_check();
        prop_assert!(check.frobenius_fixed && check.prime_valued);
        let tp = g.trace_preimage().unwrap();
        prop_assert_eq!(tp.t_map(), g);
    }

    #[test]
    fn cyclotomic_criteria_agree(fi in 0usize..7, x in prop::collection::vec(any::<u32>(), 1..8)) {
        let f = gf(fi);
        let check = poly(&f, &x).cyclotomic_check();
        prop_assert_eq!(check.frobenius_fixed, check.prime_valued);
    }

    #[test]
    fn dual_is_an_involution(fi in 0usize..7, n in 1usize..14, rows in 0usize..14, raws in prop::collection::vec(any::<u32>(), 1..40)) {
        let f = gf(fi);
        let c = code(&f, n, rows.min(n), &raws);
        let d = c.dual();
        prop_assert_eq!(c.dimension() + d.dimension(), n);
        prop_assert_eq!(d.dual(), c.clone());
        for row in d.basis() {
            let ok = c.basis().iter().all(|r| {
                r.iter().zip(row).fold(FieldElem::ZERO, |acc, (&u, &v)| f.add(acc, f.mul(u, v))).is_zero()
            });
            prop_assert!(ok);
        }
    }

    #[test]
    fn puncture_shorten_duality(fi in 0usize..7, n in 2usize..14, rows in 0usize..14, raws in prop::collection::vec(any::<u32>(), 1..40), pick in any::<prop::sample::Index>()) {
        let f = gf(fi);
        let c = code(&f, n, rows.min(n), &raws);
        let take = 1 + pick.index(n - 1);
        let coords: Vec<usize> = (1..=n).rev().take(take).collect();
        prop_assert_eq!(c.dual().shorten(&coords).unwrap(), c.puncture(&coords).unwrap().dual());
        prop_assert_eq!(c.shorten(&coords).unwrap().dual(), c.dual().puncture(&coords).unwrap());
    }

    #[test]
    fn subfield_subcode_paths_agree(fi in 0usize..7, n in 1usize..12, rows in 0usize..12, raws in prop::collection::vec(any::<u32>(), 1..40)) {
        let f = gf(fi);
        let c = code(&f, n, rows.min(n), &raws);
        let sub = c.subfield_subcode();
        prop_assert_eq!(&sub, &c.subfield_subcode_direct());
        prop_assert!(sub.dimension() + f.m() as usize * (n - c.dimension()) >= n);
        prop_assert_eq!(sub.dual(), c.dual().trace_code());
    }

    #[test]
    fn grs_has_full_dimension(fi in 0usize..7, raws in prop::collection::vec(any::<u32>(), 1..20), k in 0usize..10) {
        let f = gf(fi);
        let n = f.n().min(12);
        let twist = (0..n).map(|i| {
            let v = elem(&f, raws[i % raws.len()]);
            if v.is_zero() { FieldElem::ONE } else { v }
        }).collect();
        let spec = GrsSpec::new(&f, (0..n).collect(), twist, k.min(n)).unwrap();
        prop_assert_eq!(grs(&spec).dimension(), k.min(n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cosets_partition_the_exponents(p in prop::sample::select(vec![2usize, 3, 5, 7]), n in 1usize..200) {
        prop_assume!(n % p != 0);
        let t = CosetTable::with_modulus(p, n);
        let mut seen = vec![0u32; n];
        for c in t.cosets() {
            prop_assert_eq!(c.rep, *c.elements.iter().min().unwrap());
            for &e in &c.elements {
                seen[e] += 1;
                prop_assert_eq!(t.rep_of(e), c.rep);
                prop_assert!(c.contains(e * p % n));
            }
        }
        prop_assert!(seen.iter().all(|&s| s == 1));
    }

    #[test]
    fn coset_polynomial_sums_are_cyclotomic(fi in 0usize..7, picks in subsequence((0usize..64).collect::<Vec<_>>(), 1..4)) {
        let f = gf(fi);
        let t = CosetTable::new(&f);
        let reps: Vec<usize> = picks.iter().map(|&i| t.cosets()[i % t.cosets().len()].rep).collect();
        let exps = t.union_elements(&reps).unwrap();
        prop_assert!(t.is_union(&exps));
        prop_assert!(PolyR::from_support(&f, &exps).is_cyclotomic());
    }

    /// Removing a union U of points is the twisted construction for the
    /// normalized twist that vanishes exactly on U, and also the full-length
    /// code shortened on U.
    #[test]
    fn removing_points_matches_the_normalized_twist(fi in 0usize..4, picks in subsequence((0usize..64).collect::<Vec<_>>(), 1..3), k in 1usize..6) {
        let f = gf(fi);
        let t = CosetTable::new(&f);
        let reps: Vec<usize> = picks.iter().map(|&i| t.cosets()[i % t.cosets().len()].rep).collect();
        let removed = Candidate::new(&f, Algorithm::Alg2, &reps).unwrap();
        prop_assume!(!removed.is_empty());
        let k = k.min(removed.len());
        let zeros = removed.zero_set();
        let values: Vec<FieldElem> = (0..f.n())
            .map(|e| if zeros.contains(&e) { FieldElem::ZERO } else { FieldElem::ONE })
            .collect();
        let g_hat = interp(&f, &values).unwrap();
        prop_assert_eq!(g_hat.zero_set(), zeros.clone());
        let spec = GrsSpec::from_twist_poly(&g_hat, k).unwrap();
        let via_twist = grs(&spec).trace_code().dual();
        let a = removed.code(k).unwrap();
        prop_assert_eq!(&a, &via_twist);
        let full = Candidate::new(&f, Algorithm::Alg2, &[]).unwrap().code(k).unwrap();
        let coords: Vec<usize> = zeros.iter().map(|e| e + 1).collect();
        prop_assert_eq!(&a, &full.shorten(&coords).unwrap());
    }

    #[test]
    fn table_csv_round_trip(entries in prop::collection::btree_map((1usize..60, 1usize..60), 1u32..60, 0..20)) {
        let mut t = BktTable::empty(3);
        for (&(n, k), &d) in &entries {
            if k <= n && d as usize <= n {
                t.insert(n, k, d);
            }
        }
        // Random data need not be monotone; only round-trip tables that are.
        if let Ok(back) = BktTable::parse(&t.to_csv(), 3) {
            prop_assert_eq!(back.to_csv(), t.to_csv());
        }
    }
}

#[test]
fn ingest_reads_files_and_skips_other_primes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    std::fs::write(&path, "# p,n,k,d\n2,7,4,3\n3,13,7,5\n2,8,4,4\n").unwrap();
    let t = BktTable::ingest(&path, 2).unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(t.lookup(8, 4), Some(4));
    assert_eq!(t.lookup(13, 7), None);
    assert!(t.source().ends_with("t.csv"));
    assert!(BktTable::ingest(&dir.path().join("missing.csv"), 2).is_err());
}
