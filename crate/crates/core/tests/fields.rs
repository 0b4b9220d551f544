use dlvar_core::gf::Gf;
use dlvar_core::gfpoly::Poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u32, u32); 6] = [(2, 1), (2, 3), (3, 2), (5, 1), (2, 4), (7, 2)];

#[test]
fn field_axioms() {
    for (p, k) in FIELDS {
        let f = Gf::new(p, k).unwrap();
        assert_eq!(f.order(), p.pow(k));
        let els: Vec<u32> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                assert_eq!(f.pow(a, u64::from(f.order() - 1)), 1);
            }
            for &b in els.iter().step_by(3) {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in els.iter().step_by(5) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
        assert!(f.inv(0).is_none());
        // the primitive element has order q − 1
        let g = f.primitive();
        let ord = (1..f.order()).find(|&e| f.pow(g, u64::from(e)) == 1).unwrap();
        assert_eq!(ord, f.order() - 1);
    }
    assert!(Gf::new(4, 1).is_err());
    assert!(Gf::new(2, 11).is_err());
}

#[test]
fn frobenius_and_square_roots() {
    for (p, k) in FIELDS {
        let f = Gf::new(p, k).unwrap();
        for a in f.elements() {
            assert_eq!(f.frob(a), f.pow(a, u64::from(p)));
            assert_eq!(f.frob_pow(a, k), a);
            assert_eq!(f.in_subfield(a, 1), f.pow(a, u64::from(p)) == a);
            for b in f.elements().step_by(7) {
                assert_eq!(f.frob(f.mul(a, b)), f.mul(f.frob(a), f.frob(b)));
                assert_eq!(f.frob(f.add(a, b)), f.add(f.frob(a), f.frob(b)));
            }
            let brute = f.elements().any(|x| f.mul(x, x) == a);
            assert_eq!(f.is_square(a), brute);
            if let Some(r) = f.sqrt(a) {
                assert_eq!(f.mul(r, r), a);
            } else {
                assert!(!brute);
            }
        }
        assert_eq!(f.elements().filter(|&a| f.in_subfield(a, 1)).count() as u32, p);
    }
}

#[test]
fn polynomial_factorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, k) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
        let f = Gf::new(p, k).unwrap();
        for _ in 0..40 {
            let deg = rng.gen_range(1..9);
            let mut c: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..f.order())).collect();
            c.push(1);
            let a = Poly::new(c);
            let factors = a.factor(&f);
            let product = factors.iter().fold(Poly::one(), |acc, (g, m)| acc.mul(&f, &g.pow(&f, *m as u32)));
            assert_eq!(product, a);
            for (g, _) in &factors {
                // irreducible: no monic factor of degree ≤ deg/2, tested via roots and gcds
                let d = g.deg().unwrap();
                if d > 1 {
                    assert!(g.roots(&f).is_empty());
                }
                assert_eq!(g.gcd(&f, &g.derivative(&f)).deg(), Some(0));
            }
            // linear factors are exactly the roots
            let linear: Vec<u32> =
                factors.iter().filter(|(g, _)| g.deg() == Some(1)).map(|(g, _)| f.neg(g.coeff(0))).collect();
            let mut linear = linear;
            linear.sort();
            assert_eq!(linear, a.roots(&f));
        }
    }
    // x⁴ + x + 1 is irreducible over F₂, x⁴ + 1 = (x + 1)⁴
    let f2 = Gf::new(2, 1).unwrap();
    assert_eq!(Poly::new(vec![1, 1, 0, 0, 1]).factor(&f2).len(), 1);
    assert_eq!(Poly::new(vec![1, 0, 0, 0, 1]).factor(&f2), vec![(Poly::new(vec![1, 1]), 4)]);
}

#[test]
fn division_with_remainder() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = Gf::new(3, 2).unwrap();
    for _ in 0..50 {
        let a = Poly::new((0..7).map(|_| rng.gen_range(0..9)).collect());
        let mut dc: Vec<u32> = (0..3).map(|_| rng.gen_range(0..9)).collect();
        dc.push(rng.gen_range(1..9));
        let d = Poly::new(dc);
        let (q, r) = a.divrem(&f, &d);
        assert_eq!(q.mul(&f, &d).add(&f, &r), a);
        assert!(r.deg().map_or(true, |x| x < 3));
    }
}
