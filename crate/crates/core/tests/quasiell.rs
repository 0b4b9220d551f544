use dlvar_core::gf::Gf;
use dlvar_core::gfpoly::{Poly, RatFn};
use dlvar_core::quasiell::{
    classify, classify_k3_family, classify_normal_form, elliptic_census_f2, integer_discriminant, normal_form_reduce,
    parse_coef, parse_tpoly, quasi_discriminant, quasi_discriminant_report, rdp_at_one, rdp_at_zero,
    residual_divisor_points, transform, valuation_profile, Coef, CoefField, LongTuple, NormalForm, RdpType,
    ShortWeierstrass, TPoly,
};
use dlvar_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use RdpType::*;

fn k(m: u32) -> CoefField {
    CoefField::finite(m).unwrap()
}

fn ku(m: u32) -> CoefField {
    CoefField::function_field(m).unwrap()
}

fn c(a: u32) -> Coef {
    RatFn::constant(a)
}

fn poly(kf: &CoefField, s: &str) -> TPoly {
    parse_tpoly(kf, s).unwrap()
}

fn weier(kf: &CoefField, a4: &str, a6: &str) -> ShortWeierstrass {
    ShortWeierstrass::new(poly(kf, a4), poly(kf, a6), 2).unwrap()
}

fn random_tpoly(f: &Gf, deg: usize, rng: &mut ChaCha8Rng) -> TPoly {
    TPoly::from_elems(&(0..=deg).map(|_| rng.gen_range(0..f.order())).collect::<Vec<_>>())
}

/// `Ψ` recomputed with the independent univariate polynomial type.
fn psi_oracle(f: &Gf, a4: &Poly, a6: &Poly) -> Poly {
    let d4 = a4.derivative(f);
    let d6 = a6.derivative(f);
    a4.mul(f, &d4.mul(f, &d4)).add(f, &d6.mul(f, &d6))
}

#[test]
fn quasi_discriminant_examples() {
    let f2 = k(1);
    let w = weier(&f2, "0", "t^5+t^7");
    assert_eq!(quasi_discriminant(&f2, &w), poly(&f2, "t^8+t^12"));
    assert_eq!(valuation_profile(&f2, &w).unwrap(), (8, 4, 8));

    let f4 = k(2);
    let w = weier(&f4, "0", "a*(t^5+t^7)");
    assert_eq!(quasi_discriminant(&f4, &w), poly(&f4, "a^2*(t^8+t^12)"));

    let constant = weier(&f2, "1", "1");
    assert!(quasi_discriminant(&f2, &constant).is_zero());
    assert!(matches!(quasi_discriminant_report(&f2, &constant), Err(Error::Hypothesis(_))));
}

#[test]
fn quasi_discriminant_matches_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for m in [1, 2, 3] {
        let kf = k(m);
        let f = kf.gf();
        for _ in 0..30 {
            let a4 = random_tpoly(f, 8, &mut rng);
            let a6 = random_tpoly(f, 12, &mut rng);
            let w = ShortWeierstrass::new(a4.clone(), a6.clone(), 2).unwrap();
            let want = psi_oracle(f, &a4.to_gf_poly().unwrap(), &a6.to_gf_poly().unwrap());
            assert_eq!(quasi_discriminant(&kf, &w).to_gf_poly().unwrap(), want);
        }
    }
}

#[test]
fn valuations_add_up_to_twelve_d_minus_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in [1, 2] {
        let kf = k(m);
        for d in [1usize, 2, 3] {
            for _ in 0..15 {
                let w = ShortWeierstrass::new(
                    random_tpoly(kf.gf(), 4 * d, &mut rng),
                    random_tpoly(kf.gf(), 6 * d, &mut rng),
                    d,
                )
                .unwrap();
                let Ok(r) = quasi_discriminant_report(&kf, &w) else { continue };
                assert!(r.complete);
                let total: usize = r.places.iter().map(|p| p.degree * p.valuation).sum();
                assert_eq!(total, 12 * d - 4);
            }
        }
    }
}

#[test]
fn transform_examples_and_psi_invariance() {
    let f2 = k(1);
    let w = weier(&f2, "0", "t^5+t^7");
    assert_eq!(transform(&f2, &w, &c(1), &TPoly::zero(), &TPoly::zero()).unwrap(), w);
    let moved = transform(&f2, &w, &c(1), &poly(&f2, "1"), &TPoly::zero()).unwrap();
    assert_eq!(moved, weier(&f2, "1", "t^5+t^7+1"));
    assert!(transform(&f2, &w, &c(0), &TPoly::zero(), &TPoly::zero()).is_err());

    // Ψ picks up u^{-12}
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let kf = k(3);
    let f = kf.gf();
    for _ in 0..50 {
        let w = ShortWeierstrass::new(random_tpoly(f, 8, &mut rng), random_tpoly(f, 12, &mut rng), 2).unwrap();
        let u = c(rng.gen_range(1..f.order()));
        let s = random_tpoly(f, 2, &mut rng);
        let tau = random_tpoly(f, 6, &mut rng);
        let w2 = transform(&kf, &w, &u, &s, &tau).unwrap();
        let scale = kf.pow(&u, -12).unwrap();
        assert_eq!(quasi_discriminant(&kf, &w2), quasi_discriminant(&kf, &w).scale(&kf, &scale));
    }
}

#[test]
fn normal_forms() {
    let f2 = k(1);
    let nf = normal_form_reduce(&f2, &weier(&f2, "0", "t^5+t^7")).unwrap();
    assert_eq!(nf, NormalForm { lambda2: c(0), lambda6: c(0), mu: c(1) });
    assert!(matches!(normal_form_reduce(&f2, &weier(&f2, "0", "t^5")), Err(Error::Hypothesis(_))));
    let d3 = ShortWeierstrass::new(TPoly::zero(), poly(&f2, "t^5+t^7"), 3).unwrap();
    assert!(matches!(normal_form_reduce(&f2, &d3), Err(Error::Hypothesis(_))));
}

#[test]
fn normal_form_is_stable_under_coordinate_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for m in [2, 3] {
        let kf = k(m);
        let f = kf.gf();
        for _ in 0..25 {
            let mu = c(rng.gen_range(1..f.order()));
            let nf = NormalForm { lambda2: c(rng.gen_range(0..f.order())), lambda6: c(rng.gen_range(0..f.order())), mu };
            let w = nf.weierstrass(&kf);
            let s = random_tpoly(f, 2, &mut rng);
            let tau = random_tpoly(f, 6, &mut rng);
            let moved = transform(&kf, &w, &c(1), &s, &tau).unwrap();
            assert_eq!(normal_form_reduce(&kf, &moved).unwrap(), nf);
            assert_eq!(classify_normal_form(&kf, &nf).unwrap(), classify_normal_form(&kf, &normal_form_reduce(&kf, &moved).unwrap()).unwrap());
        }
    }
}

#[test]
fn rdp_examples() {
    let (f2, f4) = (k(1), k(2));
    assert_eq!(rdp_at_one(&f2, &c(0), &c(0), &c(1)).unwrap(), C3);
    assert_eq!(rdp_at_one(&f4, &c(0), &c(0), &c(1)).unwrap(), D4);
    let f2u = ku(1);
    let u = f2u.u().unwrap();
    assert_eq!(rdp_at_one(&f2u, &u, &c(0), &c(1)).unwrap(), Regular);
    for l6 in [0, 1] {
        assert_eq!(rdp_at_zero(&f2, &c(0), &c(l6), &c(1), false).unwrap(), E8);
    }
    assert_eq!(rdp_at_zero(&f2, &c(1), &c(0), &c(1), false).unwrap(), C7);
    assert_eq!(rdp_at_zero(&f4, &c(1), &c(0), &c(1), false).unwrap(), D8);
    assert_eq!(rdp_at_zero(&f2, &c(1), &c(1), &c(1), false).unwrap(), D8);
    assert_eq!(rdp_at_zero(&f2u, &u, &c(0), &c(1), false).unwrap(), C3);
    assert_eq!(rdp_at_zero(&f2u, &c(1), &c(0), &u, false).unwrap(), C5);
    // swap reads λ6 as the local λ2
    assert_eq!(rdp_at_zero(&f2, &c(1), &c(0), &c(1), true).unwrap(), E8);
    assert!(rdp_at_zero(&f2, &c(1), &c(0), &c(0), false).is_err());
    assert_eq!(classify_k3_family(&f2, &c(1)).unwrap(), [E8, C3, E8]);
    assert_eq!(classify_k3_family(&f4, &c(1)).unwrap(), [E8, D4, E8]);
}

/// Roots of `T³ + aT + b` by brute force.
fn cubic_roots(f: &Gf, a: u32, b: u32) -> usize {
    f.elements().filter(|&x| f.add(f.add(f.pow(x, 3), f.mul(a, x)), b) == 0).count()
}

/// Solvability of `T² + T = c` by brute force.
fn artin_schreier(f: &Gf, cc: u32) -> bool {
    f.elements().any(|x| f.add(f.mul(x, x), x) == cc)
}

#[test]
fn classification_over_finite_fields_matches_brute_force() {
    for m in [1, 2, 3] {
        let kf = k(m);
        let f = kf.gf();
        for l2 in f.elements() {
            for l6 in f.elements() {
                for mu in 1..f.order() {
                    let [z, one, inf] = classify_normal_form(&kf, &NormalForm { lambda2: c(l2), lambda6: c(l6), mu: c(mu) }).unwrap();
                    // every element is a square, so only E8, C7, D8 occur over 0 and ∞
                    for (lam2, lam6, got) in [(l2, l6, z), (l6, l2, inf)] {
                        let want = if lam2 == 0 {
                            E8
                        } else {
                            let w = f.sqrt(lam2).unwrap();
                            let a = f.div(mu, f.pow(w, 5));
                            let bc = f.add(f.div(lam6, f.pow(w, 6)), f.div(mu, f.pow(w, 7)));
                            if artin_schreier(f, f.div(bc, f.mul(a, a))) { D8 } else { C7 }
                        };
                        assert_eq!(got, want, "F_{} λ2={lam2} λ6={l6} μ={mu}", f.order());
                    }
                    let want_one = match cubic_roots(f, f.add(l2, l6), mu) {
                        0 => G2rdp,
                        1 => C3,
                        3 => D4,
                        n => panic!("{n} roots"),
                    };
                    assert_eq!(one, want_one);
                }
            }
        }
    }
}

#[test]
fn types_depend_only_on_the_isomorphism_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let kf = ku(1);
    let f = kf.gf();
    let rand_coef = |rng: &mut ChaCha8Rng| {
        let num = Poly::new((0..3).map(|_| rng.gen_range(0..2)).collect());
        let den = Poly::new(vec![rng.gen_range(0..2), 1]);
        RatFn::new(f, num, den).unwrap()
    };
    for _ in 0..40 {
        let l2 = rand_coef(&mut rng);
        let l6 = rand_coef(&mut rng);
        let mu = rand_coef(&mut rng);
        let v = rand_coef(&mut rng);
        if mu.is_zero() || v.is_zero() {
            continue;
        }
        let nf = NormalForm { lambda2: l2.clone(), lambda6: l6.clone(), mu: mu.clone() };
        let scaled = NormalForm {
            lambda2: kf.mul(&l2, &kf.pow(&v, 4).unwrap()),
            lambda6: kf.mul(&l6, &kf.pow(&v, 4).unwrap()),
            mu: kf.mul(&mu, &kf.pow(&v, 6).unwrap()),
        };
        assert_eq!(classify_normal_form(&kf, &nf).unwrap(), classify_normal_form(&kf, &scaled).unwrap());
    }
    // the family y² = x³ + α³(t⁵ + t⁷) only sees α up to squares
    let u = kf.u().unwrap();
    for alpha in [kf.one(), u.clone(), kf.add(&u, &kf.one())] {
        let beta = kf.add(&u, &c(1));
        let moved = kf.mul(&alpha, &kf.mul(&beta, &beta));
        assert_eq!(classify_k3_family(&kf, &alpha).unwrap(), classify_k3_family(&kf, &moved).unwrap());
    }
}

#[test]
fn square_roots_in_the_function_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let kf = ku(1);
    let f = kf.gf();
    let u = kf.u().unwrap();
    for _ in 0..100 {
        let num = Poly::new((0..4).map(|_| rng.gen_range(0..2)).collect());
        let den = Poly::new((0..3).map(|_| rng.gen_range(0..2)).chain([1]).collect());
        let r = RatFn::new(f, num, den).unwrap();
        let sq = kf.mul(&r, &r);
        assert!(kf.is_square(&sq));
        let root = kf.sqrt(&sq).unwrap();
        assert_eq!(kf.mul(&root, &root), sq);
        if !r.is_zero() {
            assert!(!kf.is_square(&kf.mul(&u, &sq)));
        }
    }
}

#[test]
fn perfect_fields_never_leave_the_generic_types() {
    for m in 1..=4 {
        let kf = k(m);
        let f = kf.gf();
        for l2 in f.elements() {
            for l6 in f.elements().step_by(3) {
                for mu in (1..f.order()).step_by(2) {
                    let t = classify_normal_form(&kf, &NormalForm { lambda2: c(l2), lambda6: c(l6), mu: c(mu) }).unwrap();
                    assert!(t.iter().all(|x| !matches!(x, Undecidable | C5 | Regular | A1)), "{t:?}");
                }
            }
        }
    }
}

#[test]
fn full_pipeline() {
    let f2u = ku(1);
    let r = classify(&f2u, "0", "t^5+t^7").unwrap();
    assert_eq!(r.types, Some([E8, C3, E8]));
    let r = classify(&f2u, "u*t^2", "t^5+t^7").unwrap();
    assert_eq!(r.types.unwrap()[0], C3);
    let r = classify(&k(1), "0", "t^5").unwrap();
    assert!(r.types.is_none() && r.note.is_some());
}

fn singular_oracle(a: &LongTuple) -> bool {
    // the singular point of a cubic in characteristic 2 is unique, hence rational
    let [a1, a2, a3, a4, a6] = a.map(u32::from);
    (0..2u32).any(|x| {
        (0..2u32).any(|y| {
            let f = (y * y + a1 * x * y + a3 * y + x * x * x + a2 * x * x + a4 * x + a6) % 2;
            let fx = (a1 * y + x * x + a4) % 2;
            let fy = (a1 * x + a3) % 2;
            f == 0 && fx == 0 && fy == 0
        })
    })
}

#[test]
fn census_of_curves_over_f2() {
    let tuples: Vec<LongTuple> = (0u8..32).map(|c| std::array::from_fn(|i| (c >> (4 - i)) & 1)).collect();
    let smooth = tuples.iter().filter(|a| !singular_oracle(a)).count();
    for a in &tuples {
        assert_eq!(integer_discriminant(a) % 2 != 0, !singular_oracle(a), "{a:?}");
    }
    let classes = elliptic_census_f2();
    assert_eq!(classes.len(), 5);
    assert_eq!(classes.iter().map(|c| c.points).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
    assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), smooth);
    for cl in &classes {
        assert_eq!(cl.size * cl.automorphisms, 8);
    }
    // y² + y = x³ + x + 1 has one point and (x, y) ↦ (x + 1, y + x) among its automorphisms
    let e1 = &classes[0];
    assert_eq!(e1.representative, [0, 0, 1, 1, 1]);
    assert_eq!(e1.automorphisms, 4);
    let r = residual_divisor_points().unwrap();
    assert_eq!(r.d_points, 4);
    assert_eq!(r.dprime_place_degrees, vec![4]);
}

#[test]
fn parser() {
    let f2 = k(1);
    assert_eq!(poly(&f2, "t^7 + t^5"), poly(&f2, "t^5+t^7"));
    assert_eq!(poly(&f2, "3*t"), poly(&f2, "t"));
    assert_eq!(poly(&f2, "t - t"), TPoly::zero());
    for bad in ["t^", "x", "", "(t", "t/t", "u", "a", "1/0"] {
        assert!(matches!(parse_tpoly(&f2, bad), Err(Error::Parse(_))), "{bad:?}");
    }
    let f2u = ku(1);
    let v = parse_coef(&f2u, "(u+1)/u").unwrap();
    assert_eq!(f2u.mul(&v, &f2u.u().unwrap()), f2u.add(&f2u.u().unwrap(), &f2u.one()));
    assert!(matches!(parse_coef(&f2u, "u*t"), Err(Error::Parse(_))));
    assert!(CoefField::parse("F16(u)").unwrap().has_u());
    assert!(matches!(CoefField::parse("F3"), Err(Error::Parse(_))));
}
