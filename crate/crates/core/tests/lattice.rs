use dlvar_core::lattice::{
    det_matches_invariants, e8_gram, gamma_a_b, gamma_lattice, gram_s, gram_s_det_formula, k3_scan, IntLattice,
    GAMMA_EDGES, GAMMA_RHO,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Leibniz expansion.
fn leibniz_det(m: &[Vec<i64>]) -> i64 {
    fn go(m: &[Vec<i64>], row: usize, used: &mut Vec<bool>, sign: i64) -> i64 {
        if row == m.len() {
            return sign;
        }
        let mut s = 0;
        let mut passed = 0;
        for c in 0..m.len() {
            if used[c] {
                continue;
            }
            if m[row][c] != 0 {
                used[c] = true;
                let sg = if passed % 2 == 0 { sign } else { -sign };
                s += m[row][c] * go(m, row + 1, used, sg);
                used[c] = false;
            }
            passed += 1;
        }
        s
    }
    go(m, 0, &mut vec![false; m.len()], 1)
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
fn jacobi_eigenvalues(m: &[Vec<i64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-22 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

fn inertia_oracle(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let ev = jacobi_eigenvalues(m);
    let plus = ev.iter().filter(|&&x| x > 1e-6).count();
    let minus = ev.iter().filter(|&&x| x < -1e-6).count();
    (plus, minus, ev.len() - plus - minus)
}

fn signature(l: &IntLattice) -> (usize, usize, usize) {
    let s = l.signature();
    (s.plus, s.minus, s.zero)
}

fn to_i64(l: &IntLattice) -> Vec<Vec<i64>> {
    l.gram().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
}

/// `2·G⁻¹` integral, by rational Gauss–Jordan.
fn two_elementary_oracle(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..2 * n).map(|j| if j < n { q(m[i][j]) } else { q(i64::from(j - n == i)) }).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("non-degenerate");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..2 * n {
                    let sub = &factor * &a[col][j];
                    a[r][j] = &a[r][j] - sub;
                }
            }
        }
    }
    a.iter().all(|row| row[n..].iter().all(|x| (x * q(2)).is_integer()))
}

#[test]
fn gamma_gram_matrix() {
    let l = gamma_lattice();
    assert_eq!(l.rank(), 22);
    let g = to_i64(&l);
    let upper_ones = (0..22).flat_map(|i| (i + 1..22).map(move |j| (i, j))).filter(|&(i, j)| g[i][j] == 1).count();
    assert_eq!(upper_ones, 21);
    assert!((0..22).all(|i| g[i][i] == -2));
    for &(a, b) in GAMMA_EDGES {
        assert_eq!(g[a][b], 1);
    }
    // γ1..γ8 span −E8
    let e8 = l.sublattice(&[1, 2, 3, 4, 5, 6, 7, 8]);
    assert_eq!(e8.det(), BigInt::one());
    assert_eq!(signature(&e8), (0, 8, 0));
    assert_eq!(signature(&l), inertia_oracle(&g));
    assert_eq!(signature(&l).2, 1);
}

#[test]
fn gamma_radical_and_special_vectors() {
    let l = gamma_lattice();
    let (a, b) = gamma_a_b();
    let radical = l.radical_basis();
    assert_eq!(radical.len(), 1);
    let diff: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    let neg: Vec<BigInt> = diff.iter().map(|x| -x).collect();
    assert!(radical[0] == diff || radical[0] == neg);
    assert!(l.gram().iter().all(|row| row.iter().zip(&diff).map(|(g, x)| g * x).sum::<BigInt>().is_zero()));
    let content = radical[0].iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    assert!(content.is_one());
    assert!(l.pair(&a, &a).is_zero());
    let mut v = a.iter().map(|x| x * 2).collect::<Vec<_>>();
    v[GAMMA_RHO] += 1;
    assert_eq!(l.pair(&v, &v), BigInt::from(2));
}

#[test]
fn signature_examples() {
    let neg_e8 = IntLattice::new(e8_gram().gram().iter().map(|r| r.iter().map(|x| -x).collect()).collect()).unwrap();
    assert_eq!(signature(&neg_e8), (0, 8, 0));
    assert_eq!(signature(&e8_gram()), (8, 0, 0));
    assert_eq!(signature(&IntLattice::from_i64(&vec![vec![0; 3]; 3]).unwrap()), (0, 0, 3));
    let hyperbolic = IntLattice::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(signature(&hyperbolic), (1, 1, 0));
    assert!(IntLattice::from_i64(&[vec![0, 1], vec![2, 0]]).is_err());
}

#[test]
fn s_determinants() {
    assert_eq!(gram_s(0, 6).unwrap().det(), BigInt::from(-64));
    assert_eq!(gram_s(1, 0).unwrap().det(), BigInt::from(-13));
    assert_eq!(gram_s(2, 5).unwrap().det(), BigInt::from(-52));
    for n in 0..3 {
        for c in -6..25 {
            let l = gram_s(n, c).unwrap();
            let d = leibniz_det(&to_i64(&l));
            assert_eq!(d, gram_s_det_formula(n, c), "n={n} c={c}");
            assert_eq!(l.det(), BigInt::from(d));
            if d != 0 {
                assert!(det_matches_invariants(&l));
                assert_eq!(l.is_p_elementary(2), two_elementary_oracle(&to_i64(&l)), "n={n} c={c}");
            }
        }
    }
    assert!(gram_s(3, 0).is_err());
}

#[test]
fn smith_invariants_examples() {
    let e8 = e8_gram();
    assert_eq!(e8.det(), BigInt::one());
    assert!(e8.smith_invariants().iter().all(One::is_one));
    assert!(e8.discriminant_group().is_empty());
    let d = IntLattice::new(big(&[vec![2, 0], vec![0, 2]])).unwrap();
    assert_eq!(d.smith_invariants(), vec![BigInt::from(2), BigInt::from(2)]);
    assert!(d.is_p_elementary(2));
    let c = IntLattice::from_i64(&[vec![2, 0], vec![0, 4]]).unwrap();
    assert!(!c.is_p_elementary(2));
    assert!(det_matches_invariants(&c));
}

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<BigInt>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..12 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let k = rng.gen_range(-2..=2);
        for r in 0..n {
            u[r][j] += k * u[r][i];
        }
    }
    if rng.gen_bool(0.5) {
        for row in u.iter_mut() {
            row.swap(0, n - 1);
        }
    }
    big(&u)
}

#[test]
fn invariants_are_preserved_by_unimodular_congruence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lattices = [gram_s(0, 6).unwrap(), gram_s(1, 3).unwrap(), gram_s(2, 5).unwrap(), e8_gram()];
    for l in &lattices {
        for _ in 0..20 {
            let u = random_unimodular(l.rank(), &mut rng);
            let m = l.congruent(&u);
            assert_eq!(m.det(), l.det());
            assert_eq!(m.smith_invariants(), l.smith_invariants());
            assert_eq!(m.signature(), l.signature());
        }
    }
}

#[test]
fn sigma_scan() {
    let rows = k3_scan().unwrap();
    assert_eq!(rows.iter().map(|r| r.sigma).collect::<Vec<_>>(), (3..=10).collect::<Vec<_>>());
    assert_eq!(rows.iter().map(|r| r.c).collect::<Vec<_>>(), vec![6, 30, 126, 510, 2046, 8190, 32766, 131070]);
    for r in &rows {
        assert_eq!(r.det, BigInt::from(gram_s_det_formula(0, r.c)));
        assert_eq!(r.det.abs(), BigInt::from(1i64 << (2 * r.sigma)));
        let l = gram_s(0, r.c).unwrap();
        assert_eq!(r.two_elementary, two_elementary_oracle(&to_i64(&l)));
        assert!(!r.two_elementary, "σ = {}", r.sigma);
        let prod = r.invariants.iter().fold(BigInt::one(), |a, b| a * b);
        assert_eq!(prod, r.det.abs());
    }
}
