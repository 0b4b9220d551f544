use dlvar_core::finitegeom::{isotropic_flags, relative_position};
use dlvar_core::gf::Gf;
use dlvar_core::sp4suzuki::{
    self, c2twist_strata, complete_flag, fixed_flags, flag_of_matrix, frobenius, identity, in_lie_kernel,
    is_symplectic, lie_block_matrix, lie_kernel_count, mat_mul, minor_isogeny, phi_on_flags, phi_on_flags_with,
    suzuki_a, suzuki_fixed_cosets, suzuki_flag_orbits, suzuki_group, suzuki_s, table_csv, transvection, SMat,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

fn random_symplectic(f: &Gf, rng: &mut ChaCha8Rng) -> SMat {
    let mut m = identity();
    for _ in 0..6 {
        let v: Vec<u32> = (0..4).map(|_| rng.gen_range(0..f.order())).collect();
        let c = rng.gen_range(0..f.order());
        m = mat_mul(f, &m, &transvection(f, &v, c));
    }
    m
}

#[test]
fn suzuki_group_structure() {
    let g = suzuki_group().unwrap();
    let n = g.elements.len();
    assert_eq!(n, 20);
    assert_eq!((g.order_a, g.order_s), (5, 4));
    assert!(g.relation_holds);
    assert!(g.generators_fixed);
    assert_eq!(g.normal_subgroup_orders, BTreeSet::from([1, 5, 10, 20]));

    // orders recomputed from the table alone
    let order_of = |i: usize| {
        let (mut x, mut k) = (i, 1);
        while x != 0 {
            x = g.table[x][i];
            k += 1;
        }
        k
    };
    let mut hist = BTreeMap::new();
    for i in 0..n {
        assert_eq!(order_of(i), g.element_orders[i]);
        *hist.entry(order_of(i)).or_insert(0) += 1;
    }
    assert_eq!(hist, BTreeMap::from([(1, 1), (2, 5), (4, 10), (5, 4)]));

    // Latin square and associativity
    for row in &g.table {
        assert_eq!(row.iter().collect::<BTreeSet<_>>().len(), n);
    }
    for a in 0..n {
        for b in 0..n {
            for c in (0..n).step_by(3) {
                assert_eq!(g.table[g.table[a][b]][c], g.table[a][g.table[b][c]]);
            }
        }
    }
    let f = Gf::new(2, 1).unwrap();
    for m in &g.elements {
        assert!(is_symplectic(&f, m));
        assert_eq!(minor_isogeny(&f, m).unwrap(), *m);
    }
}

#[test]
fn table_csv_shape() {
    let g = suzuki_group().unwrap();
    let csv = table_csv(&g);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 21);
    assert!(lines[0].starts_with("x,0,1,2"));
    assert_eq!(lines[1].split(',').count(), 21);
    assert_eq!(lines[1], format!("0,{}", (0..20).map(|j| j.to_string()).collect::<Vec<_>>().join(",")));
}

#[test]
fn minor_isogeny_basics() {
    let f = Gf::new(2, 1).unwrap();
    assert_eq!(minor_isogeny(&f, &identity()).unwrap(), identity());
    assert_eq!(minor_isogeny(&f, &suzuki_a()).unwrap(), suzuki_a());
    assert_eq!(minor_isogeny(&f, &suzuki_s()).unwrap(), suzuki_s());
    let f3 = Gf::new(3, 1).unwrap();
    assert!(minor_isogeny(&f3, &identity()).is_err());
    let mut bad = identity();
    bad[1] = 1;
    assert!(minor_isogeny(&f, &bad).is_err());
}

#[test]
fn minor_isogeny_is_a_homomorphism_squaring_to_frobenius() {
    let f = Gf::new(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let s = random_symplectic(&f, &mut rng);
        let t = random_symplectic(&f, &mut rng);
        assert!(is_symplectic(&f, &s));
        let ps = minor_isogeny(&f, &s).unwrap();
        assert!(is_symplectic(&f, &ps));
        let pt = minor_isogeny(&f, &t).unwrap();
        assert_eq!(minor_isogeny(&f, &mat_mul(&f, &s, &t)).unwrap(), mat_mul(&f, &ps, &pt));
        assert_eq!(minor_isogeny(&f, &ps).unwrap(), frobenius(&f, &s));
    }
}

#[test]
fn flag_action_does_not_depend_on_the_completion() {
    for k in [1, 2] {
        let f = Gf::new(2, k).unwrap();
        for fl in isotropic_flags(&f).unwrap() {
            let a = complete_flag(&f, &fl, false).unwrap();
            let b = complete_flag(&f, &fl, true).unwrap();
            assert_ne!(a, b);
            assert_eq!(flag_of_matrix(&f, &a).unwrap(), fl);
            assert_eq!(flag_of_matrix(&f, &b).unwrap(), fl);
            assert_eq!(phi_on_flags_with(&f, &fl, false).unwrap(), phi_on_flags_with(&f, &fl, true).unwrap());
        }
    }
}

#[test]
fn lie_kernel() {
    let f = Gf::new(2, 1).unwrap();
    assert!(in_lie_kernel(&f, &[0; 16]));
    let with = |i: usize| {
        let mut p = [0u32; 10];
        p[i] = 1;
        lie_block_matrix(&f, p)
    };
    assert!(in_lie_kernel(&f, &with(1)), "b = 1");
    assert!(!in_lie_kernel(&f, &with(5)), "v = 1");
    let k = lie_kernel_count().unwrap();
    // a = d and v = w = y = z = 0 leave five free bits
    assert_eq!(k.count, 32);
    assert!(k.matches_block_conditions);
}

#[test]
fn twisted_strata() {
    let h1: BTreeMap<String, u64> = c2twist_strata(1).unwrap().into_iter().map(|(w, n)| (w.word_string(), n)).collect();
    assert_eq!(h1["e"], 5);
    assert_eq!(h1.values().sum::<u64>(), 45);
    let h2: BTreeMap<String, u64> = c2twist_strata(2).unwrap().into_iter().map(|(w, n)| (w.word_string(), n)).collect();
    assert_eq!(h2["e"], 5);
    assert_eq!(h2.values().sum::<u64>(), 85 * 5);
    assert!(c2twist_strata(0).is_err());
}

#[test]
fn fixed_flags_are_the_suzuki_cosets() {
    let f = Gf::new(2, 1).unwrap();
    let fixed: BTreeSet<_> = fixed_flags(&f).unwrap().into_iter().collect();
    let cosets: BTreeSet<_> = suzuki_fixed_cosets(&f).unwrap().into_iter().collect();
    assert_eq!(fixed.len(), 5);
    assert_eq!(fixed, cosets);
}

#[test]
fn strata_are_unions_of_suzuki_orbits() {
    let f = Gf::new(2, 1).unwrap();
    let orbits = suzuki_flag_orbits().unwrap();
    assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), 45);
    for orbit in &orbits {
        assert_eq!(20 % orbit.len(), 0);
        let positions: BTreeSet<String> = orbit
            .iter()
            .map(|fl| relative_position(&f, fl, &phi_on_flags(&f, fl).unwrap()).unwrap().word_string())
            .collect();
        assert_eq!(positions.len(), 1);
    }
    assert!(sp4suzuki::j_matrix(&f).iter().filter(|&&x| x != 0).count() == 4);
}
