//! Subcommand implementations. Each returns a [`Report`]; rendering and exit
//! codes are handled by the caller.

use crate::report::{Report, Section};
use dlvar_core::dldatum::{self, catalog, ParamKind};
use dlvar_core::finitegeom::{self, BuildingVertex, FlagConfig, FlagKind};
use dlvar_core::gf::{Elem, Gf};
use dlvar_core::gfpoly::{Poly, RatFn};
use dlvar_core::invariants::{self, all_nonpositive, canonical_coefficients, curve_genus, zero_dim_count};
use dlvar_core::lattice::{self, gamma_a_b, gamma_lattice, gram_s, gram_s_det_formula, k3_scan};
use dlvar_core::quasiell::{self, CoefField, RdpType, ShortWeierstrass, TPoly};
use dlvar_core::rootcore::{self, parse_word};
use dlvar_core::sp4suzuki::{self, SMat};
use dlvar_core::{Error, Result};
use num_bigint::{BigInt, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn param_name(key: &str) -> Result<&'static str> {
    Ok(match dldatum::param_kind(key)? {
        ParamKind::Q => "q",
        ParamKind::N => "q0",
    })
}

/// Parameters for `key`: Suzuki–Ree keys take `n` (from `ns` when present),
/// the others take `q`.
fn params_for<'a>(key: &str, qs: &'a [u64], ns: Option<&'a [u64]>) -> Result<&'a [u64]> {
    Ok(match dldatum::param_kind(key)? {
        ParamKind::Q => qs,
        ParamKind::N => ns.unwrap_or(qs),
    })
}

/// Table of checks with target and computed values.
struct Checks(Section);

impl Checks {
    fn new() -> Self {
        Checks(Section::new("checks", &["check", "target", "computed", "status"]))
    }

    fn add(&mut self, name: impl ToString, target: impl ToString, computed: impl ToString) {
        let (t, c) = (target.to_string(), computed.to_string());
        let status = if t == c { "ok" } else { "MISMATCH" };
        self.0.push([name.to_string(), t, c, status.to_string()]);
    }

    fn all_ok(&self) -> bool {
        self.0.rows.iter().all(|r| r[3] == "ok")
    }

    fn finish(self, r: &mut Report) {
        let ok = self.all_ok();
        let n = self.0.rows.len();
        r.sections.insert(0, self.0);
        r.param("checks", format!("{n} {}", if ok { "all ok" } else { "with mismatches" }));
    }
}

// ---------------------------------------------------------------------------
// tables

const CANONICAL_N_DEFAULT: &[u64] = &[0, 1, 2];
const ZERODIM_ALL: &[&str] = &["A2", "C2", "2A2", "2C2", "2G2"];

pub fn tables_canonical(case: &str, word: Option<&str>, qs: &[u64], ns: Option<&[u64]>) -> Result<Report> {
    let entries: Vec<(String, String)> = if case == "all" {
        if word.is_some() {
            return Err(Error::Parameter("--word cannot be combined with --case all".into()));
        }
        invariants::TABLE_WORDS.iter().map(|(k, w)| (k.to_string(), w.to_string())).collect()
    } else {
        dldatum::param_kind(case)?;
        match word {
            Some(w) => vec![(case.to_string(), w.to_string())],
            None => {
                let v: Vec<(String, String)> = invariants::TABLE_WORDS
                    .iter()
                    .filter(|(k, _)| *k == case)
                    .map(|(k, w)| (k.to_string(), w.to_string()))
                    .collect();
                if v.is_empty() {
                    return Err(Error::Parameter(format!("no tabulated word for {case}; pass --word")));
                }
                v
            }
        }
    };
    let ns = if case == "all" { Some(ns.unwrap_or(CANONICAL_N_DEFAULT)) } else { ns };
    let mut rows = Vec::new();
    for (key, w) in &entries {
        let word = parse_word(w)?;
        for &param in params_for(key, qs, ns)? {
            let d = catalog(key, param)?;
            let c = canonical_coefficients(&d, &word)?;
            rows.push((key.clone(), rootcore::word_to_string(&word), param_name(key)?, dldatum::display_param(key, param)?, c.lambdas));
        }
    }
    let width = rows.iter().map(|r| r.4.len()).max().unwrap_or(0);
    let mut cols: Vec<String> = ["case", "word", "param", "value"].iter().map(|s| s.to_string()).collect();
    cols.extend((1..=width).map(|j| format!("lambda_{j}")));
    cols.push("nonpositive".into());
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut s = Section::new("canonical coefficients", &col_refs);
    for (key, w, name, value, l) in rows {
        let mut row = vec![key, w, name.to_string(), value.to_string()];
        row.extend((0..width).map(|j| l.get(j).map_or(String::new(), |x| x.to_string())));
        row.push(yes_no(all_nonpositive(&l)).to_string());
        s.push(row);
    }
    let mut r = Report::new("tables canonical");
    r.param("case", case).param("q", join(qs, ","));
    if let Some(w) = word {
        r.param("word", w);
    }
    if let Some(ns) = ns {
        r.param("n", join(ns, ","));
    }
    r.section(s);
    Ok(r)
}

/// Brute-force flag count over `F_q` for the split keys `A2` and `C2`.
fn brute_force_flags(key: &str, q: u64) -> Result<Option<usize>> {
    if !matches!(key, "A2" | "C2") || q > 9 {
        return Ok(None);
    }
    let (p, s) = dldatum::prime_power(q)?;
    let f = Gf::new(p as u32, s)?;
    Ok(Some(if key == "A2" { finitegeom::full_flags_3(&f)?.len() } else { finitegeom::isotropic_flags(&f)?.len() }))
}

pub fn tables_zerodim(case: &str, qs: &[u64], ns: Option<&[u64]>) -> Result<Report> {
    let keys: Vec<&str> = if case == "all" { ZERODIM_ALL.to_vec() } else { vec![case] };
    let mut s = Section::new("zero-dimensional point counts", &["case", "param", "value", "count", "terms", "flag enumeration"]);
    for key in &keys {
        for &param in params_for(key, qs, ns)? {
            let d = catalog(key, param)?;
            let z = zero_dim_count(&d)?;
            let terms = join(z.summands.iter().map(|(w, t)| format!("{}:{t}", w.word_string())), " + ");
            let brute = brute_force_flags(key, param)?.map_or("-".to_string(), |n| n.to_string());
            s.push([key.to_string(), param_name(key)?.into(), dldatum::display_param(key, param)?.to_string(), z.total.to_string(), terms, brute]);
        }
    }
    let mut r = Report::new("tables zerodim");
    r.param("case", case).param("q", join(qs, ","));
    if let Some(ns) = ns {
        r.param("n", join(ns, ","));
    }
    r.section(s);
    Ok(r)
}

pub fn tables_genus(case: &str, qs: Option<&[u64]>) -> Result<Report> {
    let keys: Vec<&str> = if case == "all" { invariants::GENUS_KEYS.to_vec() } else { vec![case] };
    let mut s = Section::new("genus of X(s1)", &["case", "param", "value", "lambda_1", "points of X(e)", "genus"]);
    for key in &keys {
        let defaults: &[u64] = match dldatum::param_kind(key)? {
            ParamKind::Q => &[2, 3],
            ParamKind::N => &[0],
        };
        for &param in qs.unwrap_or(defaults) {
            let d = catalog(key, param)?;
            let lambda = canonical_coefficients(&d, &[1])?.lambdas[0].clone();
            let n = zero_dim_count(&d)?.total;
            let g = curve_genus(&d)?;
            s.push([key.to_string(), param_name(key)?.into(), dldatum::display_param(key, param)?.to_string(), lambda.to_string(), n.to_string(), g.to_string()]);
        }
    }
    let mut r = Report::new("tables genus");
    r.param("case", case);
    if let Some(qs) = qs {
        r.param("q", join(qs, ","));
    }
    r.section(s);
    Ok(r)
}

// ---------------------------------------------------------------------------
// geometry

pub fn geometry_building(ps: &[u32]) -> Result<Report> {
    let mut stats = Section::new(
        "incidence graph",
        &["p", "vertices", "edges", "lines", "planes", "degrees", "bipartite", "girth", "induced tree found"],
    );
    let mut emb_section = None;
    for &p in ps {
        let (g, kinds) = finitegeom::building_sp4(p)?;
        let lines = kinds.iter().filter(|k| **k == BuildingVertex::Line).count();
        let found = if p == 2 {
            let gamma = finitegeom::gamma_graph();
            let emb = finitegeom::find_gamma_embedding(&g);
            if let Some(e) = &emb {
                let mut sec = Section::new("embedding of the 22-vertex tree (p = 2)", &["tree vertex", "building vertex"]);
                for (i, &v) in e.iter().enumerate() {
                    sec.push([gamma.labels()[i].clone(), g.labels()[v].clone()]);
                }
                emb_section = Some(sec);
            }
            yes_no(emb.is_some()).to_string()
        } else {
            "not searched".to_string()
        };
        stats.push([
            p.to_string(),
            g.num_vertices().to_string(),
            g.num_edges().to_string(),
            lines.to_string(),
            (kinds.len() - lines).to_string(),
            join(g.degrees(), ","),
            yes_no(g.is_bipartite()).to_string(),
            g.girth().map_or("none".to_string(), |x| x.to_string()),
            found,
        ]);
    }
    let mut r = Report::new("geometry building");
    r.param("p", join(ps, ","));
    r.section(stats);
    if let Some(s) = emb_section {
        r.section(s);
    }
    Ok(r)
}

pub fn geometry_strata(case: &str, q: u32, ext: u32) -> Result<Report> {
    let hist = finitegeom::strata_histogram(case, q, ext)?;
    let mut s = Section::new("flags by relative position to their image", &["w", "length", "count"]);
    let mut total = 0;
    for (w, c) in &hist {
        total += c;
        s.push([w.word_string(), w.length().to_string(), c.to_string()]);
    }
    let mut r = Report::new("geometry strata");
    r.param("case", case).param("q", q).param("ext", ext).param("total", total);
    r.section(s);
    Ok(r)
}

// ---------------------------------------------------------------------------
// suzuki

fn random_symplectic(f: &Gf, rng: &mut ChaCha8Rng) -> SMat {
    let mut m = sp4suzuki::identity();
    for _ in 0..8 {
        let v: Vec<Elem> = (0..4).map(|_| rng.gen_range(0..f.order())).collect();
        let c = rng.gen_range(0..f.order());
        m = sp4suzuki::mat_mul(f, &m, &sp4suzuki::transvection(f, &v, c));
    }
    m
}

fn format_smat(m: &SMat) -> String {
    join(m.chunks(4).map(|r| join(r, "")), " ")
}

pub fn suzuki_verify(seed: u64) -> Result<Report> {
    let g = sp4suzuki::suzuki_group()?;
    let f2 = Gf::new(2, 1)?;
    let mut c = Checks::new();
    c.add("|<A,S>|", 20, g.elements.len());
    c.add("order of A", 5, g.order_a);
    c.add("order of S", 4, g.order_s);
    c.add("S A S^-1 = A^2", "yes", yes_no(g.relation_holds));
    c.add("normal subgroup orders", "1,5,10,20", join(&g.normal_subgroup_orders, ","));

    let mut good = 0;
    let mut fixed = 0;
    for x in &g.elements {
        let px = sp4suzuki::minor_isogeny(&f2, x)?;
        fixed += usize::from(px == *x);
        for y in &g.elements {
            let lhs = sp4suzuki::minor_isogeny(&f2, &sp4suzuki::mat_mul(&f2, x, y))?;
            let rhs = sp4suzuki::mat_mul(&f2, &px, &sp4suzuki::minor_isogeny(&f2, y)?);
            good += usize::from(lhs == rhs);
        }
    }
    let n = g.elements.len();
    c.add("phi(xy) = phi(x)phi(y) on group pairs", n * n, good);
    c.add("group elements fixed by phi", n, fixed);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut hom, mut sq, mut total) = (0, 0, 0);
    for k in [2u32, 3] {
        let f = Gf::new(2, k)?;
        for _ in 0..50 {
            let (x, y) = (random_symplectic(&f, &mut rng), random_symplectic(&f, &mut rng));
            let lhs = sp4suzuki::minor_isogeny(&f, &sp4suzuki::mat_mul(&f, &x, &y))?;
            let rhs = sp4suzuki::mat_mul(&f, &sp4suzuki::minor_isogeny(&f, &x)?, &sp4suzuki::minor_isogeny(&f, &y)?);
            hom += usize::from(lhs == rhs);
            let square: SMat = std::array::from_fn(|i| f.mul(x[i], x[i]));
            sq += usize::from(sp4suzuki::minor_isogeny(&f, &sp4suzuki::minor_isogeny(&f, &x)?)? == square);
            total += 1;
        }
    }
    c.add("homomorphism on random pairs over F4, F8", total, hom);
    c.add("phi^2 = entrywise square on random matrices", total, sq);

    let lk = sp4suzuki::lie_kernel_count()?;
    c.add("Lie kernel size", 32, lk.count);
    c.add("Lie kernel = block conditions", "yes", yes_no(lk.matches_block_conditions));

    let mut flags = Section::new("phi-fixed flags", &["field", "flag", "of the form A^i B"]);
    for k in [1u32, 2] {
        let f = Gf::new(2, k)?;
        let fixed = sp4suzuki::fixed_flags(&f)?;
        let cosets: BTreeSet<FlagConfig> = sp4suzuki::suzuki_fixed_cosets(&f)?.into_iter().collect();
        let fixed_set: BTreeSet<FlagConfig> = fixed.iter().cloned().collect();
        c.add(format!("fixed flags over F{}", f.order()), 5, fixed.len());
        c.add(format!("fixed flags over F{} = {{A^i B}}", f.order()), "yes", yes_no(fixed_set == cosets));
        for fl in &fixed {
            flags.push([format!("F{}", f.order()), fl.format(&f), yes_no(cosets.contains(fl)).to_string()]);
        }
    }

    let mut gens = Section::new("generators", &["name", "rows", "order"]);
    gens.push(["A".to_string(), format_smat(&sp4suzuki::suzuki_a()), g.order_a.to_string()]);
    gens.push(["S".to_string(), format_smat(&sp4suzuki::suzuki_s()), g.order_s.to_string()]);
    let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
    for &o in &g.element_orders {
        *orders.entry(o).or_default() += 1;
    }
    let mut ord = Section::new("element orders", &["order", "elements"]);
    for (o, k) in orders {
        ord.push([o, k]);
    }

    let mut r = Report::new("suzuki verify");
    r.param("order", n).param("seed", seed);
    c.finish(&mut r);
    r.section(gens).section(ord).section(flags);
    Ok(r)
}

// ---------------------------------------------------------------------------
// lattice

fn combination(v: &[BigInt]) -> String {
    let mut out = String::new();
    for (c, l) in v.iter().zip(lattice::GAMMA_LABELS) {
        if c.sign() == Sign::NoSign {
            continue;
        }
        let sign = match (out.is_empty(), c.sign() == Sign::Minus) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        let m = c.magnitude();
        let coef = if *m == 1u32.into() { String::new() } else { m.to_string() };
        out.push_str(&format!("{sign}{coef}{l}"));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn lattice_gamma() -> Result<Report> {
    let l = gamma_lattice();
    let sig = l.signature();
    let (a, b) = gamma_a_b();
    let diff: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    let neg: Vec<BigInt> = diff.iter().map(|x| -x).collect();
    let rad = l.radical_basis();
    let mut v = a.iter().map(|x| x * 2).collect::<Vec<_>>();
    v[lattice::GAMMA_RHO] += 1;
    let mut s = Section::new("22-vertex lattice", &["quantity", "value"]);
    s.push(["rank".to_string(), l.rank().to_string()]);
    s.push(["signature (plus, minus, zero)".to_string(), format!("({}, {}, {})", sig.plus, sig.minus, sig.zero)]);
    s.push(["radical basis".to_string(), join(rad.iter().map(|r| combination(r)), "; ")]);
    s.push(["radical = ±(a − b)".to_string(), yes_no(rad.len() == 1 && (rad[0] == diff || rad[0] == neg)).to_string()]);
    s.push(["a".to_string(), combination(&a)]);
    s.push(["a·a".to_string(), l.pair(&a, &a).to_string()]);
    s.push(["(ρ + 2a)·(ρ + 2a)".to_string(), l.pair(&v, &v).to_string()]);
    let mut r = Report::new("lattice gamma");
    r.section(s);
    Ok(r)
}

pub fn lattice_gram(ns: &[u32], cs: &[i64]) -> Result<Report> {
    let mut s = Section::new("Gram matrices S(n, c)", &["n", "c", "det", "closed form", "matches", "discriminant group", "2-elementary"]);
    for &n in ns {
        for &c in cs {
            let l = gram_s(n, c)?;
            let det = l.det();
            let formula = gram_s_det_formula(n, c);
            s.push([
                n.to_string(),
                c.to_string(),
                det.to_string(),
                formula.to_string(),
                yes_no(det == BigInt::from(formula)).to_string(),
                join(l.discriminant_group(), ","),
                yes_no(l.is_p_elementary(2)).to_string(),
            ]);
        }
    }
    let mut r = Report::new("lattice gram");
    r.param("n", join(ns, ",")).param("c", join(cs, ","));
    r.section(s);
    Ok(r)
}

pub fn lattice_k3scan() -> Result<Report> {
    let mut s = Section::new("scan with c = 2^(2σ−3) − 2, n = 0", &["sigma", "c", "det", "2^(2σ)", "discriminant group", "2-elementary"]);
    for row in k3_scan()? {
        s.push([
            row.sigma.to_string(),
            row.c.to_string(),
            row.det.to_string(),
            (BigInt::from(1) << (2 * row.sigma)).to_string(),
            join(&row.invariants, ","),
            yes_no(row.two_elementary).to_string(),
        ]);
    }
    let mut r = Report::new("lattice k3scan");
    r.section(s);
    Ok(r)
}

// ---------------------------------------------------------------------------
// weierstrass

pub fn weierstrass_classify(field: &str, a4: &str, a6: &str) -> Result<Report> {
    let k = CoefField::parse(field)?;
    let c = quasiell::classify(&k, a4, a6)?;
    let mut summary = Section::new("quasi-discriminant", &["quantity", "value"]);
    summary.push(["Psi".to_string(), c.report.psi.format(&k)]);
    summary.push(["valuation at infinity".to_string(), c.report.val_inf.to_string()]);
    summary.push(["all closed points examined".to_string(), yes_no(c.report.complete).to_string()]);
    if let Some(nf) = &c.normal_form {
        summary.push(["lambda2".to_string(), k.format(&nf.lambda2)]);
        summary.push(["lambda6".to_string(), k.format(&nf.lambda6)]);
        summary.push(["mu".to_string(), k.format(&nf.mu)]);
    }
    let mut places = Section::new("valuations of Psi", &["place", "degree", "valuation"]);
    for p in &c.report.places {
        places.push([p.place.clone(), p.degree.to_string(), p.valuation.to_string()]);
    }
    let mut r = Report::new("weierstrass classify");
    r.param("field", k.name()).param("a4", a4).param("a6", a6);
    r.section(summary).section(places);
    if let Some(types) = c.types {
        let mut t = Section::new("singularities", &["fiber", "type"]);
        for (place, ty) in ["t = 0", "t = 1", "t = ∞"].iter().zip(types) {
            t.push([place.to_string(), ty.to_string()]);
        }
        r.section(t);
    }
    if let Some(n) = c.note {
        r.note(n);
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// elliptic

pub fn elliptic_census() -> Result<Report> {
    let mut s = Section::new("isomorphism classes over F2", &["[a1,a2,a3,a4,a6]", "points", "automorphisms", "equations in class"]);
    for c in quasiell::elliptic_census_f2() {
        s.push([format!("[{}]", join(c.representative, ",")), c.points.to_string(), c.automorphisms.to_string(), c.size.to_string()]);
    }
    let res = quasiell::residual_divisor_points()?;
    let mut d = Section::new("residual divisors of y^2 + y = x^3 + x", &["quantity", "value"]);
    d.push(["points of D over F2".to_string(), res.d_points.to_string()]);
    for (k, n) in &res.dprime_counts {
        d.push([format!("points of D' over F{}", 1u32 << k), n.to_string()]);
    }
    d.push(["degrees of the closed points of D'".to_string(), join(&res.dprime_place_degrees, ",")]);
    d.push(["disjoint from the origin".to_string(), yes_no(res.disjoint_from_origin).to_string()]);
    let mut r = Report::new("elliptic census");
    r.section(s).section(d);
    Ok(r)
}

// ---------------------------------------------------------------------------
// reproduce

pub const CRITERIA: usize = 11;

pub fn reproduce(n: usize) -> Result<Report> {
    let mut r = Report::new(format!("reproduce {n}"));
    let mut c = Checks::new();
    match n {
        1 => {
            let t = tables_canonical("all", None, &[2, 3, 4], Some(&[0, 1, 2]))?;
            let s = &t.sections[0];
            let nonpos: Vec<String> = s
                .rows
                .iter()
                .filter(|row| row.last().map(String::as_str) == Some("yes"))
                .map(|row| format!("{} {} {}={}", row[0], row[1], row[2], row[3]))
                .collect();
            c.add("table entries", 72, s.rows.len());
            c.add(
                "entries with every coefficient ≤ 0",
                "A2 12 q=2; 2A2 12 q=2; C2 21 q=2; 2C2 12 q0=1; 2C2 21 q0=1; 2G2 21 q0=1",
                nonpos.join("; "),
            );
            r.absorb("tables canonical", t);
        }
        2 => {
            let t = tables_zerodim("all", &[2, 3], Some(&[0, 1]))?;
            for row in &t.sections[0].rows {
                if row[5] != "-" {
                    c.add(format!("{} q={}: Bruhat sum = flag enumeration", row[0], row[2]), &row[5], &row[3]);
                }
            }
            r.absorb("tables zerodim", t);
        }
        3 => {
            let t = tables_genus("all", None)?;
            for row in &t.sections[0].rows {
                let v: i64 = row[2].parse().map_err(|_| Error::Internal("non-integral parameter".into()))?;
                let target = match row[0].as_str() {
                    "A1" => 0,
                    "2A2" => (v * v - v) / 2,
                    "2C2" => 2 * v.pow(3) - v,
                    "2G2" if v == 1 => 15,
                    _ => continue,
                };
                c.add(format!("genus {} {}={}", row[0], row[1], row[2]), target, &row[5]);
            }
            r.absorb("tables genus", t);
        }
        4 => {
            let t = geometry_building(&[2, 3])?;
            let rows = &t.sections[0].rows;
            c.add("p=2 vertices/edges", "30/45", format!("{}/{}", rows[0][1], rows[0][2]));
            c.add("p=2 degrees, bipartite, girth", "3, yes, 8", format!("{}, {}, {}", rows[0][5], rows[0][6], rows[0][7]));
            c.add("p=2 induced tree embedding", "yes", &rows[0][8]);
            c.add("p=3 vertices/edges", "80/160", format!("{}/{}", rows[1][1], rows[1][2]));
            c.add("p=3 degrees", "4", &rows[1][5]);
            r.absorb("geometry building", t);
        }
        5 => {
            let g = lattice_gamma()?;
            let rows = &g.sections[0].rows;
            c.add("signature", "(1, 20, 1)", &rows[1][1]);
            c.add("radical = ±(a − b)", "yes", &rows[3][1]);
            r.absorb("lattice gamma", g);
            let gram = lattice_gram(&[0, 1, 2], &[-3, 0, 1, 5, 17])?;
            let ok = gram.sections[0].rows.iter().filter(|row| row[4] == "yes").count();
            c.add("det S(n,c) equals the closed form", 15, ok);
            r.absorb("lattice gram", gram);
            let scan = lattice_k3scan()?;
            let pow = scan.sections[0].rows.iter().filter(|row| row[2].trim_start_matches('-') == row[3]).count();
            let not2 = scan.sections[0].rows.iter().filter(|row| row[5] == "no").count();
            c.add("|det| = 2^(2σ) for σ = 3..10", 8, pow);
            c.add("not 2-elementary for σ = 3..10", 8, not2);
            r.absorb("lattice k3scan", scan);
        }
        6 => {
            let s = suzuki_verify(6)?;
            r.params.extend(s.params.clone());
            r.sections.extend(s.sections);
            return Ok(r);
        }
        7 => {
            c.add("Hermitian curve points over F2", 3, finitegeom::hermitian_counts(2, 1)?);
            c.add("Hermitian curve points over F4", 9, finitegeom::hermitian_counts(2, 2)?);
            for k in [1u32, 2] {
                let s = finitegeom::surface_equations_check(2, k)?;
                c.add(format!("equation solutions = flags over F{}", 1 << k), format!("{0}/{0}", s.flags), format!("{}/{}", s.equations, s.flags));
            }
            let t = geometry_strata("A2", 2, 3)?;
            let count = t.sections[0].rows.iter().find(|row| row[0] == "12").map(|row| row[2].clone()).unwrap_or_default();
            c.add("|X(s1s2)(F8)|, q = 2", 24, count);
            r.absorb("geometry strata", t);
        }
        8 => {
            c.add("points of the Ree curve over F3", 28, finitegeom::ree_point_count(1)?);
            c.add("affine points over F3", 27, finitegeom::ree_affine_count(1)?);
        }
        9 => reproduce_quasi_elliptic(&mut c, &mut r)?,
        10 => {
            let t = elliptic_census()?;
            let classes = &t.sections[0].rows;
            c.add("classes", 5, classes.len());
            c.add("point counts", "1,2,3,4,5", join(classes.iter().map(|row| &row[1]), ","));
            let aut = |p: &str| classes.iter().find(|row| row[1] == p).map(|row| row[2].clone()).unwrap_or_default();
            c.add("|Aut(E5)|", 4, aut("5"));
            c.add("|Aut(E3)|", 2, aut("3"));
            c.add("|Aut(E1)|", 2, aut("1"));
            let res = quasiell::residual_divisor_points()?;
            c.add("points of D over F2", 4, res.d_points);
            c.add("closed points of D'", "one of degree 4", if res.dprime_place_degrees == [4] { "one of degree 4".to_string() } else { join(&res.dprime_place_degrees, ",") });
            r.absorb("elliptic census", t);
            r.note("(x, y) ↦ (x + 1, y + x) is an automorphism of y^2 + y = x^3 + x + 1 over F2, so |Aut(E1)| = 4");
        }
        11 => {
            let mut s = Section::new("Bruhat order against intersection dimensions over F2", &["group", "pairs", "agree"]);
            for (name, kind) in [("S3", FlagKind::FullA), ("W(C2)", FlagKind::IsotropicC2)] {
                let (pairs, agree) = bruhat_against_dimensions(kind)?;
                c.add(format!("{name}: agreeing pairs"), pairs, agree);
                s.push([name.to_string(), pairs.to_string(), agree.to_string()]);
            }
            r.section(s);
        }
        _ => return Err(Error::Parameter(format!("criterion {n} is not in 1..={CRITERIA}"))),
    }
    c.finish(&mut r);
    Ok(r)
}

fn bruhat_against_dimensions(kind: FlagKind) -> Result<(usize, usize)> {
    let f = Gf::new(2, 1)?;
    let flags = match kind {
        FlagKind::FullA => finitegeom::full_flags_3(&f)?,
        FlagKind::IsotropicC2 => finitegeom::isotropic_flags(&f)?,
    };
    let base = &flags[0];
    let g = finitegeom::flag_weyl_group(kind, base.dim())?;
    let mut witness: BTreeMap<Vec<usize>, &FlagConfig> = BTreeMap::new();
    for fl in &flags {
        let w = finitegeom::relative_position(&f, base, fl)?;
        witness.entry(w.word().to_vec()).or_insert(fl);
    }
    let (mut pairs, mut agree) = (0, 0);
    for v in g.elements() {
        let b = witness.get(v.word()).ok_or_else(|| Error::Internal(format!("no flag in position {}", v.word_string())))?;
        for w in g.elements() {
            pairs += 1;
            agree += usize::from(g.bruhat_leq(v, w)? == finitegeom::dimension_criterion(&f, base, b, w)?);
        }
    }
    Ok((pairs, agree))
}

fn random_coef(k: &CoefField, rng: &mut ChaCha8Rng) -> Result<RatFn> {
    let f = k.gf();
    if !k.has_u() {
        return Ok(RatFn::constant(rng.gen_range(0..f.order())));
    }
    let num = Poly::new((0..3).map(|_| rng.gen_range(0..f.order())).collect());
    let den = Poly::new(vec![rng.gen_range(0..f.order()), 1]);
    RatFn::new(f, num, den)
}

fn random_unit(k: &CoefField, rng: &mut ChaCha8Rng) -> Result<RatFn> {
    loop {
        let c = random_coef(k, rng)?;
        if !c.is_zero() {
            return Ok(c);
        }
    }
}

fn random_tpoly(k: &CoefField, deg: usize, rng: &mut ChaCha8Rng) -> Result<TPoly> {
    Ok(TPoly::new((0..=deg).map(|_| random_coef(k, rng)).collect::<Result<_>>()?))
}

fn fmt_types(t: &[RdpType; 3]) -> String {
    format!("({}, {}, {})", t[0], t[1], t[2])
}

fn reproduce_quasi_elliptic(c: &mut Checks, r: &mut Report) -> Result<()> {
    let f2 = CoefField::finite(1)?;
    let w0 = ShortWeierstrass::new(TPoly::zero(), quasiell::parse_tpoly(&f2, "t^5+t^7")?, 2)?;
    c.add("Psi(0, t^5 + t^7)", "t^12+t^8", quasiell::quasi_discriminant(&f2, &w0).format(&f2));
    let (v0, v1, vinf) = quasiell::valuation_profile(&f2, &w0)?;
    c.add("valuations at 0, 1, ∞", "(8, 4, 8)", format!("({v0}, {v1}, {vinf})"));
    let f4 = CoefField::finite(2)?;
    c.add("family with alpha = 1 over F2", "(E8, C3, E8)", fmt_types(&quasiell::classify_k3_family(&f2, &f2.one())?));
    c.add("family with alpha = 1 over F4", "(E8, D4, E8)", fmt_types(&quasiell::classify_k3_family(&f4, &f4.one())?));
    let fu = CoefField::function_field(1)?;
    let u = fu.u()?;
    let one = fu.one();
    c.add("t = 1 with lambda2 = u, mu = 1 over F2(u)", "Regular", quasiell::rdp_at_one(&fu, &u, &fu.zero(), &one)?);
    c.add("t = 0 with lambda2 = u, mu = 1 over F2(u)", "C3", quasiell::rdp_at_zero(&fu, &u, &fu.zero(), &one, false)?);
    c.add("t = 0 with lambda2 = 1, mu = u over F2(u)", "C5", quasiell::rdp_at_zero(&fu, &one, &fu.zero(), &u, false)?);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fields = [CoefField::finite(2)?, CoefField::finite(3)?, CoefField::function_field(1)?];
    let mut exact = 0;
    for i in 0..50 {
        let k = &fields[i % fields.len()];
        let w = ShortWeierstrass::new(random_tpoly(k, 8, &mut rng)?, random_tpoly(k, 12, &mut rng)?, 2)?;
        let u = random_unit(k, &mut rng)?;
        let (s, tau) = (random_tpoly(k, 2, &mut rng)?, random_tpoly(k, 6, &mut rng)?);
        let w2 = quasiell::transform(k, &w, &u, &s, &tau)?;
        let u12 = k.pow(&u, 12).ok_or_else(|| Error::Internal("u is not invertible".into()))?;
        exact += usize::from(quasiell::quasi_discriminant(k, &w2).scale(k, &u12) == quasiell::quasi_discriminant(k, &w));
    }
    c.add("u^12 Psi' = Psi on random transforms", 50, exact);

    let mut invariant = 0;
    let mut seen = BTreeSet::new();
    for i in 0..50 {
        let k = &fields[i % 2];
        let nf = quasiell::NormalForm {
            lambda2: random_coef(k, &mut rng)?,
            lambda6: random_coef(k, &mut rng)?,
            mu: random_unit(k, &mut rng)?,
        };
        let before = quasiell::classify_normal_form(k, &nf)?;
        let u = random_unit(k, &mut rng)?;
        let (s, tau) = (random_tpoly(k, 2, &mut rng)?, random_tpoly(k, 6, &mut rng)?);
        let moved = quasiell::transform(k, &nf.weierstrass(k), &u, &s, &tau)?;
        let after = quasiell::classify_normal_form(k, &quasiell::normal_form_reduce(k, &moved)?)?;
        invariant += usize::from(before == after);
        seen.extend(before.iter().map(|t| t.to_string()));
    }
    c.add("types unchanged by random coordinate changes over F4, F8", 50, invariant);
    r.param("types seen under coordinate changes", join(seen, ","));
    r.param("seed", 9);
    Ok(())
}
