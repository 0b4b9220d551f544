//! Integral symmetric bilinear forms.

use crate::error::{Error, Result};
use crate::intmat::{self, IntRows};
use crate::linalg::QMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Vertex labels of the 22-vertex tree: `γ0..γ8`, `δ0..δ8`, `ρ`, `ε0..ε2`.
pub const GAMMA_LABELS: &[&str] = &[
    "γ0", "γ1", "γ2", "γ3", "γ4", "γ5", "γ6", "γ7", "γ8", "δ0", "δ1", "δ2", "δ3", "δ4", "δ5", "δ6", "δ7", "δ8",
    "ρ", "ε0", "ε1", "ε2",
];

/// Index of `ρ` in [`GAMMA_LABELS`].
pub const GAMMA_RHO: usize = 18;

/// The 21 edges of the tree.
pub const GAMMA_EDGES: &[(usize, usize)] = &[
    (1, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 8),
    (8, 0),
    (0, 18),
    (4, 2),
    (10, 12),
    (12, 13),
    (13, 14),
    (14, 15),
    (15, 16),
    (16, 17),
    (17, 9),
    (9, 18),
    (13, 11),
    (18, 19),
    (19, 20),
    (20, 21),
];

/// Coefficients of `a = 2γ1+3γ2+4γ3+6γ4+5γ5+4γ6+3γ7+2γ8+γ0` indexed by
/// `γ0..γ8`.
pub const GAMMA_A_COEFFS: [i64; 9] = [1, 2, 3, 4, 6, 5, 4, 3, 2];

/// Lattice given by a symmetric integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    gram: IntRows,
}

/// Inertia `(plus, minus, zero)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl IntLattice {
    pub fn new(gram: IntRows) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Parameter("Gram matrix is not square".into()));
        }
        if (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::Parameter("Gram matrix is not symmetric".into()));
        }
        Ok(IntLattice { gram })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(intmat::to_big(rows))
    }

    /// `−2·E + A` for a simple graph on `n` vertices.
    pub fn from_graph(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = vec![vec![0i64; n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(a, b) in edges {
            g[a][b] = 1;
            g[b][a] = 1;
        }
        IntLattice { gram: intmat::to_big(&g) }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IntRows {
        &self.gram
    }

    pub fn det(&self) -> BigInt {
        intmat::det(&self.gram)
    }

    /// Inertia by rational congruence diagonalization.
    pub fn signature(&self) -> Signature {
        let m = QMatrix::from_rows(
            self.gram.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect(),
        );
        let (plus, minus, zero) = m.inertia();
        Signature { plus, minus, zero }
    }

    /// Saturated integral basis of the radical, each vector with its first
    /// non-zero entry positive.
    pub fn radical_basis(&self) -> Vec<Vec<BigInt>> {
        intmat::integer_kernel(&self.gram)
    }

    /// Smith invariant factors `d_1 | d_2 | …` (zeros for the radical).
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        intmat::smith_diagonal(&self.gram)
    }

    /// Non-trivial invariant factors, i.e. the cyclic orders of the
    /// discriminant group of a non-degenerate lattice.
    pub fn discriminant_group(&self) -> Vec<BigInt> {
        self.smith_invariants().into_iter().filter(|d| !d.is_one() && !d.is_zero()).collect()
    }

    /// Whether the discriminant group is `p`-elementary (every non-trivial
    /// invariant factor equals `p`).
    pub fn is_p_elementary(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.smith_invariants().iter().all(|d| !d.is_zero()) && self.discriminant_group().iter().all(|d| *d == p)
    }

    /// `ᵗx G y`.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut s = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * &self.gram[i][j] * yj;
            }
        }
        s
    }

    /// `ᵗU G U`.
    pub fn congruent(&self, u: &IntRows) -> IntLattice {
        let g = intmat::mul(&intmat::mul(&intmat::transpose(u), &self.gram), u);
        IntLattice { gram: g }
    }

    /// Principal submatrix on the given indices.
    pub fn sublattice(&self, idx: &[usize]) -> IntLattice {
        IntLattice { gram: idx.iter().map(|&i| idx.iter().map(|&j| self.gram[i][j].clone()).collect()).collect() }
    }
}

/// `N = −2E + A` of the 22-vertex tree.
pub fn gamma_lattice() -> IntLattice {
    IntLattice::from_graph(GAMMA_LABELS.len(), GAMMA_EDGES)
}

/// The vectors `a` (γ-part) and `b` (δ-part) in the basis of
/// [`GAMMA_LABELS`].
pub fn gamma_a_b() -> (Vec<BigInt>, Vec<BigInt>) {
    let mut a = vec![BigInt::zero(); GAMMA_LABELS.len()];
    let mut b = a.clone();
    for (i, &c) in GAMMA_A_COEFFS.iter().enumerate() {
        a[i] = BigInt::from(c);
        b[9 + i] = BigInt::from(c);
    }
    (a, b)
}

/// The 6×6 Gram matrix `S(n, c)`.
pub fn gram_s(n: u32, c: i64) -> Result<IntLattice> {
    if n > 2 {
        return Err(Error::Parameter(format!("n = {n} must be 0, 1 or 2")));
    }
    let d = |k: u32| i64::from(n == k);
    IntLattice::from_i64(&[
        vec![-2, 1, 0, 1, 1, d(0)],
        vec![1, -2, 1, 0, 0, d(1)],
        vec![0, 1, -2, 1, 0, d(2)],
        vec![1, 0, 1, -2, 0, 0],
        vec![1, 0, 0, 0, -2, c],
        vec![d(0), d(1), d(2), 0, c, -2],
    ])
}

/// Closed form of `det S(n, c)`: `−(8c+16)`, `−(8c+13)`, `−(8c+12)`.
pub fn gram_s_det_formula(n: u32, c: i64) -> i64 {
    -(8 * c + [16, 13, 12][n as usize])
}

/// One row of the σ-scan: `c = 2^{2σ−3} − 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3ScanRow {
    pub sigma: u32,
    pub c: i64,
    pub det: BigInt,
    pub invariants: Vec<BigInt>,
    pub two_elementary: bool,
}

/// Scans `σ = 3..=10` with `n = 0`.
pub fn k3_scan() -> Result<Vec<K3ScanRow>> {
    (3..=10u32)
        .map(|sigma| {
            let c = (1i64 << (2 * sigma - 3)) - 2;
            let l = gram_s(0, c)?;
            Ok(K3ScanRow {
                sigma,
                c,
                det: l.det(),
                invariants: l.discriminant_group(),
                two_elementary: l.is_p_elementary(2),
            })
        })
        .collect()
}

/// The `E8` Cartan matrix (positive definite) in Bourbaki numbering.
pub fn e8_gram() -> IntLattice {
    let edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    IntLattice::from_i64(&g).expect("symmetric")
}

/// `|x|` as `u64` if it fits.
pub fn to_u64(x: &BigInt) -> Option<u64> {
    x.abs().to_u64()
}

/// True when `|det| = Π d_i` (non-degenerate lattices).
pub fn det_matches_invariants(l: &IntLattice) -> bool {
    let prod = l.smith_invariants().iter().fold(BigInt::one(), |a, b| a * b);
    prod == l.det().abs()
}
