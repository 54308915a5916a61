//! Root systems, weights, the invariant form, and module weight systems.
//!
//! Coordinate conventions used throughout the crate:
//!
//! * a [`Weight`] is stored in the fundamental-weight basis, entry `i` being
//!   `⟨μ, α_i^∨⟩`;
//! * a [`Point`] of the real Cartan subspace is stored in simple-coroot
//!   coordinates, `h = Σ a_i α_i^∨`;
//!
//! so the canonical pairing `μ(h)` is a plain dot product, and the Dynkin
//! labels of `h` are `C·a` where `C[i][j] = ⟨α_i, α_j^∨⟩` is the Cartan matrix.
//! The invariant form is normalized so that the long roots of every simple
//! factor have squared length 2, optionally rescaled per factor.

use crate::rational::{dot, dot_int, frac, int, Matrix, Rational};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("invalid simple factor {series}{rank}: {reason}")]
    InvalidFactor {
        series: String,
        rank: usize,
        reason: &'static str,
    },
    #[error("unknown Lie series {0:?} (expected one of A, B, C, D, E, F, G)")]
    UnknownSeries(String),
    #[error("rank mismatch: expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E => "E",
            Series::F => "F",
            Series::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Series {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            _ => Err(LieError::UnknownSeries(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub series: Series,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(series: Series, rank: usize) -> Self {
        SimpleFactor { series, rank }
    }

    fn validate(&self) -> Result<(), LieError> {
        let bad = |reason| {
            Err(LieError::InvalidFactor {
                series: self.series.to_string(),
                rank: self.rank,
                reason,
            })
        };
        match (self.series, self.rank) {
            (Series::A, r) if r >= 1 => Ok(()),
            (Series::B, r) | (Series::C, r) if r >= 2 => Ok(()),
            (Series::D, r) if r >= 4 => Ok(()),
            (Series::E, 6..=8) | (Series::F, 4) | (Series::G, 2) => Ok(()),
            (Series::A, _) => bad("type A needs rank >= 1"),
            (Series::B, _) | (Series::C, _) => bad("types B and C need rank >= 2"),
            (Series::D, _) => bad("type D needs rank >= 4"),
            (Series::E, _) => bad("type E exists in ranks 6, 7, 8"),
            (Series::F, _) => bad("type F exists only in rank 4"),
            (Series::G, _) => bad("type G exists only in rank 2"),
        }
    }

    /// Squared lengths of the simple roots and the off-diagonal entries of the
    /// symmetric form, with long roots of squared length 2.
    fn symmetric_form(&self) -> Matrix {
        let n = self.rank;
        let mut lengths = vec![int(2); n];
        let mut bonds: Vec<(usize, usize, Rational)> = Vec::new();
        let chain = |bonds: &mut Vec<(usize, usize, Rational)>, upto: usize| {
            for i in 0..upto {
                bonds.push((i, i + 1, int(-1)));
            }
        };
        match self.series {
            Series::A => chain(&mut bonds, n - 1),
            Series::B => {
                lengths[n - 1] = int(1);
                chain(&mut bonds, n - 1);
            }
            Series::C => {
                for l in lengths.iter_mut().take(n - 1) {
                    *l = int(1);
                }
                for i in 0..n - 2 {
                    bonds.push((i, i + 1, frac(-1, 2)));
                }
                bonds.push((n - 2, n - 1, int(-1)));
            }
            Series::D => {
                chain(&mut bonds, n - 2);
                bonds.push((n - 3, n - 1, int(-1)));
            }
            Series::E => {
                // Bourbaki numbering: 1-3-4-5-6(-7-8), with 2 attached to 4.
                bonds.push((0, 2, int(-1)));
                bonds.push((1, 3, int(-1)));
                for i in 2..n - 1 {
                    bonds.push((i, i + 1, int(-1)));
                }
            }
            Series::F => {
                lengths[2] = int(1);
                lengths[3] = int(1);
                bonds.push((0, 1, int(-1)));
                bonds.push((1, 2, int(-1)));
                bonds.push((2, 3, frac(-1, 2)));
            }
            Series::G => {
                lengths[0] = frac(2, 3);
                bonds.push((0, 1, int(-1)));
            }
        }
        let mut b = Matrix::zeros(n, n);
        for (i, l) in lengths.into_iter().enumerate() {
            b[(i, i)] = l;
        }
        for (i, j, v) in bonds {
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
        b
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(fw_coords: Vec<i64>) -> Self {
        Weight(fw_coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fw_coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scaled(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

/// A point `Σ a_i α_i^∨` of the real Cartan subspace, stored by its
/// simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coroot_coords: Vec<Rational>) -> Self {
        Point(coroot_coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&x| int(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Point(vec![Rational::zero(); rank])
    }

    pub fn coroot_coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, q: &Rational) -> Point {
        Point(self.0.iter().map(|a| a * q).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// The canonical pairing `μ(h)`.
pub fn pairing(mu: &Weight, h: &Point) -> Result<Rational, LieError> {
    if mu.rank() != h.rank() {
        return Err(LieError::RankMismatch {
            expected: mu.rank(),
            got: h.rank(),
        });
    }
    Ok(dot_int(mu.fw_coords(), h.coroot_coords()))
}

/// `α_i(h)` for every simple root, i.e. `C·a`.
pub fn dynkin_labels(rs: &RootSystem, h: &Point) -> Result<Vec<Rational>, LieError> {
    rs.check_rank(h.rank())?;
    Ok((0..rs.rank())
        .map(|i| dot_int(&rs.cartan[i], h.coroot_coords()))
        .collect())
}

#[derive(Debug, Clone)]
pub struct PositiveRoot {
    pub weight: Weight,
    /// Coefficients in the simple-root basis.
    pub root_coords: Vec<i64>,
    /// The coroot in simple-coroot coordinates.
    pub coroot: Vec<i64>,
    pub length_sq: Rational,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    factors: Vec<SimpleFactor>,
    /// For each simple root, the index of its factor.
    factor_of: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Matrix,
    /// `(α_i, α_j)`.
    sym: Matrix,
    /// `(ω_i, ω_j)`.
    weight_form: Matrix,
    positive_roots: Vec<PositiveRoot>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    pub fn new(factors: &[SimpleFactor]) -> Result<Self, LieError> {
        if factors.is_empty() {
            return Err(LieError::Invalid("a root system needs at least one factor".into()));
        }
        for f in factors {
            f.validate()?;
        }
        let p: usize = factors.iter().map(|f| f.rank).sum();
        let mut sym = Matrix::zeros(p, p);
        let mut factor_of = Vec::with_capacity(p);
        let mut offset = 0;
        for (k, f) in factors.iter().enumerate() {
            let b = f.symmetric_form();
            for i in 0..f.rank {
                for j in 0..f.rank {
                    sym[(offset + i, offset + j)] = b[(i, j)].clone();
                }
                factor_of.push(k);
            }
            offset += f.rank;
        }
        let cartan: Vec<Vec<i64>> = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| {
                        let c = int(2) * &sym[(i, j)] / &sym[(j, j)];
                        debug_assert!(c.is_integer());
                        c.to_integer().to_i64().expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect();
        let cartan_m = Matrix::from_int_rows(&cartan);
        let cartan_inv = cartan_m.inverse().expect("Cartan matrices are nonsingular");
        let mut weight_form = Matrix::zeros(p, p);
        for i in 0..p {
            for j in 0..p {
                weight_form[(i, j)] = &cartan_inv[(i, j)] * &sym[(j, j)] / int(2);
            }
        }
        let mut rs = RootSystem {
            factors: factors.to_vec(),
            factor_of,
            cartan,
            cartan_inv,
            sym,
            weight_form,
            positive_roots: Vec::new(),
        };
        rs.positive_roots = rs.generate_positive_roots();
        Ok(rs)
    }

    /// Convenience constructor for a single simple factor.
    pub fn simple(series: Series, rank: usize) -> Result<Self, LieError> {
        Self::new(&[SimpleFactor::new(series, rank)])
    }

    pub fn parse_factors(spec: &str) -> Result<Vec<SimpleFactor>, LieError> {
        spec.split(['x', '×', '+', ','])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|tok| {
                let (s, r) = tok.split_at(1);
                let series = Series::from_str(s)?;
                let rank = r
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| LieError::Invalid(format!("bad factor {tok:?}")))?;
                Ok(SimpleFactor::new(series, rank))
            })
            .collect()
    }

    fn generate_positive_roots(&self) -> Vec<PositiveRoot> {
        let p = self.rank();
        let unit = |i: usize| {
            let mut v = vec![0i64; p];
            v[i] = 1;
            v
        };
        let mut known: BTreeSet<Vec<i64>> = (0..p).map(unit).collect();
        let mut order: Vec<Vec<i64>> = (0..p).map(unit).collect();
        let mut layer: Vec<Vec<i64>> = order.clone();
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for beta in &layer {
                let fw = self.root_coords_to_fw(beta);
                for i in 0..p {
                    // α_i-string through β: β - pα_i, …, β + qα_i with p - q = ⟨β, α_i^∨⟩.
                    let mut down = 0;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if known.contains(&probe) {
                            down += 1;
                        } else {
                            break;
                        }
                    }
                    if down - fw[i] > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !known.contains(&up) {
                            next.insert(up);
                        }
                    }
                }
            }
            layer = next.into_iter().collect();
            for r in &layer {
                known.insert(r.clone());
                order.push(r.clone());
            }
        }
        order
            .into_iter()
            .map(|rc| {
                let weight = Weight(self.root_coords_to_fw(&rc));
                let rq: Vec<Rational> = rc.iter().map(|&x| int(x)).collect();
                let length_sq = self.sym.quadratic(&rq);
                let coroot = rc
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| {
                        let v = int(c) * &self.sym[(i, i)] / &length_sq;
                        v.to_integer().to_i64().expect("integral coroot")
                    })
                    .collect();
                PositiveRoot {
                    weight,
                    root_coords: rc,
                    coroot,
                    length_sq,
                }
            })
            .collect()
    }

    fn root_coords_to_fw(&self, rc: &[i64]) -> Vec<i64> {
        let p = self.rank();
        (0..p)
            .map(|j| (0..p).map(|i| rc[i] * self.cartan[i][j]).sum())
            .collect()
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_matrix(&self) -> Matrix {
        Matrix::from_int_rows(&self.cartan)
    }

    /// Index of the simple factor containing simple root `i`.
    pub fn factor_of(&self, i: usize) -> usize {
        self.factor_of[i]
    }

    /// Range of simple-root indices belonging to factor `k`.
    pub fn factor_range(&self, k: usize) -> std::ops::Range<usize> {
        let start: usize = self.factors[..k].iter().map(|f| f.rank).sum();
        start..start + self.factors[k].rank
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// Squared lengths `(α_i, α_i)` of the simple roots.
    pub fn root_lengths(&self) -> Vec<Rational> {
        (0..self.rank()).map(|i| self.sym[(i, i)].clone()).collect()
    }

    /// `(α_i, α_j)` for simple roots.
    pub fn root_form(&self) -> &Matrix {
        &self.sym
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub(crate) fn check_rank(&self, got: usize) -> Result<(), LieError> {
        if got == self.rank() {
            Ok(())
        } else {
            Err(LieError::RankMismatch {
                expected: self.rank(),
                got,
            })
        }
    }

    /// Simple-root coordinates `C⁻ᵀ μ`, exact.
    pub fn root_coords(&self, mu: &Weight) -> Vec<Rational> {
        let p = self.rank();
        (0..p)
            .map(|k| {
                (0..p).fold(Rational::zero(), |acc, i| {
                    acc + &self.cartan_inv[(i, k)] * BigInt::from(mu.0[i])
                })
            })
            .collect()
    }

    /// `(λ, μ)` for weights, with long roots of squared length 2.
    pub fn weight_inner(&self, a: &Weight, b: &Weight) -> Rational {
        let mut acc = Rational::zero();
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    acc += &self.weight_form[(i, j)] * BigInt::from(x * y);
                }
            }
        }
        acc
    }

    pub fn reflect_weight(&self, i: usize, mu: &Weight) -> Weight {
        let c = mu.0[i];
        if c == 0 {
            return mu.clone();
        }
        mu.sub(&self.simple_root(i).scaled(c))
    }

    /// The dominant weight in the Weyl orbit of `mu`.
    pub fn dominant_representative(&self, mu: &Weight) -> Weight {
        let mut w = mu.clone();
        while let Some(i) = w.0.iter().position(|&x| x < 0) {
            w = self.reflect_weight(i, &w);
        }
        w
    }

    pub fn weyl_orbit(&self, mu: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([mu.clone()]);
        seen.insert(mu.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let r = self.reflect_weight(i, &w);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// Simple reflection `s_i` acting on simple-coroot coordinates:
    /// `a ↦ a − (C a)_i e_i`.
    pub fn reflection_on_points(&self, i: usize) -> Matrix {
        let p = self.rank();
        let mut s = Matrix::identity(p);
        for j in 0..p {
            s[(i, j)] -= int(self.cartan[i][j]);
        }
        s
    }

    pub fn is_dominant(&self, h: &Point) -> bool {
        (0..self.rank()).all(|i| !dot_int(&self.cartan[i], h.coroot_coords()).is_negative())
    }

    pub fn in_open_chamber(&self, h: &Point) -> bool {
        (0..self.rank()).all(|i| dot_int(&self.cartan[i], h.coroot_coords()).is_positive())
    }

    /// Highest root of factor `k`, embedded in the full weight lattice.
    pub fn highest_root(&self, k: usize) -> Weight {
        let range = self.factor_range(k);
        self.positive_roots
            .iter()
            .filter(|r| self.supported_in(&r.root_coords, &range))
            .max_by_key(|r| r.root_coords.iter().sum::<i64>())
            .expect("every factor has roots")
            .weight
            .clone()
    }

    /// Highest short root of factor `k`, or `None` if the factor is simply laced.
    pub fn highest_short_root(&self, k: usize) -> Option<Weight> {
        let range = self.factor_range(k);
        let long = self.long_length(k);
        self.positive_roots
            .iter()
            .filter(|r| self.supported_in(&r.root_coords, &range) && r.length_sq < long)
            .max_by_key(|r| r.root_coords.iter().sum::<i64>())
            .map(|r| r.weight.clone())
    }

    /// All short roots (positive and negative) of the factors with two root lengths.
    pub fn short_roots(&self) -> BTreeSet<Weight> {
        let mut out = BTreeSet::new();
        for r in &self.positive_roots {
            let k = self.factor_of(r.root_coords.iter().position(|&c| c != 0).unwrap());
            if r.length_sq < self.long_length(k) {
                out.insert(r.weight.clone());
                out.insert(r.weight.neg());
            }
        }
        out
    }

    fn long_length(&self, k: usize) -> Rational {
        self.factor_range(k)
            .map(|i| self.sym[(i, i)].clone())
            .max()
            .expect("nonempty factor")
    }

    fn supported_in(&self, rc: &[i64], range: &std::ops::Range<usize>) -> bool {
        rc.iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || range.contains(&i))
    }

    /// Highest weights of the adjoint module, one per simple factor.
    pub fn adjoint_highest_weights(&self) -> Vec<Weight> {
        (0..self.factors.len()).map(|k| self.highest_root(k)).collect()
    }

    /// Highest weights of the little adjoint module, one per factor; every
    /// factor must have two root lengths.
    pub fn little_adjoint_highest_weights(&self) -> Result<Vec<Weight>, LieError> {
        (0..self.factors.len())
            .map(|k| {
                self.highest_short_root(k).ok_or_else(|| {
                    LieError::Invalid(format!(
                        "factor {} is simply laced and has no little adjoint module",
                        self.factors[k]
                    ))
                })
            })
            .collect()
    }

    /// Weyl's dimension formula.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u128, LieError> {
        self.check_rank(lambda.rank())?;
        if !lambda.is_dominant() {
            return Err(LieError::NotDominant(lambda.clone()));
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for r in &self.positive_roots {
            let lr: i64 = r.coroot.iter().zip(&lambda.0).map(|(c, l)| c * l).sum();
            let rr: i64 = r.coroot.iter().sum();
            num *= BigInt::from(lr + rr);
            den *= BigInt::from(rr);
        }
        let q = Rational::new(num, den);
        debug_assert!(q.is_integer());
        q.to_integer()
            .to_u128()
            .ok_or_else(|| LieError::Invalid("dimension overflows u128".into()))
    }

    /// Multiplicities of every weight (zero included) of the irreducible
    /// module with highest weight `lambda`, by Freudenthal's recursion over
    /// the dominant weights.
    pub fn irreducible_multiplicities(
        &self,
        lambda: &Weight,
    ) -> Result<BTreeMap<Weight, u64>, LieError> {
        self.check_rank(lambda.rank())?;
        if !lambda.is_dominant() {
            return Err(LieError::NotDominant(lambda.clone()));
        }
        let dominant = self.dominant_multiplicities(lambda);
        let mut all = BTreeMap::new();
        for (mu, m) in dominant {
            for w in self.weyl_orbit(&mu) {
                all.insert(w, m);
            }
        }
        Ok(all)
    }

    fn dominant_multiplicities(&self, lambda: &Weight) -> BTreeMap<Weight, u64> {
        let p = self.rank();
        let depth_bound: Vec<i64> = self
            .root_coords(lambda)
            .iter()
            .map(|r| r.floor().to_integer().to_i64().expect("small"))
            .collect();
        // Dominant μ ≤ λ, keyed by depth Σ c_k where λ − μ = Σ c_k α_k.
        let mut candidates: Vec<(i64, Weight)> = depth_bound
            .iter()
            .map(|&b| 0..=b)
            .multi_cartesian_product()
            .filter_map(|c| {
                let mut mu = lambda.clone();
                for (k, &ck) in c.iter().enumerate() {
                    if ck != 0 {
                        mu = mu.sub(&self.simple_root(k).scaled(ck));
                    }
                }
                mu.is_dominant().then(|| (c.iter().sum(), mu))
            })
            .collect();
        candidates.sort();

        let rho = Weight(vec![1; p]);
        let lr = lambda.add(&rho);
        let top = self.weight_inner(&lr, &lr);
        let mut mult: HashMap<Weight, Rational> = HashMap::new();
        for (depth, mu) in candidates {
            if depth == 0 {
                mult.insert(mu, Rational::one());
                continue;
            }
            let mr = mu.add(&rho);
            let denom = &top - self.weight_inner(&mr, &mr);
            let mut sum = Rational::zero();
            for r in &self.positive_roots {
                let mut k = 1;
                loop {
                    let nu = mu.add(&r.weight.scaled(k));
                    let dom = self.dominant_representative(&nu);
                    let Some(m) = mult.get(&dom) else { break };
                    if !m.is_zero() {
                        sum += m * self.weight_inner(&nu, &r.weight);
                    }
                    k += 1;
                }
            }
            let m = int(2) * sum / denom;
            debug_assert!(m.is_integer() && !m.is_negative());
            mult.insert(mu, m);
        }
        mult.into_iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(w, m)| (w, m.to_integer().to_u64().expect("multiplicity fits")))
            .collect()
    }
}

/// The W-invariant form on simple-coroot coordinates, `G[i][j] = (α_i^∨, α_j^∨)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantForm {
    gram: Matrix,
    factor_scales: Vec<Rational>,
}

impl InvariantForm {
    /// Equal scaling on every simple factor.
    pub fn standard(rs: &RootSystem) -> Self {
        Self::with_scales(rs, &vec![Rational::one(); rs.factors().len()])
            .expect("unit scales are valid")
    }

    pub fn with_scales(rs: &RootSystem, scales: &[Rational]) -> Result<Self, LieError> {
        if scales.len() != rs.factors().len() {
            return Err(LieError::Invalid(format!(
                "expected {} factor scales, got {}",
                rs.factors().len(),
                scales.len()
            )));
        }
        if let Some(s) = scales.iter().find(|s| !s.is_positive()) {
            return Err(LieError::Invalid(format!("factor scale {s} is not positive")));
        }
        let p = rs.rank();
        let b = rs.root_form();
        let mut gram = Matrix::zeros(p, p);
        for i in 0..p {
            for j in 0..p {
                if b[(i, j)].is_zero() {
                    continue;
                }
                let scale = &scales[rs.factor_of(i)];
                gram[(i, j)] = scale * int(4) * &b[(i, j)] / (&b[(i, i)] * &b[(j, j)]);
            }
        }
        Ok(InvariantForm {
            gram,
            factor_scales: scales.to_vec(),
        })
    }

    /// An arbitrary symmetric positive-definite form, for use outside a root
    /// system.
    pub fn from_gram(gram: Matrix) -> Result<Self, LieError> {
        if !gram.is_positive_definite() {
            return Err(LieError::Invalid("form is not symmetric positive definite".into()));
        }
        Ok(InvariantForm {
            gram,
            factor_scales: vec![Rational::one()],
        })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn factor_scales(&self) -> &[Rational] {
        &self.factor_scales
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn norm_sq(&self, h: &Point) -> Rational {
        self.gram.quadratic(h.coroot_coords())
    }

    pub fn inner(&self, a: &Point, b: &Point) -> Rational {
        dot(a.coroot_coords(), &self.gram.mul_vec(b.coroot_coords()))
    }
}

/// Nonzero weights with multiplicities of a finite-dimensional module given
/// by a list of highest weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    root_system: RootSystem,
    module_spec: Vec<Weight>,
    entries: BTreeMap<Weight, u64>,
    zero_mult: u64,
}

impl WeightSystem {
    pub fn new(rs: &RootSystem, module_spec: &[Weight]) -> Result<Self, LieError> {
        let mut entries: BTreeMap<Weight, u64> = BTreeMap::new();
        let mut zero_mult = 0;
        for lambda in module_spec {
            for (w, m) in rs.irreducible_multiplicities(lambda)? {
                if w.is_zero() {
                    zero_mult += m;
                } else {
                    *entries.entry(w).or_default() += m;
                }
            }
        }
        Ok(WeightSystem {
            root_system: rs.clone(),
            module_spec: module_spec.to_vec(),
            entries,
            zero_mult,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn module_spec(&self) -> &[Weight] {
        &self.module_spec
    }

    /// Nonzero weights and their multiplicities, in canonical order.
    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn nonzero_weights(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        if mu.is_zero() {
            self.zero_mult
        } else {
            self.entries.get(mu).copied().unwrap_or(0)
        }
    }

    pub fn zero_mult(&self) -> u64 {
        self.zero_mult
    }

    pub fn dim(&self) -> u64 {
        self.zero_mult + self.entries.values().sum::<u64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: Series, r: usize) -> RootSystem {
        RootSystem::simple(s, r).unwrap()
    }

    #[test]
    fn a2_data() {
        let a2 = rs(Series::A, 2);
        assert_eq!(a2.cartan(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.positive_roots().len(), 3);
        assert_eq!(a2.highest_root(0), Weight::new(vec![1, 1]));
    }

    #[test]
    fn a1xa1_data() {
        let r = RootSystem::new(&[
            SimpleFactor::new(Series::A, 1),
            SimpleFactor::new(Series::A, 1),
        ])
        .unwrap();
        assert_eq!(r.cartan(), &[vec![2, 0], vec![0, 2]]);
        assert_eq!(r.positive_roots().len(), 2);
    }

    #[test]
    fn g2_lengths() {
        let g2 = rs(Series::G, 2);
        assert_eq!(g2.positive_roots().len(), 6);
        let l = g2.root_lengths();
        assert_eq!(&l[1] / &l[0], int(3));
        assert_eq!(l[1], int(2));
    }

    #[test]
    fn classical_root_counts() {
        let cases = [
            (Series::A, 4, 10),
            (Series::B, 3, 9),
            (Series::C, 4, 16),
            (Series::D, 4, 12),
            (Series::D, 5, 20),
            (Series::E, 6, 36),
            (Series::E, 7, 63),
            (Series::E, 8, 120),
            (Series::F, 4, 24),
        ];
        for (s, r, n) in cases {
            assert_eq!(rs(s, r).positive_roots().len(), n, "{s}{r}");
        }
    }

    #[test]
    fn invalid_factors_rejected() {
        assert!(RootSystem::simple(Series::G, 3).is_err());
        assert!(RootSystem::simple(Series::D, 3).is_err());
        assert!(RootSystem::simple(Series::E, 5).is_err());
        assert!(RootSystem::simple(Series::A, 0).is_err());
        assert!(RootSystem::new(&[]).is_err());
        assert!("Q".parse::<Series>().is_err());
    }

    #[test]
    fn parse_factor_lists() {
        let f = RootSystem::parse_factors("A1xA1").unwrap();
        assert_eq!(f, vec![SimpleFactor::new(Series::A, 1); 2]);
        let f = RootSystem::parse_factors("g2").unwrap();
        assert_eq!(f, vec![SimpleFactor::new(Series::G, 2)]);
    }

    #[test]
    fn weyl_dimensions() {
        let a2 = rs(Series::A, 2);
        assert_eq!(a2.weyl_dim(&Weight::new(vec![1, 1])).unwrap(), 8);
        let a1 = rs(Series::A, 1);
        assert_eq!(a1.weyl_dim(&Weight::new(vec![1])).unwrap(), 2);
        let g2 = rs(Series::G, 2);
        let short = g2.highest_short_root(0).unwrap();
        assert_eq!(g2.weyl_dim(&short).unwrap(), 7);
        assert_eq!(g2.weyl_dim(&g2.highest_root(0)).unwrap(), 14);
        assert!(matches!(
            a2.weyl_dim(&Weight::new(vec![1, -1])),
            Err(LieError::NotDominant(_))
        ));
    }

    #[test]
    fn pairing_and_labels() {
        let h = Point::from_ints(&[1, 1]);
        assert_eq!(pairing(&Weight::new(vec![1, 1]), &h).unwrap(), int(2));
        assert_eq!(
            pairing(&Weight::new(vec![1, 0]), &Point::from_ints(&[2, 4])).unwrap(),
            int(2)
        );
        assert_eq!(
            pairing(&Weight::new(vec![2, -1]), &Point::from_ints(&[2, 2])).unwrap(),
            int(2)
        );
        assert!(pairing(&Weight::new(vec![1]), &h).is_err());

        let a2 = rs(Series::A, 2);
        assert_eq!(
            dynkin_labels(&a2, &Point::from_ints(&[2, 2])).unwrap(),
            vec![int(2), int(2)]
        );
        let a1a1 = RootSystem::parse_factors("A1xA1").and_then(|f| RootSystem::new(&f)).unwrap();
        assert_eq!(
            dynkin_labels(&a1a1, &Point::from_ints(&[2, 4])).unwrap(),
            vec![int(4), int(8)]
        );
        assert_eq!(
            dynkin_labels(&a2, &Point::zero(2)).unwrap(),
            vec![int(0), int(0)]
        );
    }

    #[test]
    fn example_module_weights() {
        let r = RootSystem::new(&RootSystem::parse_factors("A1xA1").unwrap()).unwrap();
        let ws = WeightSystem::new(&r, &[Weight::new(vec![1, 1]), Weight::new(vec![1, 0])]).unwrap();
        let expected: BTreeSet<Weight> = [
            [1, 1],
            [1, -1],
            [-1, 1],
            [-1, -1],
            [1, 0],
            [-1, 0],
        ]
        .iter()
        .map(|w| Weight::new(w.to_vec()))
        .collect();
        assert_eq!(ws.nonzero_weights().cloned().collect::<BTreeSet<_>>(), expected);
        assert!(ws.entries().values().all(|&m| m == 1));
        assert_eq!(ws.zero_mult(), 0);
    }

    #[test]
    fn a2_adjoint_weights() {
        let a2 = rs(Series::A, 2);
        let ws = WeightSystem::new(&a2, &a2.adjoint_highest_weights()).unwrap();
        assert_eq!(ws.entries().len(), 6);
        assert!(ws.entries().values().all(|&m| m == 1));
        assert_eq!(ws.zero_mult(), 2);
        assert_eq!(ws.dim(), 8);
    }

    #[test]
    fn b2_little_adjoint_is_short_roots() {
        let b2 = rs(Series::B, 2);
        let ws = WeightSystem::new(&b2, &b2.little_adjoint_highest_weights().unwrap()).unwrap();
        let weights: BTreeSet<Weight> = ws.nonzero_weights().cloned().collect();
        assert_eq!(weights, b2.short_roots());
        assert_eq!(weights.len(), 4);
        assert_eq!(ws.zero_mult(), 1);
        assert!(rs(Series::A, 3).little_adjoint_highest_weights().is_err());
    }

    #[test]
    fn gram_is_invariant_and_positive() {
        for (s, r) in [(Series::B, 3), (Series::G, 2), (Series::F, 4), (Series::C, 3)] {
            let sys = rs(s, r);
            let g = InvariantForm::standard(&sys);
            assert!(g.gram().is_positive_definite());
            for i in 0..sys.rank() {
                let refl = sys.reflection_on_points(i);
                assert_eq!(&refl.transpose().mul(g.gram()).mul(&refl), g.gram());
            }
        }
    }

    #[test]
    fn a1_gram_normalization() {
        let a1a1 = RootSystem::new(&RootSystem::parse_factors("A1xA1").unwrap()).unwrap();
        let g = InvariantForm::standard(&a1a1);
        assert_eq!(g.gram(), &Matrix::from_int_rows(&[vec![2, 0], vec![0, 2]]));
        let scaled = InvariantForm::with_scales(&a1a1, &[int(1), int(3)]).unwrap();
        assert_eq!(scaled.gram()[(1, 1)], int(6));
        assert!(InvariantForm::with_scales(&a1a1, &[int(1), int(0)]).is_err());
        assert!(InvariantForm::with_scales(&a1a1, &[int(1)]).is_err());
    }

    #[test]
    fn long_roots_have_length_two() {
        for (s, r) in [(Series::B, 3), (Series::C, 3), (Series::G, 2), (Series::F, 4), (Series::E, 6)] {
            let sys = rs(s, r);
            let theta = sys.highest_root(0);
            assert_eq!(sys.weight_inner(&theta, &theta), int(2), "{s}{r}");
        }
    }
}
