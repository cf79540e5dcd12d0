//! Weighted polynomial rings with a distinguished invertible element,
//! degree-preserving self-maps, the rescaled involutions they induce,
//! order-n character actions, exact invariant-subspace computation, and
//! generator-set verification for the fixed subrings.

use alloc::string::String;
use alloc::{format, vec, vec::Vec};
use core::fmt;
use num::{One, Zero};

use crate::arith::{int, rat, ratio, Int, Rat};
use crate::linalg::QMat;
use crate::poly::Poly;
use crate::weierstrass::{curve_invariants, level2_coeffs, level3_coeffs};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedError {
    OddWeight(String),
    Inhomogeneous,
    WeightMismatch(String),
    RelationBroken(String),
    NotInvariant(String),
    UnsupportedOrder(u32),
}

impl fmt::Display for GradedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradedError::OddWeight(g) => write!(f, "generator {g} has odd weight"),
            GradedError::Inhomogeneous => write!(f, "polynomial is not homogeneous"),
            GradedError::WeightMismatch(g) => {
                write!(f, "image of {g} does not preserve its weight")
            }
            GradedError::RelationBroken(m) => {
                write!(f, "map does not respect the ring relation: {m}")
            }
            GradedError::NotInvariant(g) => {
                write!(f, "claimed generator {g} is not fixed by the involution")
            }
            GradedError::UnsupportedOrder(n) => write!(f, "unsupported character order {n}"),
        }
    }
}

/// A graded polynomial ring with named weighted generators, an optional
/// binomial relation identifying var1² with var0·var2, and a distinguished
/// homogeneous element treated as invertible in localized pieces.
#[derive(Clone, Debug)]
pub struct GradedRing {
    pub names: Vec<&'static str>,
    pub weights: Vec<u32>,
    /// When set, exponents of variable 1 are reduced below 2 via
    /// var1² = var0·var2.
    has_middle_square_relation: bool,
    /// The invertible localization denominator D.
    pub unit: Poly,
    pub unit_weight: u32,
    /// The discriminant of the attached curve family, in ring variables.
    pub delta: Poly,
    /// Default prime for integrality scans.
    pub default_p: u64,
    pub level: u8,
}

impl GradedRing {
    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.names.len(), i)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Reduce exponents of the middle variable below 2 when the relation
    /// is present; identity otherwise.
    pub fn normalize(&self, p: &Poly) -> Poly {
        if !self.has_middle_square_relation {
            return p.clone();
        }
        let mut out = Poly::zero(p.vars());
        for (e, c) in p.terms() {
            let y = e[1];
            let mut ne = e.clone();
            ne[0] += y / 2;
            ne[1] = y % 2;
            ne[2] += y / 2;
            out = &out + &Poly::monomial(p.vars(), ne, c.clone());
        }
        out
    }

    /// Weight of a normalized homogeneous polynomial.
    pub fn weight_of(&self, p: &Poly) -> Result<u32, GradedError> {
        self.normalize(p)
            .weight(&self.weights)
            .ok_or(GradedError::Inhomogeneous)
    }

    /// All normal-form monomial exponent vectors of the given weight.
    fn monomial_exps(&self, weight: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars()];
        self.enumerate(0, weight, &mut cur, &mut out);
        out
    }

    fn enumerate(&self, i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == self.nvars() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if self.has_middle_square_relation && i == 1 {
            1
        } else {
            rem / self.weights[i]
        };
        for e in 0..=cap.min(rem / self.weights[i]) {
            cur[i] = e;
            self.enumerate(i + 1, rem - e * self.weights[i], cur, out);
        }
        cur[i] = 0;
    }

    /// Normal-form monomials of the given weight, as polynomials.
    pub fn monomials(&self, weight: u32) -> Vec<Poly> {
        self.monomial_exps(weight)
            .into_iter()
            .map(|e| Poly::monomial(self.nvars(), e, Rat::one()))
            .collect()
    }

    /// Coordinates of a normalized weight-homogeneous polynomial over the
    /// normal-form monomial list of that weight.
    fn coords(&self, p: &Poly, exps: &[Vec<u32>]) -> Vec<Rat> {
        let q = self.normalize(p);
        let mut v = vec![Rat::zero(); exps.len()];
        for (e, c) in q.terms() {
            let idx = exps
                .iter()
                .position(|x| x == e)
                .expect("term outside the weight piece");
            v[idx] = c.clone();
        }
        v
    }

    pub fn render(&self, p: &Poly) -> String {
        p.to_string_with(&self.names)
    }
}

/// c4, c6 with weights 4, 6; D = Δ = (c4³ − c6²)/1728.
pub fn level1_ring() -> GradedRing {
    let c4 = Poly::var(2, 0);
    let c6 = Poly::var(2, 1);
    let delta = (&c4.pow(3) - &c6.pow(2)).scale(&ratio(1, 1728));
    GradedRing {
        names: vec!["c4", "c6"],
        weights: vec![4, 6],
        has_middle_square_relation: false,
        unit: delta.clone(),
        unit_weight: 12,
        delta,
        default_p: 5,
        level: 1,
    }
}

/// q2, q4 with weights 2, 4; Δ from the curve y² = x³ + q2x² + q4x and
/// D = q2⁴ − r4² with r4 = 8q4 − q2².
pub fn level2_ring() -> GradedRing {
    let delta = curve_invariants(&level2_coeffs()).delta;
    let q2 = Poly::var(2, 0);
    let r4 = level2_r4();
    let d = &q2.pow(4) - &r4.pow(2);
    GradedRing {
        names: vec!["q2", "q4"],
        weights: vec![2, 4],
        has_middle_square_relation: false,
        unit: d,
        unit_weight: 8,
        delta,
        default_p: 11,
        level: 2,
    }
}

/// r4 = 8q4 − q2².
pub fn level2_r4() -> Poly {
    let q2 = Poly::var(2, 0);
    let q4 = Poly::var(2, 1);
    &q4.scale(&rat(8)) - &q2.pow(2)
}

/// The even generators of the level-3 ring: variables (a1², a1a3, a3²)
/// with weights 2, 4, 6 and the relation (a1a3)² = a1²·a3²; Δ is the
/// curve discriminant of y² + a1xy + a3y = x³ rewritten in them, and
/// D = 108·a1a3·a1² − 2916·a3² (the cleared form of a1⁶ − a1²d2²).
pub fn level3_ring() -> GradedRing {
    let delta_odd = curve_invariants(&level3_coeffs()).delta;
    let delta = level3_from_odd(&delta_odd);
    let d = level3_d();
    GradedRing {
        names: vec!["a1^2", "a1a3", "a3^2"],
        weights: vec![2, 4, 6],
        has_middle_square_relation: true,
        unit: d,
        unit_weight: 6,
        delta,
        default_p: 7,
        level: 3,
    }
}

/// D₃ = 108·(a1²·a1a3 − 27·a3²) = 108a3(a1³ − 27a3) in even variables.
pub fn level3_d() -> Poly {
    let u = Poly::var(3, 0);
    let v = Poly::var(3, 1);
    let w = Poly::var(3, 2);
    (&(&u * &v) - &w.scale(&rat(27))).scale(&rat(108))
}

/// Rewrite a polynomial in (a1, a3) with every term of even total degree
/// as a polynomial in (a1², a1a3, a3²), in normal form.
pub fn level3_from_odd(p: &Poly) -> Poly {
    assert_eq!(p.vars(), 2);
    let mut out = Poly::zero(3);
    for (e, c) in p.terms() {
        let (i, j) = (e[0], e[1]);
        assert!((i + j) % 2 == 0, "odd total degree cannot be rewritten");
        let y = i % 2;
        let exps = vec![(i - y) / 2, y, (j - y) / 2];
        out = &out + &Poly::monomial(3, exps, c.clone());
    }
    out
}

/// A degree-preserving ring self-map given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    pub images: Vec<Poly>,
}

impl AlgebraMap {
    /// Validate homogeneity, weight preservation, and (when present)
    /// compatibility with the ring relation.
    pub fn new(ring: &GradedRing, images: Vec<Poly>) -> Result<Self, GradedError> {
        assert_eq!(images.len(), ring.nvars());
        for (i, img) in images.iter().enumerate() {
            let w = ring.weight_of(img)?;
            if !img.is_zero() && w != ring.weights[i] {
                return Err(GradedError::WeightMismatch(String::from(ring.names[i])));
            }
        }
        if ring.has_middle_square_relation {
            let lhs = ring.normalize(&images[1].pow(2));
            let rhs = ring.normalize(&(&images[0] * &images[2]));
            if lhs != rhs {
                return Err(GradedError::RelationBroken(format!(
                    "{} vs {}",
                    ring.render(&lhs),
                    ring.render(&rhs)
                )));
            }
        }
        Ok(AlgebraMap { images })
    }

    pub fn identity(ring: &GradedRing) -> Self {
        AlgebraMap {
            images: (0..ring.nvars()).map(|i| ring.var(i)).collect(),
        }
    }
}

/// Ring-homomorphic application, normalized.
pub fn apply(ring: &GradedRing, map: &AlgebraMap, p: &Poly) -> Poly {
    ring.normalize(&p.substitute(&map.images))
}

/// True iff map∘map multiplies every weight-k generator by n^k.
pub fn check_t_squared(ring: &GradedRing, map: &AlgebraMap, n: u32) -> bool {
    (0..ring.nvars()).all(|i| {
        let twice = apply(ring, map, &map.images[i]);
        let factor = Rat::from_integer(Int::from(n).pow(ring.weights[i]));
        twice == ring.var(i).scale(&factor)
    })
}

/// w(g) = map(g)/(−N)^{k/2} on each weight-k generator; requires all
/// weights even. The result squares to the identity when map² = [N²]-type
/// rescaling holds, which callers verify via check_t_squared.
pub fn fricke_from_t(
    ring: &GradedRing,
    map: &AlgebraMap,
    n: u64,
) -> Result<AlgebraMap, GradedError> {
    let mut images = Vec::new();
    for (i, img) in map.images.iter().enumerate() {
        let k = ring.weights[i];
        if !k.is_multiple_of(2) {
            return Err(GradedError::OddWeight(String::from(ring.names[i])));
        }
        let denom = Rat::from_integer(int(-(n as i64)).pow(k / 2));
        images.push(img.scale(&(Rat::one() / denom)));
    }
    AlgebraMap::new(ring, images)
}

/// True iff the map fixes the polynomial (after normalization).
pub fn is_invariant(ring: &GradedRing, map: &AlgebraMap, p: &Poly) -> bool {
    apply(ring, map, p) == ring.normalize(p)
}

/// Exact equality of homogeneous polynomials of equal weight, in normal
/// form; inhomogeneous input is rejected.
pub fn verify_identity(ring: &GradedRing, lhs: &Poly, rhs: &Poly) -> Result<bool, GradedError> {
    let lw = ring.weight_of(lhs)?;
    let rw = ring.weight_of(rhs)?;
    if !lhs.is_zero() && !rhs.is_zero() && lw != rw {
        return Ok(false);
    }
    Ok(ring.normalize(lhs) == ring.normalize(rhs))
}

/// Basis of the fixed space of the involution on the piece x/Dᵐ with x of
/// weight k + m·weight(D), as numerator polynomials.
pub fn invariant_subspace(ring: &GradedRing, map: &AlgebraMap, k: u32, m: u32) -> Vec<Poly> {
    let big_k = k + m * ring.unit_weight;
    let exps = ring.monomial_exps(big_k);
    if exps.is_empty() {
        return Vec::new();
    }
    let n = exps.len();
    // Columns: coordinates of map(monomial_j) minus the monomial itself.
    let mut a = QMat::zero(n, n);
    for (j, e) in exps.iter().enumerate() {
        let mono = Poly::monomial(ring.nvars(), e.clone(), Rat::one());
        let image = apply(ring, map, &mono);
        let col = ring.coords(&image, &exps);
        for (i, c) in col.into_iter().enumerate() {
            a[(i, j)] = c;
        }
        a[(j, j)] = &a[(j, j)] - &Rat::one();
    }
    a.kernel()
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero(ring.nvars());
            for (j, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    p = &p + &Poly::monomial(ring.nvars(), exps[j].clone(), c);
                }
            }
            p
        })
        .collect()
}

fn span_rank(rows: &[Vec<Rat>], width: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = QMat::zero(rows.len(), width);
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in r.iter().enumerate() {
            m[(i, j)] = c.clone();
        }
    }
    m.rank()
}

/// All products of the given generators (and the ring unit) of exactly the
/// given weight, as polynomials.
fn generator_products(ring: &GradedRing, gens: &[Poly], weight: u32) -> Vec<Poly> {
    let mut all: Vec<(Poly, u32)> = Vec::new();
    for g in gens {
        let w = ring.weight_of(g).expect("generators are homogeneous");
        all.push((g.clone(), w));
    }
    all.push((ring.unit.clone(), ring.unit_weight));
    let mut out = Vec::new();
    let mut exps = vec![0u32; all.len()];
    product_search(ring, &all, 0, weight, &mut exps, &mut out);
    out
}

fn product_search(
    ring: &GradedRing,
    gens: &[(Poly, u32)],
    i: usize,
    rem: u32,
    exps: &mut Vec<u32>,
    out: &mut Vec<Poly>,
) {
    if i == gens.len() {
        if rem == 0 {
            let mut p = Poly::one(ring.nvars());
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    p = &p * &gens[j].0.pow(e);
                }
            }
            out.push(ring.normalize(&p));
        }
        return;
    }
    let cap = rem / gens[i].1;
    for e in 0..=cap {
        exps[i] = e;
        product_search(ring, gens, i + 1, rem - e * gens[i].1, exps, out);
    }
    exps[i] = 0;
}

/// Check that the claimed generators (with the ring unit adjoined as an
/// invertible element) span exactly the involution-fixed subspace of every
/// piece with weight ≤ max_weight and denominator exponent ≤ max_denom.
pub fn check_generation(
    ring: &GradedRing,
    map: &AlgebraMap,
    claimed: &[Poly],
    max_weight: u32,
    max_denom: u32,
) -> Result<bool, GradedError> {
    for g in claimed {
        ring.weight_of(g)?;
        if !is_invariant(ring, map, g) {
            return Err(GradedError::NotInvariant(ring.render(g)));
        }
    }
    if !is_invariant(ring, map, &ring.unit) {
        return Err(GradedError::NotInvariant(ring.render(&ring.unit)));
    }
    for m in 0..=max_denom {
        for k in (0..=max_weight).step_by(2) {
            if !piece_matches(ring, map, claimed, k, m, |_| true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Span comparison on one piece: the fixed space filtered by `admit`
/// versus the claimed-generator products.
fn piece_matches(
    ring: &GradedRing,
    map: &AlgebraMap,
    claimed: &[Poly],
    k: u32,
    m: u32,
    admit: impl Fn(u32) -> bool,
) -> bool {
    let big_k = k + m * ring.unit_weight;
    let exps = ring.monomial_exps(big_k);
    let fixed: Vec<Poly> = if admit(k) {
        invariant_subspace(ring, map, k, m)
    } else {
        Vec::new()
    };
    let candidates = generator_products(ring, claimed, big_k);
    let fixed_rows: Vec<Vec<Rat>> = fixed.iter().map(|p| ring.coords(p, &exps)).collect();
    let cand_rows: Vec<Vec<Rat>> = candidates
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| ring.coords(p, &exps))
        .collect();
    let rank_f = span_rank(&fixed_rows, exps.len());
    let rank_c = span_rank(&cand_rows, exps.len());
    let mut union = fixed_rows;
    union.extend(cand_rows);
    let rank_u = span_rank(&union, exps.len().max(1));
    rank_f == rank_u && rank_c == rank_u
}

/// The weight-divisibility modulus of the order-n character action:
/// a weight-k piece is fixed iff modulus | k.
pub fn cyclotomic_modulus(order: u32) -> Result<u32, GradedError> {
    match order {
        2 => Ok(4),
        3 => Ok(3),
        6 => Ok(6),
        n => Err(GradedError::UnsupportedOrder(n)),
    }
}

/// Fixed space of the order-n character (empty unless modulus | k),
/// intersected with the extra involution when supplied.
pub fn cyclotomic_invariant_subspace(
    ring: &GradedRing,
    order: u32,
    extra: Option<&AlgebraMap>,
    k: u32,
    m: u32,
) -> Result<Vec<Poly>, GradedError> {
    let modulus = cyclotomic_modulus(order)?;
    if !k.is_multiple_of(modulus) {
        return Ok(Vec::new());
    }
    match extra {
        Some(w) => Ok(invariant_subspace(ring, w, k, m)),
        None => Ok(ring.monomials(k + m * ring.unit_weight)),
    }
}

/// Generation check against the order-n character (and optional extra
/// involution): claimed generators must sit in admissible weights and be
/// fixed; every piece's span must match exactly.
pub fn check_cyclotomic_generation(
    ring: &GradedRing,
    order: u32,
    extra: Option<&AlgebraMap>,
    claimed: &[Poly],
    max_weight: u32,
    max_denom: u32,
) -> Result<bool, GradedError> {
    let modulus = cyclotomic_modulus(order)?;
    for g in claimed {
        let w = ring.weight_of(g)?;
        if w % modulus != 0 {
            return Err(GradedError::NotInvariant(ring.render(g)));
        }
        if let Some(map) = extra {
            if !is_invariant(ring, map, g) {
                return Err(GradedError::NotInvariant(ring.render(g)));
            }
        }
    }
    if !ring.unit_weight.is_multiple_of(modulus) {
        return Err(GradedError::NotInvariant(ring.render(&ring.unit)));
    }
    let id_map;
    let w_map = match extra {
        Some(m) => m,
        None => {
            id_map = AlgebraMap::identity(ring);
            &id_map
        }
    };
    for m in 0..=max_denom {
        for k in (0..=max_weight).step_by(2) {
            if !piece_matches(ring, w_map, claimed, k, m, |kk| kk % modulus == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every polynomial has coefficient denominators coprime to p.
pub fn p_integrality(basis: &[Poly], p: u64) -> bool {
    basis.iter().all(|b| b.denominators_coprime_to(p))
}

/// The self-map with the level-2 images q2 ↦ −2q2, q4 ↦ q2² − 4q4.
pub fn tstar_level2(ring: &GradedRing) -> AlgebraMap {
    let q2 = ring.var(0);
    let q4 = ring.var(1);
    AlgebraMap::new(ring, vec![q2.scale(&rat(-2)), &q2.pow(2) - &q4.scale(&rat(4))])
        .expect("level-2 self-map is degree preserving")
}

/// The self-map with the level-3 images a1² ↦ −3a1²,
/// a1a3 ↦ ⅓(a1²)² − 9a1a3, a3² ↦ −(1/27)(a1²)³ + 2a1²·a1a3 − 27a3².
pub fn tstar_level3(ring: &GradedRing) -> AlgebraMap {
    let u = ring.var(0);
    let v = ring.var(1);
    let w = ring.var(2);
    let img_v = &u.pow(2).scale(&ratio(1, 3)) - &v.scale(&rat(9));
    let img_w = &(&(&u * &v).scale(&rat(2)) - &u.pow(3).scale(&ratio(1, 27))) - &w.scale(&rat(27));
    AlgebraMap::new(ring, vec![u.scale(&rat(-3)), img_v, img_w])
        .expect("level-3 self-map is degree preserving")
}

/// The level-1 involution c4 ↦ c4, c6 ↦ −c6.
pub fn level1_negate_c6(ring: &GradedRing) -> AlgebraMap {
    AlgebraMap::new(ring, vec![ring.var(0), ring.var(1).scale(&rat(-1))])
        .expect("negating c6 preserves weights")
}
