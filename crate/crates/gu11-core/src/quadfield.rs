//! Exact arithmetic in F = Q(√−N): field elements, fractional ideals in
//! canonical Hermite form, trace duals, the different, prime splitting, and
//! the class group via reduced binary quadratic forms.

use alloc::{format, string::String, vec, vec::Vec};
use core::fmt;
use num::{Integer, One, Signed, Zero};

use crate::arith::{int, is_prime, is_squarefree, prime_divisors, rat, ratio, Int, Rat};
use crate::linalg::{Lattice, QMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadFieldError {
    NotSquarefree(u64),
    NotPrime(u64),
    ZeroIdeal,
    NotAnIdeal,
    NoSuchClass(usize),
    NotSplit { n: u64, p: u64 },
    SearchExhausted { n: u64, p: u64, radius: i64 },
}

impl fmt::Display for QuadFieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadFieldError::NotSquarefree(n) => write!(f, "{n} is not squarefree"),
            QuadFieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            QuadFieldError::ZeroIdeal => write!(f, "zero ideal rejected"),
            QuadFieldError::NotAnIdeal => write!(f, "lattice is not stable under the ring of integers"),
            QuadFieldError::NoSuchClass(i) => write!(f, "class index {i} out of range"),
            QuadFieldError::NotSplit { n, p } => write!(f, "{p} is not split in Q(sqrt(-{n}))"),
            QuadFieldError::SearchExhausted { n, p, radius } => write!(
                f,
                "representative search for N={n}, p={p} exhausted its multiplier box (radius {radius})"
            ),
        }
    }
}

/// The imaginary quadratic field F = Q(√−N) for squarefree N ≥ 1, with
/// δ² = −N and discriminant −N (when −N ≡ 1 mod 4) or −4N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadField {
    n: u64,
}

/// a + bδ with δ² = −N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    pub a: Rat,
    pub b: Rat,
}

impl FieldElement {
    pub fn new(a: Rat, b: Rat) -> Self {
        FieldElement { a, b }
    }

    pub fn from_int(a: i64) -> Self {
        FieldElement::new(rat(a), Rat::zero())
    }

    pub fn zero() -> Self {
        FieldElement::from_int(0)
    }

    pub fn one() -> Self {
        FieldElement::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        FieldElement::new(self.a.clone(), -self.b.clone())
    }

    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    pub fn add(&self, o: &Self) -> Self {
        FieldElement::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        FieldElement::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> Self {
        FieldElement::new(-self.a.clone(), -self.b.clone())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        FieldElement::new(&self.a * s, &self.b * s)
    }

    fn coords(&self) -> Vec<Rat> {
        vec![self.a.clone(), self.b.clone()]
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}d", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Splitting::Split => write!(f, "split"),
            Splitting::Inert => write!(f, "inert"),
            Splitting::Ramified => write!(f, "ramified"),
        }
    }
}

impl QuadField {
    pub fn new(n: u64) -> Result<Self, QuadFieldError> {
        if !is_squarefree(n) {
            return Err(QuadFieldError::NotSquarefree(n));
        }
        Ok(QuadField { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// −N when −N ≡ 1 mod 4 (that is, N ≡ 3 mod 4), else −4N.
    pub fn disc(&self) -> Int {
        if self.n % 4 == 3 {
            -Int::from(self.n)
        } else {
            Int::from(4u64) * -Int::from(self.n)
        }
    }

    /// Number of primes dividing the discriminant.
    pub fn ramified_prime_count(&self) -> u32 {
        let d: u64 = self.disc().abs().try_into().expect("small discriminant");
        prime_divisors(d).len() as u32
    }

    pub fn delta(&self) -> FieldElement {
        FieldElement::new(Rat::zero(), Rat::one())
    }

    /// Second integral basis element: δ, or (1+δ)/2 when N ≡ 3 mod 4.
    pub fn omega(&self) -> FieldElement {
        if self.n % 4 == 3 {
            FieldElement::new(ratio(1, 2), ratio(1, 2))
        } else {
            self.delta()
        }
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        // (a1 + b1 δ)(a2 + b2 δ) = a1 a2 − N b1 b2 + (a1 b2 + a2 b1) δ
        let n = rat(self.n as i64);
        FieldElement::new(
            &(&x.a * &y.a) - &(&(&x.b * &y.b) * &n),
            &(&x.a * &y.b) + &(&x.b * &y.a),
        )
    }

    pub fn norm(&self, x: &FieldElement) -> Rat {
        &(&x.a * &x.a) + &(&(&x.b * &x.b) * &rat(self.n as i64))
    }

    pub fn inv(&self, x: &FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            return None;
        }
        let n = self.norm(x);
        Some(x.conj().scale(&(Rat::one() / n)))
    }

    /// True when x lies in the ring of integers Z + Z·omega.
    pub fn is_integral(&self, x: &FieldElement) -> bool {
        if self.n % 4 == 3 {
            let two_a = &x.a + &x.a;
            let two_b = &x.b + &x.b;
            if !two_a.is_integer() || !two_b.is_integer() {
                return false;
            }
            ((two_a - two_b) / rat(2)).is_integer()
        } else {
            x.a.is_integer() && x.b.is_integer()
        }
    }

    /// Element with integral coordinates i + j·omega.
    pub fn integral_element(&self, i: i64, j: i64) -> FieldElement {
        FieldElement::from_int(i).add(&self.omega().scale(&rat(j)))
    }
}

/// Splitting of p in the quadratic field of squarefree kernel d (d ≠ 0, 1;
/// the fundamental discriminant is d or 4d). Split iff the discriminant is a
/// nonzero square mod p; for p = 2, split iff disc ≡ 1 mod 8.
pub fn quadratic_splitting(d: i64, p: u64) -> Result<Splitting, QuadFieldError> {
    if !is_prime(p) {
        return Err(QuadFieldError::NotPrime(p));
    }
    let disc: Int = if d.rem_euclid(4) == 1 {
        int(d)
    } else {
        int(4 * d)
    };
    if (&disc % int(p as i64)).is_zero() {
        return Ok(Splitting::Ramified);
    }
    if p == 2 {
        let r = disc.mod_floor(&int(8));
        return Ok(if r == int(1) {
            Splitting::Split
        } else {
            Splitting::Inert
        });
    }
    Ok(match crate::arith::legendre(&disc, p) {
        1 => Splitting::Split,
        _ => Splitting::Inert,
    })
}

pub fn split_prime(k: &QuadField, p: u64) -> Result<Splitting, QuadFieldError> {
    quadratic_splitting(-(k.n() as i64), p)
}

/// A nonzero fractional ideal of F, stored as a canonical rank-2 lattice in
/// coordinates (1, δ). Equality is representation equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracIdeal {
    lat: Lattice,
}

impl FracIdeal {
    /// Wrap a lattice, verifying stability under multiplication by omega.
    pub fn from_lattice(k: &QuadField, lat: Lattice) -> Result<Self, QuadFieldError> {
        assert_eq!(lat.dim(), 2, "field lattices have rank 2");
        let omega = k.omega();
        for row in lat.rational_rows() {
            let e = FieldElement::new(row[0].clone(), row[1].clone());
            if !lat.contains(&k.mul(&omega, &e).coords()) {
                return Err(QuadFieldError::NotAnIdeal);
            }
        }
        Ok(FracIdeal { lat })
    }

    /// Ideal generated by the given elements as an O_F-module.
    pub fn from_elements(k: &QuadField, gens: &[FieldElement]) -> Result<Self, QuadFieldError> {
        let omega = k.omega();
        let mut rows = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            rows.push(g.coords());
            rows.push(k.mul(&omega, g).coords());
        }
        if rows.is_empty() {
            return Err(QuadFieldError::ZeroIdeal);
        }
        let lat = Lattice::from_generators(&rows).ok_or(QuadFieldError::ZeroIdeal)?;
        Ok(FracIdeal { lat })
    }

    pub fn principal(k: &QuadField, x: &FieldElement) -> Result<Self, QuadFieldError> {
        Self::from_elements(k, core::slice::from_ref(x))
    }

    pub fn ring_of_integers(k: &QuadField) -> Self {
        Self::from_elements(k, &[FieldElement::one()]).expect("O_F is a nonzero ideal")
    }

    pub fn basis_elements(&self) -> [FieldElement; 2] {
        let rows = self.lat.rational_rows();
        [
            FieldElement::new(rows[0][0].clone(), rows[0][1].clone()),
            FieldElement::new(rows[1][0].clone(), rows[1][1].clone()),
        ]
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lat
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.lat.contains(&x.coords())
    }

    pub fn is_sub_ideal_of(&self, other: &FracIdeal) -> bool {
        self.lat.is_sublattice_of(&other.lat)
    }

    pub fn is_integral(&self, k: &QuadField) -> bool {
        self.is_sub_ideal_of(&FracIdeal::ring_of_integers(k))
    }

    pub fn mul(&self, k: &QuadField, other: &FracIdeal) -> FracIdeal {
        let a = self.basis_elements();
        let b = other.basis_elements();
        let mut rows = Vec::new();
        for x in &a {
            for y in &b {
                rows.push(k.mul(x, y).coords());
            }
        }
        FracIdeal {
            lat: Lattice::from_generators(&rows).expect("product of nonzero ideals is nonzero"),
        }
    }

    pub fn scale(&self, s: &Rat) -> FracIdeal {
        assert!(!s.is_zero(), "scaling an ideal by zero");
        let rows: Vec<Vec<Rat>> = self
            .lat
            .rational_rows()
            .iter()
            .map(|r| r.iter().map(|x| x * s).collect())
            .collect();
        FracIdeal {
            lat: Lattice::from_generators(&rows).expect("scaled ideal stays full rank"),
        }
    }

    /// Multiply by a field element (a principal ideal).
    pub fn mul_element(&self, k: &QuadField, x: &FieldElement) -> FracIdeal {
        assert!(!x.is_zero(), "multiplying an ideal by zero");
        let rows: Vec<Vec<Rat>> = self
            .basis_elements()
            .iter()
            .map(|e| k.mul(e, x).coords())
            .collect();
        FracIdeal {
            lat: Lattice::from_generators(&rows).expect("element multiple stays full rank"),
        }
    }

    pub fn conj(&self) -> FracIdeal {
        let rows: Vec<Vec<Rat>> = self
            .basis_elements()
            .iter()
            .map(|e| e.conj().coords())
            .collect();
        FracIdeal {
            lat: Lattice::from_generators(&rows).expect("conjugate stays full rank"),
        }
    }

    /// Ideal norm: covolume relative to the ring of integers.
    pub fn norm(&self, k: &QuadField) -> Rat {
        self.lat.covolume() / FracIdeal::ring_of_integers(k).lat.covolume()
    }

    /// I⁻¹ = conj(I) / Norm(I).
    pub fn inverse(&self, k: &QuadField) -> FracIdeal {
        self.conj().scale(&(Rat::one() / self.norm(k)))
    }

    pub fn sum(&self, other: &FracIdeal) -> FracIdeal {
        FracIdeal {
            lat: self.lat.sum(&other.lat),
        }
    }

    pub fn describe(&self) -> String {
        format!("{}", self.lat)
    }
}

/// Trace dual I^∨ = {z : Tr(z·w̄) ∈ Z for all w ∈ I}. The pairing Gram
/// matrix in coordinates (1, δ) is diag(2, 2N).
pub fn trace_dual(k: &QuadField, ideal: &FracIdeal) -> FracIdeal {
    let g = QMat::from_rows(vec![
        vec![rat(2), Rat::zero()],
        vec![Rat::zero(), rat(2 * k.n() as i64)],
    ]);
    let b = ideal.lattice().basis_matrix();
    let m = g.mul(&b.transpose());
    let dual = m.inverse().expect("nonzero ideal has invertible Gram");
    let rows: Vec<Vec<Rat>> = (0..2).map(|i| dual.row(i).to_vec()).collect();
    let lat = Lattice::from_generators(&rows).expect("dual lattice is full rank");
    FracIdeal::from_lattice(k, lat).expect("trace dual of an ideal is an ideal")
}

/// The different 𝔡 = (O_F^∨)⁻¹; its norm is |disc|.
pub fn different(k: &QuadField) -> FracIdeal {
    trace_dual(k, &FracIdeal::ring_of_integers(k)).inverse(k)
}

/// Primitive integral binary quadratic form ax² + bxy + cy² of negative
/// discriminant b² − 4ac.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

impl QuadForm {
    pub fn disc(&self) -> Int {
        &(&self.b * &self.b) - &(int(4) * &self.a * &self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    pub fn is_reduced(&self) -> bool {
        let babs = self.b.abs();
        babs <= self.a
            && self.a <= self.c
            && !(self.b.is_negative() && (babs == self.a || self.a == self.c))
    }

    /// Conjugation-fixed reduced forms: b = 0, a = b, or a = c.
    pub fn is_ambiguous(&self) -> bool {
        debug_assert!(self.is_reduced());
        self.b.is_zero() || self.a == self.b || self.a == self.c
    }

    /// Gauss reduction to the unique reduced representative of the class.
    pub fn reduce(&self) -> QuadForm {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut c = self.c.clone();
        assert!(a.is_positive() && self.disc().is_negative());
        loop {
            if a > c {
                core::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if b.abs() > a {
                // Translate b into (−a, a].
                let q = (&b - &a).div_ceil(&(&a + &a));
                let new_c = &(&(&a * &q) * &q) - &(&b * &q) + c;
                b = &b - &(&q * &(&a + &a));
                c = new_c;
                continue;
            }
            break;
        }
        if b.is_negative() && (b.abs() == a || a == c) {
            b = -b;
        }
        let out = QuadForm { a, b, c };
        debug_assert!(out.is_reduced());
        debug_assert_eq!(out.disc(), self.disc());
        out
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// The class group data of F: one ideal representative per class, obtained
/// from the reduced primitive forms of the field discriminant.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub h: u64,
    pub forms: Vec<QuadForm>,
    pub representatives: Vec<FracIdeal>,
    pub ambiguous: u64,
    /// Number of primes dividing the discriminant.
    pub u: u32,
}

/// Enumerate the reduced primitive positive definite forms of discriminant
/// disc(F) and convert each to an ideal representative.
pub fn class_group(k: &QuadField) -> ClassGroup {
    let disc = k.disc();
    let abs_d = disc.abs();
    let forms = reduced_forms(&disc);
    let representatives: Vec<FracIdeal> = forms.iter().map(|f| form_to_ideal(k, f)).collect();
    let ambiguous = forms.iter().filter(|f| f.is_ambiguous()).count() as u64;
    let u = prime_divisors(abs_d.try_into().expect("small discriminant")).len() as u32;
    assert_eq!(
        ambiguous,
        1u64 << (u - 1),
        "ambiguous reduced form count must be 2^(u-1)"
    );
    ClassGroup {
        h: forms.len() as u64,
        forms,
        representatives,
        ambiguous,
        u,
    }
}

fn reduced_forms(disc: &Int) -> Vec<QuadForm> {
    assert!(disc.is_negative());
    let abs_d: i64 = disc.abs().try_into().expect("small discriminant");
    let mut out = Vec::new();
    let mut b: i64 = if abs_d % 2 == 0 { 0 } else { 1 };
    while b * b <= abs_d / 3 {
        let m4 = b * b + abs_d;
        debug_assert_eq!(m4 % 4, 0);
        let m = m4 / 4;
        let mut a = if b > 1 { b } else { 1 };
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                let f = QuadForm {
                    a: int(a),
                    b: int(b),
                    c: int(c),
                };
                if f.is_primitive() && f.is_reduced() {
                    out.push(f.clone());
                    if b != 0 && b != a && a != c {
                        out.push(QuadForm {
                            a: int(a),
                            b: int(-b),
                            c: int(c),
                        });
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort();
    out
}

/// Ideal Z·a + Z·((−b + √disc)/2) attached to a form of the field
/// discriminant; √disc = 2δ for even discriminant and δ for odd.
fn form_to_ideal(k: &QuadField, f: &QuadForm) -> FracIdeal {
    let a = Rat::from_integer(f.a.clone());
    let half_b = Rat::from_integer(f.b.clone()) / rat(2);
    let rows = if k.disc().is_even() {
        vec![vec![a, Rat::zero()], vec![-half_b, Rat::one()]]
    } else {
        vec![vec![a, Rat::zero()], vec![-half_b, ratio(1, 2)]]
    };
    let lat = Lattice::from_generators(&rows).expect("form lattice is full rank");
    FracIdeal::from_lattice(k, lat).expect("form lattice is an ideal")
}

/// The reduced form of the class of I: orient the basis (α, β) so that the
/// δ-part of ᾱβ is positive, then reduce (N(α), Tr(αβ̄), N(β))/N(I).
pub fn class_of(k: &QuadField, ideal: &FracIdeal) -> QuadForm {
    let [mut alpha, mut beta] = ideal.basis_elements();
    if k.mul(&alpha.conj(), &beta).b.is_negative() {
        core::mem::swap(&mut alpha, &mut beta);
    }
    let n_i = ideal.norm(k);
    let a = k.norm(&alpha) / &n_i;
    let b = -(k.mul(&alpha, &beta.conj()).trace() / &n_i);
    let c = k.norm(&beta) / &n_i;
    assert!(a.is_integer() && b.is_integer() && c.is_integer());
    let f = QuadForm {
        a: a.to_integer(),
        b: b.to_integer(),
        c: c.to_integer(),
    };
    debug_assert_eq!(f.disc(), k.disc());
    f.reduce()
}

/// True when the localizations of I at the primes over p equal the local
/// ring of integers: both [I+O : O] and [I+O : I] are coprime to p.
pub fn p_locally_trivial(k: &QuadField, ideal: &FracIdeal, p: u64) -> bool {
    let o = FracIdeal::ring_of_integers(k);
    let s = ideal.sum(&o);
    let i1 = o.lattice().index_in(s.lattice());
    let i2 = ideal.lattice().index_in(s.lattice());
    let p = int(p as i64);
    !(&i1 % &p).is_zero() && !(&i2 % &p).is_zero()
}

/// Representative of a class suitable for the duality construction.
#[derive(Clone, Debug)]
pub struct LemmaRepresentative {
    pub ideal: FracIdeal,
    /// Multiplier a with ideal = a·(form representative).
    pub multiplier: FieldElement,
    /// Always true: the containment in the trace dual is strict.
    pub strict: bool,
}

/// Find I in the given class with I ⊆ I^∨, the localizations of I and I^∨
/// at p trivial, and p-unit norm. Searches multiples a·I₀ over a growing
/// coordinate box, failing at radius 10·N.
pub fn lemma_representative(
    k: &QuadField,
    class_index: usize,
    p: u64,
) -> Result<LemmaRepresentative, QuadFieldError> {
    if split_prime(k, p)? != Splitting::Split {
        return Err(QuadFieldError::NotSplit { n: k.n(), p });
    }
    let cg = class_group(k);
    let base = cg
        .representatives
        .get(class_index)
        .ok_or(QuadFieldError::NoSuchClass(class_index))?;
    let cap = 10 * k.n() as i64;
    let mut radius = 1i64;
    while radius <= cap {
        for i in -radius..=radius {
            for j in -radius..=radius {
                if i.abs().max(j.abs()) != radius && radius > 1 {
                    continue; // only the new shell
                }
                if i == 0 && j == 0 {
                    continue;
                }
                let a = k.integral_element(i, j);
                let cand = base.mul_element(k, &a);
                let dual = trace_dual(k, &cand);
                if !cand.is_sub_ideal_of(&dual) {
                    continue;
                }
                if !crate::arith::is_p_unit(&cand.norm(k), p) {
                    continue;
                }
                if !p_locally_trivial(k, &cand, p) || !p_locally_trivial(k, &dual, p) {
                    continue;
                }
                let strict = cand != dual;
                assert!(strict, "the different is never trivial");
                return Ok(LemmaRepresentative {
                    ideal: cand,
                    multiplier: a,
                    strict,
                });
            }
        }
        radius += 1;
    }
    Err(QuadFieldError::SearchExhausted {
        n: k.n(),
        p,
        radius: cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: u64) -> QuadField {
        QuadField::new(n).unwrap()
    }

    fn elem(_k: &QuadField, a: i64, b: i64) -> FieldElement {
        FieldElement::new(rat(a), rat(b))
    }

    #[test]
    fn field_basics() {
        let f = k(2);
        assert_eq!(f.disc(), int(-8));
        assert_eq!(k(3).disc(), int(-3));
        assert_eq!(k(1).disc(), int(-4));
        let x = elem(&f, 1, 1);
        assert_eq!(f.norm(&x), rat(3));
        assert_eq!(x.trace(), rat(2));
        let inv = f.inv(&x).unwrap();
        assert_eq!(f.mul(&x, &inv), FieldElement::one());
        // conj is a ring homomorphism
        let y = elem(&f, 2, -3);
        assert_eq!(f.mul(&x, &y).conj(), f.mul(&x.conj(), &y.conj()));
    }

    #[test]
    fn integrality() {
        let f3 = k(3);
        assert!(f3.is_integral(&FieldElement::new(ratio(1, 2), ratio(1, 2))));
        assert!(!f3.is_integral(&FieldElement::new(ratio(1, 2), Rat::zero())));
        assert!(f3.is_integral(&elem(&f3, 2, 1)));
        let f2 = k(2);
        assert!(f2.is_integral(&elem(&f2, 2, 1)));
        assert!(!f2.is_integral(&FieldElement::new(ratio(1, 2), ratio(1, 2))));
    }

    #[test]
    fn rejects_non_squarefree() {
        assert!(QuadField::new(12).is_err());
        assert!(QuadField::new(0).is_err());
    }

    #[test]
    fn splitting_examples() {
        // 5 = (2+δ)(2−δ) in Z[i]
        assert_eq!(split_prime(&k(1), 5).unwrap(), Splitting::Split);
        // x² ≡ −1 mod 3 has no solution
        assert_eq!(split_prime(&k(1), 3).unwrap(), Splitting::Inert);
        assert_eq!(split_prime(&k(5), 5).unwrap(), Splitting::Ramified);
        assert_eq!(split_prime(&k(7), 2).unwrap(), Splitting::Split);
        assert_eq!(split_prime(&k(5), 2).unwrap(), Splitting::Ramified);
        assert_eq!(split_prime(&k(3), 2).unwrap(), Splitting::Inert);
        assert!(split_prime(&k(3), 15).is_err());
    }

    /// Brute-force splitting oracle: count solutions of x² ≡ −N mod p.
    #[test]
    fn splitting_oracle() {
        for n in [1u64, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15].into_iter().filter(|&n| is_squarefree(n)) {
            let f = k(n);
            for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
                if p as i64 % 2 == 0 {
                    continue;
                }
                let sols = (0..p).filter(|x| (x * x + n) % p == 0).count();
                let expected = match sols {
                    0 => Splitting::Inert,
                    1 => Splitting::Ramified,
                    2 => Splitting::Split,
                    _ => unreachable!(),
                };
                assert_eq!(split_prime(&f, p).unwrap(), expected, "N={n}, p={p}");
            }
        }
    }

    #[test]
    fn ideal_canonical_equality() {
        let f = k(5);
        let i1 = FracIdeal::from_elements(&f, &[elem(&f, 2, 0), elem(&f, 1, 1)]).unwrap();
        let i2 = FracIdeal::from_elements(&f, &[elem(&f, 1, 1), elem(&f, 2, 0), elem(&f, 3, 1)]).unwrap();
        assert_eq!(i1, i2);
        assert_eq!(i1.norm(&f), rat(2));
    }

    #[test]
    fn principal_ideal_norm_is_element_norm() {
        let f = k(7);
        let x = FieldElement::new(ratio(3, 2), ratio(1, 2));
        assert!(f.is_integral(&x));
        let i = FracIdeal::principal(&f, &x).unwrap();
        assert_eq!(i.norm(&f), f.norm(&x));
    }

    #[test]
    fn ideal_inverse_multiplies_to_ring() {
        for n in [1u64, 2, 3, 5, 6, 10, 13] {
            let f = k(n);
            let o = FracIdeal::ring_of_integers(&f);
            for gens in [
                vec![elem(&f, 2, 0), elem(&f, 1, 1)],
                vec![elem(&f, 3, 1)],
                vec![elem(&f, 5, 0), elem(&f, 2, 1)],
            ] {
                let i = FracIdeal::from_elements(&f, &gens).unwrap();
                assert_eq!(i.mul(&f, &i.inverse(&f)), o, "N={n}");
            }
        }
    }

    /// Independent trace-dual oracle: the defining integrality property plus
    /// the covolume forced by maximality.
    fn check_trace_dual(f: &QuadField, i: &FracIdeal) {
        let d = trace_dual(f, i);
        for x in d.basis_elements().iter() {
            for w in i.basis_elements().iter() {
                assert!(f.mul(x, &w.conj()).trace().is_integer());
            }
        }
        // Norm(I^∨) = 1/(|disc|·Norm(I)) pins maximality.
        let expected = Rat::one() / (Rat::from_integer(f.disc().abs()) * i.norm(f));
        assert_eq!(d.norm(f), expected);
        // Double dual.
        assert_eq!(trace_dual(f, &d), *i);
    }

    #[test]
    fn trace_dual_oracle() {
        for n in [1u64, 2, 3, 5, 7, 11] {
            let f = k(n);
            check_trace_dual(&f, &FracIdeal::ring_of_integers(&f));
            let i = FracIdeal::from_elements(&f, &[elem(&f, 3, 0), elem(&f, 1, 1)]).unwrap();
            check_trace_dual(&f, &i);
        }
    }

    #[test]
    fn trace_dual_of_ring_is_inverse_different() {
        let f = k(2);
        let d = different(&f);
        assert_eq!(
            trace_dual(&f, &FracIdeal::ring_of_integers(&f)),
            d.inverse(&f)
        );
    }

    #[test]
    fn different_frozen_values() {
        // N=1: (2δ), norm 4; N=2: (2δ), norm 8; N=3: (δ), norm 3.
        let f1 = k(1);
        assert_eq!(
            different(&f1),
            FracIdeal::principal(&f1, &elem(&f1, 0, 2)).unwrap()
        );
        assert_eq!(different(&f1).norm(&f1), rat(4));
        let f2 = k(2);
        assert_eq!(
            different(&f2),
            FracIdeal::principal(&f2, &elem(&f2, 0, 2)).unwrap()
        );
        assert_eq!(different(&f2).norm(&f2), rat(8));
        let f3 = k(3);
        assert_eq!(
            different(&f3),
            FracIdeal::principal(&f3, &elem(&f3, 0, 1)).unwrap()
        );
        assert_eq!(different(&f3).norm(&f3), rat(3));
    }

    #[test]
    fn different_norm_is_abs_disc() {
        for n in 1..=50u64 {
            if !is_squarefree(n) {
                continue;
            }
            let f = k(n);
            assert_eq!(
                different(&f).norm(&f),
                Rat::from_integer(f.disc().abs()),
                "N={n}"
            );
        }
    }

    #[test]
    fn dual_scaling_law() {
        // (aI)^∨ = conj(a)^{-1} I^∨
        let f = k(2);
        let i = FracIdeal::from_elements(&f, &[elem(&f, 3, 0), elem(&f, 1, 1)]).unwrap();
        let a = elem(&f, 1, 1);
        let lhs = trace_dual(&f, &i.mul_element(&f, &a));
        let rhs = trace_dual(&f, &i).mul_element(&f, &f.inv(&a.conj()).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn form_reduction() {
        let f = QuadForm {
            a: int(3),
            b: int(10),
            c: int(10),
        };
        assert_eq!(
            f.reduce(),
            QuadForm {
                a: int(2),
                b: int(2),
                c: int(3)
            }
        );
    }

    #[test]
    fn class_numbers_frozen() {
        // Classical class numbers of Q(√−N).
        let table: &[(u64, u64)] = &[
            (1, 1),
            (2, 1),
            (3, 1),
            (5, 2),
            (6, 2),
            (7, 1),
            (10, 2),
            (11, 1),
            (13, 2),
            (14, 4),
            (15, 2),
            (17, 4),
            (19, 1),
            (21, 4),
            (22, 2),
            (23, 3),
            (26, 6),
            (29, 6),
            (30, 4),
            (31, 3),
            (33, 4),
            (34, 4),
            (35, 2),
            (37, 2),
            (38, 6),
            (39, 4),
            (41, 8),
            (42, 4),
            (43, 1),
            (46, 4),
            (47, 5),
        ];
        for &(n, h) in table {
            assert_eq!(class_group(&k(n)).h, h, "N={n}");
        }
    }

    #[test]
    fn class_group_n5() {
        let cg = class_group(&k(5));
        assert_eq!(cg.h, 2);
        assert_eq!(cg.u, 2);
        assert_eq!(cg.ambiguous, 2);
        assert_eq!(
            cg.forms,
            vec![
                QuadForm {
                    a: int(1),
                    b: int(0),
                    c: int(5)
                },
                QuadForm {
                    a: int(2),
                    b: int(2),
                    c: int(3)
                },
            ]
        );
    }

    #[test]
    fn class_of_representatives_is_identity() {
        for n in [1u64, 5, 6, 14, 23, 26] {
            let f = k(n);
            let cg = class_group(&f);
            for (form, rep) in cg.forms.iter().zip(&cg.representatives) {
                assert_eq!(&class_of(&f, rep), form, "N={n}");
            }
        }
    }

    #[test]
    fn class_of_is_scale_invariant() {
        let f = k(5);
        let cg = class_group(&f);
        let rep = &cg.representatives[1];
        let scaled = rep.mul_element(&f, &elem(&f, 2, 1));
        assert_eq!(class_of(&f, &scaled), cg.forms[1]);
        assert_eq!(class_of(&f, &rep.scale(&ratio(3, 7))), cg.forms[1]);
    }

    /// Independent class-count oracle: enumerate integral ideals of bounded
    /// norm and group them by principality of quotients.
    #[test]
    fn class_count_oracle() {
        for n in [1u64, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15] {
            let f = k(n);
            // Minkowski bound (2/π)√|disc|, generously rounded up.
            let abs_disc: i64 = f.disc().abs().try_into().unwrap();
            let bound = (2.0 / core::f64::consts::PI * (abs_disc as f64).sqrt()).ceil() as i64 + 1;
            let mut classes: Vec<FracIdeal> = Vec::new();
            for norm in 1..=bound {
                for ideal in integral_ideals_of_norm(&f, norm) {
                    if classes
                        .iter()
                        .all(|c| class_of(&f, c) != class_of(&f, &ideal))
                    {
                        classes.push(ideal);
                    }
                }
            }
            assert_eq!(classes.len() as u64, class_group(&f).h, "N={n}");
        }
    }

    /// All integral ideals of a given norm, by enumerating HNF candidates.
    fn integral_ideals_of_norm(f: &QuadField, norm: i64) -> Vec<FracIdeal> {
        let o = FracIdeal::ring_of_integers(f);
        let covol = o.lattice().covolume();
        let mut out = Vec::new();
        // Sublattices of O_F of index `norm`: rows a·e1, (t·e1 + d·e2) over
        // the integral basis (1, ω), with a·d = norm, 0 ≤ t < a.
        for a in 1..=norm {
            if norm % a != 0 {
                continue;
            }
            let d = norm / a;
            for t in 0..a {
                let one = FieldElement::one().scale(&rat(a));
                let second = FieldElement::one()
                    .scale(&rat(t))
                    .add(&f.omega().scale(&rat(d)));
                let rows = vec![
                    vec![one.a.clone(), one.b.clone()],
                    vec![second.a.clone(), second.b.clone()],
                ];
                let lat = Lattice::from_generators(&rows).unwrap();
                if (lat.covolume() / &covol) != rat(norm) {
                    continue;
                }
                if let Ok(ideal) = FracIdeal::from_lattice(f, lat) {
                    if !out.contains(&ideal) {
                        out.push(ideal);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn classes_closed_under_conjugation() {
        for n in [5u64, 6, 10, 13, 14, 23] {
            let f = k(n);
            let cg = class_group(&f);
            for rep in &cg.representatives {
                let cf = class_of(&f, &rep.conj());
                assert!(cg.forms.contains(&cf), "N={n}");
            }
        }
    }

    #[test]
    fn lemma_representative_examples() {
        // N=5, principal class, p=3
        let f = k(5);
        let r = lemma_representative(&f, 0, 3).unwrap();
        let dual = trace_dual(&f, &r.ideal);
        assert!(r.ideal.is_sub_ideal_of(&dual));
        assert!(r.strict);
        assert!(p_locally_trivial(&f, &r.ideal, 3));
        assert!(class_of(&f, &r.ideal) == class_group(&f).forms[0]);
        // N=5, nonprincipal class
        let r = lemma_representative(&f, 1, 3).unwrap();
        assert!(class_of(&f, &r.ideal) == class_group(&f).forms[1]);
        assert!(r.ideal.is_sub_ideal_of(&trace_dual(&f, &r.ideal)));
        // N=1, principal class, p=5: strict containment
        let f1 = k(1);
        let r = lemma_representative(&f1, 0, 5).unwrap();
        let dual = trace_dual(&f1, &r.ideal);
        assert!(r.ideal.is_sub_ideal_of(&dual) && r.ideal != dual);
    }

    #[test]
    fn lemma_representative_rejects_bad_inputs() {
        let f = k(5);
        assert!(matches!(
            lemma_representative(&f, 0, 11),
            Err(QuadFieldError::NotSplit { .. })
        ));
        assert!(matches!(
            lemma_representative(&f, 9, 3),
            Err(QuadFieldError::NoSuchClass(9))
        ));
        assert!(matches!(
            lemma_representative(&f, 0, 15),
            Err(QuadFieldError::NotPrime(15))
        ));
    }
}
