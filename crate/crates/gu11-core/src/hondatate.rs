//! p-adic types on small CM fields (Q, imaginary quadratic, biquadratic),
//! their slope/height/dimension/Brauer data, inducedness and minimality
//! testing, and the three-case classification of F-linear abelian surfaces
//! over F̄_p together with its bijection onto elliptic-curve descriptors.

use alloc::{format, string::String, vec, vec::Vec};
use core::fmt;
use num::{One, Signed, Zero};

use crate::arith::{is_prime, is_squarefree, rat, ratio, squarefree_kernel, Rat};
use crate::quadfield::{quadratic_splitting, Splitting};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CMFieldDescriptor {
    Rationals,
    /// Q(√−M), M squarefree positive.
    ImQuad(u64),
    /// The compositum Q(√−N, √−M), N ≠ M both squarefree positive.
    Biquad(u64, u64),
}

impl CMFieldDescriptor {
    pub fn degree(&self) -> u32 {
        match self {
            CMFieldDescriptor::Rationals => 1,
            CMFieldDescriptor::ImQuad(_) => 2,
            CMFieldDescriptor::Biquad(_, _) => 4,
        }
    }

    pub fn is_valid(&self) -> bool {
        match self {
            CMFieldDescriptor::Rationals => true,
            CMFieldDescriptor::ImQuad(m) => is_squarefree(*m),
            CMFieldDescriptor::Biquad(n, m) => n != m && is_squarefree(*n) && is_squarefree(*m),
        }
    }
}

impl fmt::Display for CMFieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CMFieldDescriptor::Rationals => write!(f, "Q"),
            CMFieldDescriptor::ImQuad(m) => write!(f, "Q(sqrt(-{m}))"),
            CMFieldDescriptor::Biquad(n, m) => write!(f, "Q(sqrt(-{n}), sqrt(-{m}))"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HondaTateError {
    NotPrime(u64),
    NotSquarefree(u64),
    NotSplit { d: i64, p: u64 },
    AuxEqualsBase(u64),
    DuplicateAux(u64),
    IncompatibleShape,
}

impl fmt::Display for HondaTateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HondaTateError::NotPrime(p) => write!(f, "{p} is not prime"),
            HondaTateError::NotSquarefree(m) => write!(f, "{m} is not squarefree"),
            HondaTateError::NotSplit { d, p } => {
                write!(f, "{p} is not split in the quadratic field of radicand {d}")
            }
            HondaTateError::AuxEqualsBase(m) => {
                write!(f, "auxiliary field {m} coincides with the base field")
            }
            HondaTateError::DuplicateAux(m) => write!(f, "auxiliary field {m} listed twice"),
            HondaTateError::IncompatibleShape => {
                write!(f, "the subfield shape is not compatible with the type's field")
            }
        }
    }
}

/// One place of the field: ramification index e, residue degree f, and the
/// slope numerator η (the slope is η/e).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub id: usize,
    pub e: u32,
    pub f: u32,
    pub eta: Rat,
}

/// A p-adic type: places with slope data and the conjugation involution on
/// place ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicType {
    pub field: CMFieldDescriptor,
    pub p: u64,
    pub places: Vec<Place>,
    pub conj: Vec<usize>,
}

impl PAdicType {
    pub fn slope(&self, i: usize) -> Rat {
        &self.places[i].eta / rat(self.places[i].e as i64)
    }
}

/// Check every defining relation; violations are returned as data.
pub fn validate_type(t: &PAdicType) -> Vec<String> {
    let mut v = Vec::new();
    if !is_prime(t.p) {
        v.push(format!("p = {} is not prime", t.p));
    }
    if !t.field.is_valid() {
        v.push(format!("field descriptor {} is malformed", t.field));
    }
    if t.conj.len() != t.places.len() {
        v.push(String::from("conj must act on exactly the place ids"));
        return v;
    }
    for (i, &ci) in t.conj.iter().enumerate() {
        if ci >= t.places.len() || t.conj[ci] != i {
            v.push(format!("conj is not an involution at place {i}"));
            return v;
        }
    }
    for (i, pl) in t.places.iter().enumerate() {
        if pl.id != i {
            v.push(format!("place {i} carries mismatched id {}", pl.id));
        }
        let cpl = &t.places[t.conj[i]];
        if pl.e != cpl.e || pl.f != cpl.f {
            v.push(format!("conjugate places {i},{} differ in (e,f)", t.conj[i]));
        }
        if pl.eta.is_negative() {
            v.push(format!("eta at place {i} is negative"));
        }
        let sum = &pl.eta + &cpl.eta;
        if sum != rat(pl.e as i64) {
            v.push(format!(
                "slope relation fails at place {i}: eta + eta_conj = {sum} != e = {}",
                pl.e
            ));
        }
        let slope = t.slope(i);
        if slope < Rat::zero() || slope > Rat::one() {
            v.push(format!("slope {slope} at place {i} outside [0,1]"));
        }
    }
    let total: u32 = t.places.iter().map(|pl| pl.e * pl.f).sum();
    if total != t.field.degree() {
        v.push(format!(
            "sum of e·f = {total} != field degree {}",
            t.field.degree()
        ));
    }
    v
}

/// Intermediate fields that can induce a type: the proper subfields the
/// solver knows how to fiber places over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Intermediate {
    Rationals,
    /// First imaginary quadratic inside the biquad (or the ImQuad field itself).
    QuadN,
    /// Second imaginary quadratic inside the biquad.
    QuadM,
    /// The real quadratic subfield of the biquad.
    RealQuad,
}

/// Fibers of the place set over an intermediate field, with a flag for
/// whether conjugation acts trivially on the subfield's places (real
/// subfield) — in that case an induced η must be constant e/2.
///
/// Canonical orders assumed: biquad places (v, σv, cv, cσv) with conj
/// 0↔2, 1↔3; split quadratic places (u, ū) with conj 0↔1.
fn fibers(shape: CMFieldDescriptor, sub: Intermediate) -> Option<(Vec<Vec<usize>>, bool)> {
    match (shape, sub) {
        (CMFieldDescriptor::Biquad(_, _), Intermediate::Rationals) => {
            Some((vec![vec![0, 1, 2, 3]], true))
        }
        (CMFieldDescriptor::Biquad(_, _), Intermediate::QuadN) => {
            Some((vec![vec![0, 1], vec![2, 3]], false))
        }
        (CMFieldDescriptor::Biquad(_, _), Intermediate::QuadM) => {
            Some((vec![vec![0, 3], vec![1, 2]], false))
        }
        (CMFieldDescriptor::Biquad(_, _), Intermediate::RealQuad) => {
            Some((vec![vec![0, 2], vec![1, 3]], true))
        }
        (CMFieldDescriptor::ImQuad(_), Intermediate::Rationals) => Some((vec![vec![0, 1]], true)),
        _ => None,
    }
}

/// A type is induced from an intermediate field when η is constant on
/// every fiber and the pushed-down type is itself valid; over a real
/// subfield (trivial conjugation) validity forces the constant e/2.
fn is_induced_from(t: &PAdicType, sub: Intermediate) -> bool {
    let Some((fib, real_subfield)) = fibers(t.field, sub) else {
        return false;
    };
    for fiber in &fib {
        let first = &t.places[fiber[0]].eta;
        if fiber.iter().any(|&i| &t.places[i].eta != first) {
            return false;
        }
        if real_subfield {
            // η_x' + η_x' = e_x' downstairs, all e = 1 here.
            if first != &ratio(1, 2) {
                return false;
            }
        }
    }
    // For a CM intermediate, validity of the pushed-down type follows from
    // the slope relation upstairs because conj permutes the fibers.
    true
}

/// True iff the type is not induced from any intermediate field M′ with
/// under ⊆ M′ ⊊ t.field. Only the place structures emitted by the
/// classifier (split-complete biquad, split quadratic, Q) are supported.
pub fn minimality_check(
    t: &PAdicType,
    under: CMFieldDescriptor,
) -> Result<bool, HondaTateError> {
    let candidates: Vec<Intermediate> = match (t.field, under) {
        (CMFieldDescriptor::Biquad(_, _), CMFieldDescriptor::Rationals) => vec![
            Intermediate::Rationals,
            Intermediate::QuadN,
            Intermediate::QuadM,
            Intermediate::RealQuad,
        ],
        (CMFieldDescriptor::Biquad(n, _), CMFieldDescriptor::ImQuad(u)) if u == n => {
            vec![Intermediate::QuadN]
        }
        (CMFieldDescriptor::Biquad(_, m), CMFieldDescriptor::ImQuad(u)) if u == m => {
            vec![Intermediate::QuadM]
        }
        (CMFieldDescriptor::ImQuad(_), CMFieldDescriptor::Rationals) => {
            vec![Intermediate::Rationals]
        }
        (f, u) if f == u => vec![],
        _ => return Err(HondaTateError::IncompatibleShape),
    };
    Ok(candidates.into_iter().all(|c| !is_induced_from(t, c)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// Ordinary elliptic curve with CM by the auxiliary field Q(√−M).
    Case1a { aux_m: u64 },
    /// Supersingular elliptic curve.
    Case1b,
    /// Ordinary elliptic curve with CM by the base field itself.
    Case2,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Case1a { aux_m } => write!(f, "1a(M={aux_m})"),
            CaseTag::Case1b => write!(f, "1b"),
            CaseTag::Case2 => write!(f, "2"),
        }
    }
}

/// Simple classes carry one p-adic type; the non-simple class carries the
/// types of its two ordinary components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeData {
    Simple(PAdicType),
    Composite(Vec<PAdicType>),
}

/// An F-linear isogeny class of abelian surfaces with its slope and
/// division-algebra bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FLinearIsogenyClass {
    pub case_tag: CaseTag,
    pub data: TypeData,
    /// Square root of the endomorphism-algebra degree for simple classes;
    /// for the composite class the value forced by dim = ½·[L:Q]·t.
    pub t: u32,
    pub dim: u32,
    /// (slope, height) pairs of the p-divisible group at the chosen place u.
    pub slopes_at_u: Vec<(Rat, u32)>,
    /// (place id, Brauer invariant mod 1) for the simple type's places.
    pub brauer: Vec<(usize, Rat)>,
}

impl FLinearIsogenyClass {
    /// dim A(u) = Σ slope·height.
    pub fn dim_at_u(&self) -> Rat {
        self.slopes_at_u
            .iter()
            .fold(Rat::zero(), |acc, (s, h)| acc + s * rat(*h as i64))
    }
}

fn require_split(d: i64, p: u64) -> Result<(), HondaTateError> {
    match quadratic_splitting(d, p) {
        Ok(Splitting::Split) => Ok(()),
        Ok(_) => Err(HondaTateError::NotSplit { d, p }),
        Err(_) => Err(HondaTateError::NotPrime(p)),
    }
}

/// The split-quadratic type on Q(√−M) with slope numerators (η_u, η_ū).
fn split_quad_type(m: u64, p: u64, eta_u: Rat, eta_ubar: Rat) -> PAdicType {
    PAdicType {
        field: CMFieldDescriptor::ImQuad(m),
        p,
        places: vec![
            Place { id: 0, e: 1, f: 1, eta: eta_u },
            Place { id: 1, e: 1, f: 1, eta: eta_ubar },
        ],
        conj: vec![1, 0],
    }
}

/// The split-complete biquad type with slope numerators on (v, σv, cv, cσv).
fn biquad_type(n: u64, m: u64, p: u64, etas: [Rat; 4]) -> PAdicType {
    let places = etas
        .into_iter()
        .enumerate()
        .map(|(id, eta)| Place { id, e: 1, f: 1, eta })
        .collect();
    PAdicType {
        field: CMFieldDescriptor::Biquad(n, m),
        p,
        places,
        conj: vec![2, 3, 0, 1],
    }
}

/// Classify the F-linear abelian surfaces over F̄_p for F = Q(√−N):
/// one Case 1a class per auxiliary CM field, the supersingular Case 1b
/// class, and the non-simple Case 2 class.
pub fn classify_surfaces(
    n: u64,
    p: u64,
    aux_fields: &[u64],
) -> Result<Vec<FLinearIsogenyClass>, HondaTateError> {
    if !is_squarefree(n) {
        return Err(HondaTateError::NotSquarefree(n));
    }
    if !is_prime(p) {
        return Err(HondaTateError::NotPrime(p));
    }
    require_split(-(n as i64), p)?;
    for (i, &m) in aux_fields.iter().enumerate() {
        if !is_squarefree(m) {
            return Err(HondaTateError::NotSquarefree(m));
        }
        if m == n {
            return Err(HondaTateError::AuxEqualsBase(m));
        }
        if aux_fields[..i].contains(&m) {
            return Err(HondaTateError::DuplicateAux(m));
        }
        require_split(-(m as i64), p)?;
        // Split in both quadratics forces split in the real quadratic
        // subfield (product of the two characters), hence split complete.
        let real_d = squarefree_kernel(n * m);
        assert_eq!(
            quadratic_splitting(real_d as i64, p),
            Ok(Splitting::Split),
            "character product must split the real subfield"
        );
    }

    let mut out = Vec::new();
    for &m in aux_fields {
        let t = biquad_type(n, m, p, [rat(1), rat(0), rat(0), rat(1)]);
        assert!(validate_type(&t).is_empty());
        assert!(minimality_check(&t, CMFieldDescriptor::ImQuad(n)).unwrap());
        assert!(!minimality_check(&t, CMFieldDescriptor::Rationals).unwrap());
        let class = FLinearIsogenyClass {
            case_tag: CaseTag::Case1a { aux_m: m },
            data: TypeData::Simple(t),
            t: 1,
            dim: 2,
            slopes_at_u: vec![(rat(0), 1), (rat(1), 1)],
            brauer: vec![(0, rat(0)), (1, rat(0)), (2, rat(0)), (3, rat(0))],
        };
        assert_eq!(class.dim_at_u(), Rat::one());
        out.push(class);
    }

    let t1b = split_quad_type(n, p, ratio(1, 2), ratio(1, 2));
    assert!(validate_type(&t1b).is_empty());
    assert!(!minimality_check(&t1b, CMFieldDescriptor::Rationals).unwrap());
    let class1b = FLinearIsogenyClass {
        case_tag: CaseTag::Case1b,
        data: TypeData::Simple(t1b),
        t: 2,
        dim: 2,
        slopes_at_u: vec![(ratio(1, 2), 2)],
        brauer: vec![(0, ratio(1, 2)), (1, ratio(1, 2))],
    };
    assert_eq!(class1b.dim_at_u(), Rat::one());
    out.push(class1b);

    let comp1 = split_quad_type(n, p, rat(1), rat(0));
    let comp2 = split_quad_type(n, p, rat(0), rat(1));
    assert!(validate_type(&comp1).is_empty());
    assert!(validate_type(&comp2).is_empty());
    let class2 = FLinearIsogenyClass {
        case_tag: CaseTag::Case2,
        data: TypeData::Composite(vec![comp1, comp2]),
        t: 2,
        dim: 2,
        slopes_at_u: vec![(rat(0), 1), (rat(1), 1)],
        brauer: vec![(0, rat(0)), (1, rat(0))],
    };
    assert_eq!(class2.dim_at_u(), Rat::one());
    out.push(class2);

    for class in &out {
        assert_eq!(class.dim * 2, class.t * class.data_degree());
    }
    Ok(out)
}

impl FLinearIsogenyClass {
    /// [L:Q] of the field underlying the class's type data.
    fn data_degree(&self) -> u32 {
        match &self.data {
            TypeData::Simple(t) => t.field.degree(),
            TypeData::Composite(ts) => ts[0].field.degree(),
        }
    }
}

/// Elliptic-curve descriptors forming the other side of the bijection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticDescriptor {
    OrdinaryCMBy(u64),
    Supersingular,
    OrdinaryCMByBase,
}

/// Check that descriptor ↦ class is a bijection onto the classifier's
/// output for the finite universe {aux fields} ∪ {supersingular} ∪ {base}.
pub fn bijection_check(n: u64, p: u64, aux_fields: &[u64]) -> Result<bool, HondaTateError> {
    let classes = classify_surfaces(n, p, aux_fields)?;
    let mut universe: Vec<EllipticDescriptor> = aux_fields
        .iter()
        .map(|&m| EllipticDescriptor::OrdinaryCMBy(m))
        .collect();
    universe.push(EllipticDescriptor::Supersingular);
    universe.push(EllipticDescriptor::OrdinaryCMByBase);

    let mut used = vec![false; classes.len()];
    for d in &universe {
        let want = |c: &FLinearIsogenyClass| match d {
            EllipticDescriptor::OrdinaryCMBy(m) => c.case_tag == CaseTag::Case1a { aux_m: *m },
            EllipticDescriptor::Supersingular => c.case_tag == CaseTag::Case1b,
            EllipticDescriptor::OrdinaryCMByBase => c.case_tag == CaseTag::Case2,
        };
        let hits: Vec<usize> = classes
            .iter()
            .enumerate()
            .filter(|(_, c)| want(c))
            .map(|(i, _)| i)
            .collect();
        if hits.len() != 1 || used[hits[0]] {
            return Ok(false);
        }
        used[hits[0]] = true;
    }
    Ok(used.iter().all(|&b| b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_type(p: u64, eta: Rat) -> PAdicType {
        PAdicType {
            field: CMFieldDescriptor::Rationals,
            p,
            places: vec![Place { id: 0, e: 1, f: 1, eta }],
            conj: vec![0],
        }
    }

    #[test]
    fn validate_supersingular_rational_type() {
        assert!(validate_type(&q_type(5, ratio(1, 2))).is_empty());
        // η = 1 at the self-conjugate place breaks the relation 2η = e.
        assert!(!validate_type(&q_type(5, rat(1))).is_empty());
    }

    #[test]
    fn validate_split_quadratic_types() {
        let good = split_quad_type(1, 5, rat(1), rat(0));
        assert!(validate_type(&good).is_empty());
        let bad = split_quad_type(1, 5, rat(1), rat(1));
        let v = validate_type(&bad);
        assert!(v.iter().any(|s| s.contains("slope relation")));
    }

    #[test]
    fn validate_catches_degree_mismatch() {
        let mut t = split_quad_type(1, 5, rat(1), rat(0));
        t.places[0].f = 2;
        t.places[1].f = 2;
        let v = validate_type(&t);
        assert!(v.iter().any(|s| s.contains("field degree")));
    }

    #[test]
    fn validate_catches_bad_involution() {
        let mut t = split_quad_type(1, 5, rat(1), rat(0));
        t.conj = vec![0, 0];
        assert!(!validate_type(&t).is_empty());
    }

    #[test]
    fn ramified_supersingular_shape_is_valid() {
        // One ramified place with e=2, f=1, η=1: conj fixes it, η+η = e.
        let t = PAdicType {
            field: CMFieldDescriptor::ImQuad(5),
            p: 5,
            places: vec![Place { id: 0, e: 2, f: 1, eta: rat(1) }],
            conj: vec![0],
        };
        assert!(validate_type(&t).is_empty());
        assert_eq!(t.slope(0), ratio(1, 2));
    }

    #[test]
    fn minimality_examples() {
        // Case 1a shape: minimal under F, induced from the other quadratic.
        let t = biquad_type(1, 11, 5, [rat(1), rat(0), rat(0), rat(1)]);
        assert!(minimality_check(&t, CMFieldDescriptor::ImQuad(1)).unwrap());
        assert!(!minimality_check(&t, CMFieldDescriptor::Rationals).unwrap());
        // Constant half-slope on F: induced from (Q, 1/2).
        let ss = split_quad_type(1, 5, ratio(1, 2), ratio(1, 2));
        assert!(!minimality_check(&ss, CMFieldDescriptor::Rationals).unwrap());
        // Ordinary (1,0) on F is minimal under Q.
        let ord = split_quad_type(1, 5, rat(1), rat(0));
        assert!(minimality_check(&ord, CMFieldDescriptor::Rationals).unwrap());
        // Constant η = e/2 on the biquad: induced from the real subfield.
        let half = biquad_type(1, 11, 5, core::array::from_fn(|_| ratio(1, 2)));
        assert!(!minimality_check(&half, CMFieldDescriptor::ImQuad(1)).unwrap());
    }

    #[test]
    fn minimality_rejects_incompatible_shapes() {
        let t = split_quad_type(1, 5, rat(1), rat(0));
        assert_eq!(
            minimality_check(&t, CMFieldDescriptor::ImQuad(3)),
            Err(HondaTateError::IncompatibleShape)
        );
    }

    #[test]
    fn biquad_fibers_respect_conjugation() {
        // Conjugation must permute each intermediate field's fibers.
        for sub in [
            Intermediate::QuadN,
            Intermediate::QuadM,
            Intermediate::RealQuad,
        ] {
            let (fib, _) = fibers(CMFieldDescriptor::Biquad(1, 11), sub).unwrap();
            let conj = [2usize, 3, 0, 1];
            for fiber in &fib {
                let image: Vec<usize> = {
                    let mut im: Vec<usize> = fiber.iter().map(|&i| conj[i]).collect();
                    im.sort();
                    im
                };
                assert!(fib.iter().any(|f| {
                    let mut s = f.clone();
                    s.sort();
                    s == image
                }));
            }
        }
    }

    #[test]
    fn classification_n1_p5() {
        let classes = classify_surfaces(1, 5, &[11]).unwrap();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[0].case_tag, CaseTag::Case1a { aux_m: 11 });
        assert_eq!(classes[1].case_tag, CaseTag::Case1b);
        assert_eq!(classes[2].case_tag, CaseTag::Case2);
        for c in &classes {
            assert_eq!(c.dim, 2);
            assert_eq!(c.dim_at_u(), Rat::one());
        }
        assert_eq!(classes[1].brauer, vec![(0, ratio(1, 2)), (1, ratio(1, 2))]);
        assert_eq!(classes[1].slopes_at_u, vec![(ratio(1, 2), 2)]);
        assert_eq!(classes[0].slopes_at_u, vec![(rat(0), 1), (rat(1), 1)]);
    }

    #[test]
    fn classification_no_aux() {
        let classes = classify_surfaces(2, 11, &[]).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].case_tag, CaseTag::Case1b);
        assert_eq!(classes[1].case_tag, CaseTag::Case2);
    }

    #[test]
    fn classification_rejects_bad_inputs() {
        assert!(matches!(
            classify_surfaces(1, 6, &[]),
            Err(HondaTateError::NotPrime(6))
        ));
        assert!(matches!(
            classify_surfaces(1, 3, &[]),
            Err(HondaTateError::NotSplit { .. })
        ));
        assert!(matches!(
            classify_surfaces(1, 5, &[1]),
            Err(HondaTateError::AuxEqualsBase(1))
        ));
        assert!(matches!(
            classify_surfaces(1, 5, &[11, 11]),
            Err(HondaTateError::DuplicateAux(11))
        ));
        assert!(matches!(
            classify_surfaces(1, 5, &[7]),
            Err(HondaTateError::NotSplit { .. })
        ));
        assert!(matches!(
            classify_surfaces(4, 5, &[]),
            Err(HondaTateError::NotSquarefree(4))
        ));
    }

    #[test]
    fn bijection_examples() {
        assert!(bijection_check(1, 5, &[11, 19]).unwrap());
        assert!(bijection_check(2, 11, &[]).unwrap());
        assert!(bijection_check(3, 7, &[19]).unwrap());
        assert!(matches!(
            bijection_check(1, 5, &[11, 11]),
            Err(HondaTateError::DuplicateAux(11))
        ));
    }
}
