//! The alternating Q-bilinear form on V = F² with its Hermitian adjoint
//! involution, similitude norms, rank-4 lattice duality, and the class
//! number of the similitude group.

use alloc::{vec, vec::Vec};
use core::fmt;
use num::{One, Signed, Zero};

use crate::arith::{Int, Rat};
use crate::linalg::{Lattice, QMat};
use crate::quadfield::{class_group, trace_dual, FieldElement, FracIdeal, QuadField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HermitianError {
    NotASimilitude,
    Degenerate,
}

impl fmt::Display for HermitianError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HermitianError::NotASimilitude => write!(f, "iota(g)·g is not a nonzero rational scalar"),
            HermitianError::Degenerate => write!(f, "generators do not span a full-rank lattice"),
        }
    }
}

/// A vector (x1, x2) in V = F².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermVector {
    pub x1: FieldElement,
    pub x2: FieldElement,
}

impl HermVector {
    pub fn new(x1: FieldElement, x2: FieldElement) -> Self {
        HermVector { x1, x2 }
    }

    /// Coordinates over the Q-basis (1,0), (δ,0), (0,1), (0,δ).
    pub fn coords(&self) -> Vec<Rat> {
        vec![
            self.x1.a.clone(),
            self.x1.b.clone(),
            self.x2.a.clone(),
            self.x2.b.clone(),
        ]
    }

    pub fn from_coords(c: &[Rat]) -> Self {
        assert_eq!(c.len(), 4);
        HermVector::new(
            FieldElement::new(c[0].clone(), c[1].clone()),
            FieldElement::new(c[2].clone(), c[3].clone()),
        )
    }

    pub fn scale(&self, k: &QuadField, z: &FieldElement) -> Self {
        HermVector::new(k.mul(z, &self.x1), k.mul(z, &self.x2))
    }
}

/// ⟨v, w⟩ = Tr_{F/Q}(x2·w̄1 − x1·w̄2): Q-bilinear, alternating, and
/// compatible with the F-structure via ⟨z·v, w⟩ = ⟨v, z̄·w⟩.
pub fn pairing(k: &QuadField, v: &HermVector, w: &HermVector) -> Rat {
    let t = k
        .mul(&v.x2, &w.x1.conj())
        .sub(&k.mul(&v.x1, &w.x2.conj()));
    t.trace()
}

/// Gram matrix of the pairing over the Q-basis (1,0), (δ,0), (0,1), (0,δ).
pub fn gram(k: &QuadField) -> QMat {
    let basis = standard_q_basis();
    let mut g = QMat::zero(4, 4);
    for (i, v) in basis.iter().enumerate() {
        for (j, w) in basis.iter().enumerate() {
            g[(i, j)] = pairing(k, v, w);
        }
    }
    g
}

pub fn standard_q_basis() -> [HermVector; 4] {
    let one = FieldElement::one();
    let delta = FieldElement::new(Rat::zero(), Rat::one());
    let zero = FieldElement::zero();
    [
        HermVector::new(one.clone(), zero.clone()),
        HermVector::new(delta.clone(), zero.clone()),
        HermVector::new(zero.clone(), one),
        HermVector::new(zero, delta),
    ]
}

/// A 2×2 matrix over F acting on column vectors of V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2F {
    pub e: [[FieldElement; 2]; 2],
}

impl Mat2F {
    pub fn new(e: [[FieldElement; 2]; 2]) -> Self {
        Mat2F { e }
    }

    pub fn identity() -> Self {
        Mat2F::new([
            [FieldElement::one(), FieldElement::zero()],
            [FieldElement::zero(), FieldElement::one()],
        ])
    }

    pub fn scalar(z: &FieldElement) -> Self {
        Mat2F::new([
            [z.clone(), FieldElement::zero()],
            [FieldElement::zero(), z.clone()],
        ])
    }

    pub fn mul(&self, k: &QuadField, o: &Mat2F) -> Mat2F {
        let mut out = Mat2F::identity();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = k
                    .mul(&self.e[i][0], &o.e[0][j])
                    .add(&k.mul(&self.e[i][1], &o.e[1][j]));
            }
        }
        out
    }

    pub fn apply(&self, k: &QuadField, v: &HermVector) -> HermVector {
        HermVector::new(
            k.mul(&self.e[0][0], &v.x1).add(&k.mul(&self.e[0][1], &v.x2)),
            k.mul(&self.e[1][0], &v.x1).add(&k.mul(&self.e[1][1], &v.x2)),
        )
    }
}

/// The adjoint involution: entrywise conjugate of [[d,−b],[−c,a]], so that
/// pairing(g·v, w) = pairing(v, iota(g)·w).
pub fn iota(g: &Mat2F) -> Mat2F {
    let [[a, b], [c, d]] = &g.e;
    Mat2F::new([
        [d.conj(), b.conj().neg()],
        [c.conj().neg(), a.conj()],
    ])
}

/// The rational ν with iota(g)·g = ν·Id, when it exists and is nonzero.
pub fn similitude_norm(k: &QuadField, g: &Mat2F) -> Result<Rat, HermitianError> {
    let h = iota(g).mul(k, g);
    let scalar_rational = |x: &FieldElement| x.b.is_zero();
    if !h.e[0][1].is_zero() || !h.e[1][0].is_zero() {
        return Err(HermitianError::NotASimilitude);
    }
    if h.e[0][0] != h.e[1][1] || !scalar_rational(&h.e[0][0]) || h.e[0][0].is_zero() {
        return Err(HermitianError::NotASimilitude);
    }
    Ok(h.e[0][0].a.clone())
}

/// A full-rank Z-lattice in V, stable under the ring of integers acting
/// diagonally; canonical basis in the Q-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OFLattice {
    lat: Lattice,
}

impl OFLattice {
    /// Lattice generated by the vectors as an O_F-module.
    pub fn from_vectors(k: &QuadField, gens: &[HermVector]) -> Result<Self, HermitianError> {
        let omega = k.omega();
        let mut rows = Vec::new();
        for v in gens {
            rows.push(v.coords());
            rows.push(v.scale(k, &omega).coords());
        }
        let lat = Lattice::from_generators(&rows).ok_or(HermitianError::Degenerate)?;
        if lat.dim() != 4 {
            return Err(HermitianError::Degenerate);
        }
        Ok(OFLattice { lat })
    }

    /// I ⊕ J for fractional ideals I, J.
    pub fn from_ideal_pair(k: &QuadField, i: &FracIdeal, j: &FracIdeal) -> Self {
        let zero = FieldElement::zero();
        let [i1, i2] = i.basis_elements();
        let [j1, j2] = j.basis_elements();
        let gens = [
            HermVector::new(i1, zero.clone()),
            HermVector::new(i2, zero.clone()),
            HermVector::new(zero.clone(), j1),
            HermVector::new(zero, j2),
        ];
        Self::from_vectors(k, &gens).expect("ideal pair spans a full lattice")
    }

    /// O_F ⊕ O_F.
    pub fn standard(k: &QuadField) -> Self {
        let o = FracIdeal::ring_of_integers(k);
        Self::from_ideal_pair(k, &o, &o)
    }

    /// O_F ⊕ 𝔡^{-1}, the self-dual lattice.
    pub fn self_dual_standard(k: &QuadField) -> Self {
        let o = FracIdeal::ring_of_integers(k);
        let dinv = trace_dual(k, &o);
        Self::from_ideal_pair(k, &o, &dinv)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lat
    }

    pub fn basis_vectors(&self) -> Vec<HermVector> {
        self.lat
            .rational_rows()
            .iter()
            .map(|r| HermVector::from_coords(r))
            .collect()
    }

    pub fn contains(&self, v: &HermVector) -> bool {
        self.lat.contains(&v.coords())
    }
}

/// {x ∈ V : pairing(x, ℓ) ∈ Z for all ℓ ∈ L}, computed from the Gram
/// matrix of the pairing.
pub fn dual_lattice(k: &QuadField, l: &OFLattice) -> OFLattice {
    let p = gram(k);
    let b = l.lat.basis_matrix();
    let m = p.mul(&b.transpose());
    let inv = m
        .inverse()
        .expect("pairing is nondegenerate on a full-rank lattice");
    let rows: Vec<Vec<Rat>> = (0..4).map(|i| inv.row(i).to_vec()).collect();
    OFLattice {
        lat: Lattice::from_generators(&rows).expect("dual lattice is full rank"),
    }
}

/// The class-number chain for the similitude group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassNumberGu {
    /// Number of primes dividing disc(F).
    pub u: u32,
    /// h(F)/2^{u−1}; integral by genus theory.
    pub index_c_c0: u64,
    /// 2^u divided by the order 2 of the unit-square quotient.
    pub index_e_f: u64,
    pub h_f: u64,
    pub h_gu: u64,
    pub ambiguous: u64,
}

/// h(GU) = h(Q) · [C:C₀] · [E:f(O_F^×)] with h(Q) = 1; the product
/// collapses to h(F).
pub fn class_number_gu(k: &QuadField) -> ClassNumberGu {
    let cg = class_group(k);
    let u = cg.u;
    let two_pow = 1u64 << (u - 1);
    assert_eq!(
        cg.h % two_pow,
        0,
        "h(F)/2^(u-1) must be integral (genus theory)"
    );
    let index_c_c0 = cg.h / two_pow;
    // Cross-check the denominator against the ambiguous-form count.
    assert_eq!(cg.ambiguous, two_pow);
    let index_e_f = (1u64 << u) / 2;
    let h_gu = index_c_c0 * index_e_f;
    assert_eq!(h_gu, cg.h, "the similitude class number equals h(F)");
    ClassNumberGu {
        u,
        index_c_c0,
        index_e_f,
        h_f: cg.h,
        h_gu,
        ambiguous: cg.ambiguous,
    }
}

/// |disc| as a plain integer, for report text.
pub fn abs_disc(k: &QuadField) -> Int {
    k.disc().abs()
}
