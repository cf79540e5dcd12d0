//! Check catalog and report assembly: every verification the toolkit can
//! run, rendered as deterministic JSON-serializable records.

use serde::Serialize;
use std::fmt::Write as _;

use gu11_core::arith::{is_prime, is_squarefree, legendre, rat, ratio, Int, Rat};
use gu11_core::graded::{
    self, apply, check_cyclotomic_generation, check_generation, check_t_squared,
    cyclotomic_invariant_subspace, fricke_from_t, invariant_subspace, is_invariant,
    p_integrality, verify_identity, AlgebraMap, GradedRing,
};
use gu11_core::hermitian::{
    class_number_gu, dual_lattice, iota, pairing, similitude_norm, standard_q_basis,
    HermitianError, Mat2F, OFLattice,
};
use gu11_core::hondatate::{
    bijection_check, classify_surfaces, minimality_check, validate_type, CMFieldDescriptor,
    CaseTag, HondaTateError, TypeData,
};
use gu11_core::isogeny::{
    automorphism_group_order, case2_degree_branch_empty, cm_case1, cm_case2_identities, dagger,
    polarization_positivity, tensor_automorphism_order, unit_group_order,
};
use gu11_core::quadfield::{
    class_group, class_of, different, lemma_representative, split_prime, trace_dual, FieldElement,
    QuadField, Splitting,
};
use gu11_core::weierstrass::{
    curve_invariants, delta_qseries, eisenstein, generic_coeffs, WeierstrassError,
};
use num::{One, Signed};

/// Reference strings attached verbatim to emitted checks.
mod anchor {
    pub const FIELD_SPLIT: &str = r#"§1, "splits as $u \bar{u}$ in $F$""#;
    pub const DIFFERENT: &str = r#"§5, "be the different of $F$""#;
    pub const TRACE_DUAL: &str =
        r#"§4, "induces an isomorphism" (the pairing Tr_{F/Q}(z·w̄) defining I^∨)"#;
    pub const CLASS_GROUP: &str = r#"§4 Remark, "have class number $1$" (Q(i) and Q(ω))"#;
    pub const LEMMA_REP: &str = r#"§4 Lemma, "we have $I \subset I^\vee$""#;
    pub const LATTICES: &str = r#"§4, lattice "$L = \mc{O}_F^2$" ("let $K_0$ denote the compact open subgroup"); §5, "$L' = \mc{O}_F \oplus \mf{d}^{-1}$""#;
    pub const SIMILITUDE: &str = r#"§3, "$g^\iota g \in R^\times$""#;
    pub const IOTA: &str = r#"§3, "ι denote the involution on" (defined by ⟨αv,w⟩ = ⟨v,α^ι w⟩); pattern of Eq. for ι₀, "induced involution on $M_2(\mathbb{Q})$""#;
    pub const SELF_DUAL: &str = r#"§5, "self-dual with respect to" (the duality {x : ⟨x, L′⟩ ⊆ Z})"#;
    pub const CLASS_GU: &str = r#"§4 class-number Lemma, "$h(GU) = h(\mathbb{Q})[\mf{C}: \mf{C}_0][\mf{E}, f(\mc{O}_F^\times)]$" and "h(T) = h(F)/2^{u-1}""#;
    pub const CM_CASE1: &str = r#"§5 Case I, "$x \mapsto \tau \circ (q,-q^\vee)$""#;
    pub const CM_CASE2: &str = r#"§5 Case II, "the identity $y^\dag A = A(-1-y)$""#;
    pub const POSITIVITY: &str = r#"§5 Case II, "is positive definite, as required""#;
    pub const AUTOMORPHISMS: &str = r#"§5, "only the following possibilities" and "homomorphisms with $\deg(2\alpha) + \deg(2q\beta) = 4$"; Case I constraint "$\deg(a\phi) + N \deg(b\phi) = 1$""#;
    pub const UNITS: &str =
        r#"§4 Remark, "cyclic of order $4$ if $F = \mathbb{Q}(i)$" (and order 6 for Q(ω))"#;
    pub const TENSOR_AUT: &str = r#"§4 Lemma, "Aut(E,[η]) ×_{±1} O_F^×" ("${\rm Aut}_{\mc{M}_{\mit{ell},p}}(E, [\eta]) \times_{\{ \pm 1 \}} \mc{O}_{F}^\times$")"#;
    pub const VALIDATE_TYPE: &str = r#"§2, "satisfying the relation""#;
    pub const MINIMALITY: &str = r#"§2, "if it is not in the image of such a non-identity map" ("takes a $p$-adic type $(M,(\eta_x))$ to $(M',(\eta_x e_{x'/x}))$")"#;
    pub const CLASSIFY: &str = r#"§2 Proposition, "Case 1a ... Case 1b ... Case 2" ("$[E\otimes \mc{O}_F]$, where $E$ is a supersingular")"#;
    pub const BIJECTION: &str = r#"§2 Corollary, "gives a bijection between isogeny classes""#;
    pub const T_SQUARED: &str =
        r#"§6, "The self-map $t$ satisfying $t^2 = [2]$" (and the level-3 analog "$t^2 = [3]$")"#;
    pub const FRICKE: &str = r#"§6, "The involution itself is then given by" (rescaling by a with a² = −N; §5 Remark, "by dividing by $a = \sqrt{-N} \in \mb Z_p$")"#;
    pub const IDENTITIES: &str = r#"§6 displayed identities (anchors below per example)"#;
    pub const INV_SUBSPACE: &str = r#"§6 Theorem proof, "invariant under an involution""#;
    pub const GENERATION: &str = r#"§6, N=2 proof "q_2, (q_2^4 - r_4^2), (q_2^4 - r_4^2)^{-1}"; N=3 proof "generated by the algebraically independent elements""#;
    pub const CYCLOTOMIC: &str = r#"Corollary 5.2 proof, "through the $k$'th power map"; §6 N=3 proof, "total degree divisible by $6$""#;
    pub const INTEGRALITY: &str =
        r#"§6, "$\mb Z_p[q_2, D^{\pm 1}]^\wedge_p$" (the theorems assert p-integral generator rings)"#;
    pub const TATE_QUANTITIES: &str = r#"invented — artifact plumbing (standard Tate quantities); names c_4, c_6, Δ from Corollary 5.2, "are the standard integral modular forms""#;
    pub const EISENSTEIN: &str =
        r#"Corollary 5.2, "are the standard integral modular forms" (c_4, c_6 normalizations)"#;
    pub const Q_ORACLE: &str = r#"invented — artifact plumbing (product formula oracle)"#;
    pub const THEOREM: &str = r#"Theorem 4.5, "is a degree 2 Galois cover"; Theorem 5.x, "degree 3 Galois cover onto a connected component""#;

    /// Every string the catalog may attach, for downstream validation.
    pub const ALL: &[&str] = &[
        FIELD_SPLIT,
        DIFFERENT,
        TRACE_DUAL,
        CLASS_GROUP,
        LEMMA_REP,
        LATTICES,
        SIMILITUDE,
        IOTA,
        SELF_DUAL,
        CLASS_GU,
        CM_CASE1,
        CM_CASE2,
        POSITIVITY,
        AUTOMORPHISMS,
        UNITS,
        TENSOR_AUT,
        VALIDATE_TYPE,
        MINIMALITY,
        CLASSIFY,
        BIJECTION,
        T_SQUARED,
        FRICKE,
        IDENTITIES,
        INV_SUBSPACE,
        GENERATION,
        CYCLOTOMIC,
        INTEGRALITY,
        TATE_QUANTITIES,
        EISENSTEIN,
        Q_ORACLE,
        THEOREM,
    ];
}

/// The anchor vocabulary, exported for validation.
pub fn anchor_list() -> &'static [&'static str] {
    anchor::ALL
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

#[derive(Serialize, Clone, Debug)]
pub struct CheckResult {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub version: u32,
    pub checks: Vec<CheckResult>,
}

impl Report {
    /// Sort by id and require uniqueness, making serialization canonical.
    pub fn new(mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in checks.windows(2) {
            assert_ne!(pair[0].id, pair[1].id, "check ids must be unique");
        }
        Report { version: 1, checks }
    }

    pub fn has_fail(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn verdict(id: String, anchor: &str, ok: bool, detail: String) -> CheckResult {
    CheckResult {
        id,
        paper_ref: anchor.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn flagged(id: String, anchor: &str, detail: String) -> CheckResult {
    CheckResult {
        id,
        paper_ref: anchor.to_string(),
        status: Status::Flagged,
        detail,
    }
}

fn field(n: u64) -> QuadField {
    QuadField::new(n).expect("squarefree n")
}

/// Smallest odd split prime coprime to every class-representative norm;
/// the default prime for the representative search, chosen so the search
/// is never run against a class whose norm it divides. (The working
/// primes are odd throughout, so 2 is excluded even when it splits.)
pub fn default_lemma_prime(n: u64) -> u64 {
    let k = field(n);
    let cg = class_group(&k);
    let mut p = 3u64;
    loop {
        if is_prime(p)
            && split_prime(&k, p) == Ok(Splitting::Split)
            && cg.forms.iter().all(|f| (&f.a % (p as i64)) != Int::from(0))
        {
            return p;
        }
        p += 2;
    }
}

/// Class-group checks for one field: the splitting certificate for the
/// default working prime, form enumeration with round-trip to ideal
/// classes, the ambiguous-form count, and the similitude class number
/// chain.
pub fn classgroup_checks(n: u64) -> Vec<CheckResult> {
    let k = field(n);
    let cg = class_group(&k);
    let mut out = vec![splitting_check(n)];

    let forms: Vec<String> = cg.forms.iter().map(|f| f.to_string()).collect();
    let round_trip = cg
        .representatives
        .iter()
        .zip(&cg.forms)
        .all(|(i, f)| &class_of(&k, i) == f);
    let reduced = cg.forms.iter().all(|f| {
        f.is_reduced() && f.is_primitive() && f.disc() == k.disc()
    });
    out.push(verdict(
        format!("classgroup.forms.n{n:02}"),
        anchor::CLASS_GROUP,
        round_trip && reduced,
        format!(
            "h = {}; reduced forms {}; each representative ideal maps back to its form",
            cg.h,
            forms.join(", ")
        ),
    ));

    let expected = 1u64 << (cg.u - 1);
    out.push(verdict(
        format!("classgroup.ambiguous.n{n:02}"),
        anchor::CLASS_GROUP,
        cg.ambiguous == expected,
        format!(
            "disc = {}; u = {} ramified primes; ambiguous reduced forms = {} = 2^(u-1)",
            k.disc(),
            cg.u,
            cg.ambiguous
        ),
    ));

    let gu = class_number_gu(&k);
    out.push(verdict(
        format!("classgroup.gu.n{n:02}"),
        anchor::CLASS_GU,
        gu.h_gu == gu.h_f && gu.index_c_c0 * expected == gu.h_f,
        format!(
            "h(F) = {}; [C:C0] = h/2^(u-1) = {} (integral); unit-index factor 2^(u-1) = {}; h(GU) = {} = h(F)",
            gu.h_f, gu.index_c_c0, gu.index_e_f, gu.h_gu
        ),
    ));

    out
}

/// Lattice and duality checks for one field: the different's norm, the
/// trace-dual laws, self-duality of O_F ⊕ 𝔡^{-1}, the standard lattice's
/// dual, and the per-class representative search at the default prime.
pub fn lattice_checks(n: u64) -> Vec<CheckResult> {
    let k = field(n);
    let mut out = Vec::new();

    let d = different(&k);
    let abs_disc = k.disc().abs();
    out.push(verdict(
        format!("lattice.different.n{n:02}"),
        anchor::DIFFERENT,
        d.norm(&k) == Rat::from_integer(abs_disc.clone()) && d.is_integral(&k),
        format!("different = {}; norm = {} = |disc|", d.describe(), d.norm(&k)),
    ));

    let cg = class_group(&k);
    let a = FieldElement::new(rat(1), rat(1));
    let a_inv_conj = k.inv(&a.conj()).expect("1+delta is nonzero");
    let dual_laws = cg.representatives.iter().all(|i| {
        trace_dual(&k, &trace_dual(&k, i)) == *i
            && trace_dual(&k, &i.mul_element(&k, &a))
                == trace_dual(&k, i).mul_element(&k, &a_inv_conj)
    });
    out.push(verdict(
        format!("lattice.dualscaling.n{n:02}"),
        anchor::TRACE_DUAL,
        dual_laws,
        format!(
            "on all {} class representatives: dual(dual(I)) = I and dual((1+delta)I) = conj(1+delta)^(-1) dual(I)",
            cg.h
        ),
    ));

    let p = default_lemma_prime(n);
    let mut lemma_ok = true;
    let mut lemma_notes = Vec::new();
    for idx in 0..cg.representatives.len() {
        match lemma_representative(&k, idx, p) {
            Ok(rep) => {
                lemma_notes.push(format!(
                    "class {}: multiplier {}, strict containment {}",
                    idx, rep.multiplier, rep.strict
                ));
            }
            Err(e) => {
                lemma_ok = false;
                lemma_notes.push(format!("class {idx}: {e}"));
            }
        }
    }
    out.push(verdict(
        format!("lattice.lemma.n{n:02}"),
        anchor::LEMMA_REP,
        lemma_ok,
        format!(
            "p = {} (smallest split prime coprime to all representative norms); {}",
            p,
            lemma_notes.join("; ")
        ),
    ));

    let self_dual = OFLattice::self_dual_standard(&k);
    out.push(verdict(
        format!("lattice.selfdual.n{n:02}"),
        anchor::SELF_DUAL,
        dual_lattice(&k, &self_dual) == self_dual,
        "dual(O_F + d^(-1)) = O_F + d^(-1)".to_string(),
    ));

    let standard = OFLattice::standard(&k);
    let d_inv = d.inverse(&k);
    let twisted = OFLattice::from_ideal_pair(&k, &d_inv, &d_inv);
    let dual_std = dual_lattice(&k, &standard);
    out.push(verdict(
        format!("lattice.standard.n{n:02}"),
        anchor::LATTICES,
        dual_std == twisted && dual_std != standard,
        "dual(O_F^2) = d^(-1) + d^(-1), a strictly larger lattice".to_string(),
    ));

    out.extend(hermitian_checks(&k, n));
    out
}

/// Pairing-compatibility checks: the involution's adjointness on a basis
/// and the similitude norm of central elements.
fn hermitian_checks(k: &QuadField, n: u64) -> Vec<CheckResult> {
    let basis = standard_q_basis();
    let delta = k.delta();
    let samples = [
        Mat2F::new([
            [FieldElement::one(), delta.clone()],
            [FieldElement::zero(), FieldElement::one()],
        ]),
        Mat2F::new([
            [FieldElement::from_int(2), FieldElement::one()],
            [delta.clone(), FieldElement::one()],
        ]),
    ];
    let mut adjoint_ok = true;
    for g in &samples {
        for v in &basis {
            for w in &basis {
                if pairing(k, &g.apply(k, v), w) != pairing(k, v, &iota(g).apply(k, w)) {
                    adjoint_ok = false;
                }
            }
        }
    }
    let anti = iota(&samples[0].mul(k, &samples[1]))
        == iota(&samples[1]).mul(k, &iota(&samples[0]));

    let z = FieldElement::new(rat(2), rat(1));
    let central = similitude_norm(k, &Mat2F::scalar(&z));
    let central_ok = central == Ok(k.norm(&z));
    let rejected = matches!(
        similitude_norm(
            k,
            &Mat2F::new([
                [delta, FieldElement::zero()],
                [FieldElement::zero(), FieldElement::one()],
            ])
        ),
        Err(HermitianError::NotASimilitude)
    );

    vec![
        verdict(
            format!("hermitian.iota.n{n:02}"),
            anchor::IOTA,
            adjoint_ok && anti,
            "pairing(g v, w) = pairing(v, iota(g) w) on all basis pairs; iota(gh) = iota(h) iota(g)"
                .to_string(),
        ),
        verdict(
            format!("hermitian.similitude.n{n:02}"),
            anchor::SIMILITUDE,
            central_ok && rejected,
            format!(
                "(2+delta)·Id has similitude norm {}; diag(delta, 1) is rejected",
                k.norm(&z)
            ),
        ),
    ]
}

/// CM-matrix checks for one field: the case-appropriate matrix identities,
/// positivity, the automorphism/unit orders, and the empty mixed branch.
pub fn cm_checks(n: u64) -> Vec<CheckResult> {
    let k = field(n);
    let mut out = Vec::new();

    if n % 4 == 3 {
        let constant = cm_case2_identities(n);
        out.push(verdict(
            format!("cm.matrix.n{n:02}"),
            anchor::CM_CASE2,
            constant == Ok(ratio((n as i64 + 1) / 4, 1)),
            format!(
                "y^2 + y + (N+1)/4 = 0 with (N+1)/4 = {}; dagger(y)A = A(-1-y); dagger(A) = A",
                (n + 1) / 4
            ),
        ));
        match polarization_positivity(n) {
            Ok((alpha, beta, gamma)) => {
                let disc = rat(4) * &alpha * &gamma - &beta * &beta;
                out.push(verdict(
                    format!("cm.positivity.n{n:02}"),
                    anchor::POSITIVITY,
                    disc == rat(4 * n as i64) && alpha.is_positive(),
                    format!(
                        "form ({alpha}, {beta}, {gamma}); discriminant 4ac - b^2 = {disc} = 4N"
                    ),
                ));
            }
            Err(e) => out.push(verdict(
                format!("cm.positivity.n{n:02}"),
                anchor::POSITIVITY,
                false,
                format!("positivity form unavailable: {e}"),
            )),
        }
        out.push(verdict(
            format!("cm.branch.n{n:02}"),
            anchor::AUTOMORPHISMS,
            case2_degree_branch_empty(n),
            "no self-map splits the total degree 4 as 2 + 2".to_string(),
        ));
    } else {
        let ok = match cm_case1(n) {
            Ok(x) => {
                let minus_n = x.mul(n, &x).expect("composable").as_scalar()
                    == Some(rat(-(n as i64)));
                let skew = dagger(&x) == x.neg();
                minus_n && skew
            }
            Err(_) => false,
        };
        out.push(verdict(
            format!("cm.matrix.n{n:02}"),
            anchor::CM_CASE1,
            ok,
            format!("x^2 = -{n}·Id and dagger(x) = -x for x built from (q, -q_dual)"),
        ));
    }

    let aut = automorphism_group_order(n);
    let units = unit_group_order(&k);
    let expected = match n {
        1 => 4,
        3 => 6,
        _ => 2,
    };
    out.push(verdict(
        format!("cm.aut.n{n:02}"),
        anchor::AUTOMORPHISMS,
        aut == units && aut == expected,
        format!("automorphism group order {aut}; unit group order {units}; expected {expected}"),
    ));
    out.push(verdict(
        format!("cm.units.n{n:02}"),
        anchor::UNITS,
        units == expected,
        format!("|O_F^x| = {units}"),
    ));
    let tensor = tensor_automorphism_order(24, &k);
    out.push(verdict(
        format!("cm.tensor.n{n:02}"),
        anchor::TENSOR_AUT,
        tensor == Ok(24 * units / 2),
        format!(
            "aut count 24 fibered with the {units} units over ±1 gives {}",
            24 * units / 2
        ),
    ));

    out
}

/// Render one slope list deterministically.
fn slopes_text(slopes: &[(Rat, u32)]) -> String {
    let parts: Vec<String> = slopes
        .iter()
        .map(|(s, h)| format!("{s} (height {h})"))
        .collect();
    parts.join(", ")
}

/// Abelian-surface classification checks for one (N, p, aux) choice.
pub fn hondatate_checks(n: u64, p: u64, aux: &[u64]) -> Result<Vec<CheckResult>, HondaTateError> {
    let classes = classify_surfaces(n, p, aux)?;
    let mut out = Vec::new();

    let mut all_valid = true;
    let mut case_texts = Vec::new();
    for class in &classes {
        let types: Vec<_> = match &class.data {
            TypeData::Simple(t) => vec![t.clone()],
            TypeData::Composite(ts) => ts.clone(),
        };
        for t in &types {
            let violations = validate_type(t);
            if !violations.is_empty() {
                all_valid = false;
            }
        }
        case_texts.push(format!(
            "case {}: t = {}, dim = {}, slopes {}",
            class.case_tag,
            class.t,
            class.dim,
            slopes_text(&class.slopes_at_u)
        ));
    }
    out.push(verdict(
        format!("hondatate.validate.n{n:02}"),
        anchor::VALIDATE_TYPE,
        all_valid,
        format!("p = {p}; {}", case_texts.join("; ")),
    ));

    let mut minimality_ok = true;
    let mut verdicts = Vec::new();
    for class in &classes {
        match (&class.case_tag, &class.data) {
            (CaseTag::Case1a { aux_m }, TypeData::Simple(t)) => {
                let under_base = minimality_check(t, CMFieldDescriptor::ImQuad(n)).unwrap();
                let under_q = minimality_check(t, CMFieldDescriptor::Rationals).unwrap();
                if !under_base || under_q {
                    minimality_ok = false;
                }
                verdicts.push(format!(
                    "1a(M={aux_m}): minimal over the base field {under_base}, minimal over Q {under_q}"
                ));
            }
            (CaseTag::Case1b, TypeData::Simple(t)) => {
                let under_q = minimality_check(t, CMFieldDescriptor::Rationals).unwrap();
                if under_q {
                    minimality_ok = false;
                }
                verdicts.push(format!("1b: minimal over Q {under_q} (induced from Q)"));
            }
            (CaseTag::Case2, TypeData::Composite(ts)) => {
                let comps: Vec<bool> = ts
                    .iter()
                    .map(|t| minimality_check(t, CMFieldDescriptor::Rationals).unwrap())
                    .collect();
                if comps.iter().any(|&c| !c) {
                    minimality_ok = false;
                }
                verdicts.push(format!(
                    "2: ordinary components minimal over Q {:?}",
                    comps
                ));
            }
            _ => minimality_ok = false,
        }
    }
    out.push(verdict(
        format!("hondatate.minimality.n{n:02}"),
        anchor::MINIMALITY,
        minimality_ok,
        verdicts.join("; "),
    ));

    out.push(verdict(
        format!("hondatate.classify.n{n:02}"),
        anchor::CLASSIFY,
        classes.len() == aux.len() + 2,
        format!(
            "{} classes: one 1a per auxiliary field {:?}, one supersingular 1b, one split 2",
            classes.len(),
            aux
        ),
    ));

    let bijection = bijection_check(n, p, aux)?;
    out.push(verdict(
        format!("hondatate.bijection.n{n:02}"),
        anchor::BIJECTION,
        bijection,
        "elliptic-curve descriptors match isogeny classes one-to-one".to_string(),
    ));

    Ok(out)
}

/// The default (p, aux) pairs driving the surface classification.
pub fn hondatate_defaults(n: u64) -> Option<(u64, Vec<u64>)> {
    match n {
        1 => Some((5, vec![11, 19])),
        2 => Some((11, vec![])),
        3 => Some((7, vec![19])),
        _ => None,
    }
}

fn ring_for_level(level: u8) -> GradedRing {
    match level {
        1 => graded::level1_ring(),
        2 => graded::level2_ring(),
        3 => graded::level3_ring(),
        _ => panic!("level must be 1, 2, or 3"),
    }
}

fn fricke_for_level(ring: &GradedRing) -> Option<AlgebraMap> {
    match ring.level {
        2 => Some(fricke_from_t(ring, &graded::tstar_level2(ring), 2).unwrap()),
        3 => Some(fricke_from_t(ring, &graded::tstar_level3(ring), 3).unwrap()),
        _ => None,
    }
}

/// Graded-ring checks for one level with the given scan parameters.
pub fn invariants_checks(
    level: u8,
    p_override: Option<u64>,
    max_weight: u32,
    max_denom: u32,
) -> Vec<CheckResult> {
    let ring = ring_for_level(level);
    let p = p_override.unwrap_or(ring.default_p);
    match level {
        1 => level1_checks(&ring, p, max_weight, max_denom),
        2 => level2_checks(&ring, p, max_weight, max_denom),
        3 => level3_checks(&ring, p, max_weight, max_denom),
        _ => unreachable!(),
    }
}

fn level1_checks(ring: &GradedRing, p: u64, max_weight: u32, max_denom: u32) -> Vec<CheckResult> {
    let c4 = ring.var(0);
    let c6 = ring.var(1);
    let inv = graded::level1_negate_c6(ring);
    let mut out = Vec::new();

    let dim10 = invariant_subspace(ring, &inv, 10, 0).len();
    let dim4 = invariant_subspace(ring, &inv, 4, 0).len();
    out.push(verdict(
        "invariants.level1.subspace".to_string(),
        anchor::INV_SUBSPACE,
        dim10 == 0 && dim4 == 1,
        format!("negating c6: weight-10 fixed space dimension {dim10}; weight-4 dimension {dim4}"),
    ));

    let order2 = check_cyclotomic_generation(
        ring,
        2,
        None,
        &[c4.clone(), c6.pow(2)],
        max_weight,
        max_denom,
    );
    out.push(verdict(
        "invariants.level1.order2".to_string(),
        anchor::CYCLOTOMIC,
        order2 == Ok(true),
        format!(
            "order-2 character (weights 0 mod 4): generated by c4, c6^2, Delta^(+-1) up to weight {max_weight}, denominator exponent {max_denom}"
        ),
    ));

    let order3 = check_cyclotomic_generation(
        ring,
        3,
        None,
        &[c4.pow(3), c6.clone()],
        max_weight,
        max_denom,
    );
    out.push(verdict(
        "invariants.level1.order3".to_string(),
        anchor::CYCLOTOMIC,
        order3 == Ok(true),
        format!(
            "order-3 character (weights 0 mod 3): generated by c4^3, c6, Delta^(+-1) up to weight {max_weight}, denominator exponent {max_denom}"
        ),
    ));

    let gens = [c4.clone(), c6.pow(2), c4.pow(3), c6, ring.delta.clone()];
    out.push(verdict(
        "invariants.level1.integrality".to_string(),
        anchor::INTEGRALITY,
        p_integrality(&gens, p),
        format!("generator coefficients have denominators coprime to p = {p}"),
    ));

    out
}

fn level2_checks(ring: &GradedRing, p: u64, max_weight: u32, max_denom: u32) -> Vec<CheckResult> {
    let q2 = ring.var(0);
    let q4 = ring.var(1);
    let tstar = graded::tstar_level2(ring);
    let w = fricke_for_level(ring).expect("level 2 has a Fricke involution");
    let r4 = graded::level2_r4();
    let mut out = Vec::new();

    out.push(verdict(
        "invariants.level2.tsquared".to_string(),
        anchor::T_SQUARED,
        check_t_squared(ring, &tstar, 2),
        "t(q2) = -2 q2, t(q4) = q2^2 - 4 q4; t∘t multiplies weight-k generators by 2^k"
            .to_string(),
    ));

    let images_ok = w.images[0] == q2
        && w.images[1] == &q2.pow(2).scale(&ratio(1, 4)) - &q4
        && apply(ring, &w, &r4) == r4.scale(&rat(-1))
        && is_invariant(ring, &w, &ring.unit);
    let involution_ok = (0..2).all(|i| apply(ring, &w, &w.images[i]) == ring.var(i));
    out.push(verdict(
        "invariants.level2.fricke".to_string(),
        anchor::FRICKE,
        images_ok && involution_ok,
        "w(q2) = q2, w(q4) = 1/4 q2^2 - q4, w(r4) = -r4, w(D) = D, w∘w = id".to_string(),
    ));

    let delta_formula = &q4.pow(2) * &(&q2.pow(2).scale(&rat(16)) - &q4.scale(&rat(64)));
    let wd = apply(ring, &w, &ring.delta);
    let product = verify_identity(
        ring,
        &(&ring.delta * &wd).scale(&rat(64)),
        &ring.unit.pow(3),
    ) == Ok(true);
    let factor_d = verify_identity(ring, &ring.delta, &(&q4 * &ring.unit)) == Ok(true);
    let cof = (&q2.pow(2) - &q4.scale(&rat(4))).scale(&rat(16));
    let factor_delta = verify_identity(ring, &ring.unit.pow(2), &(&cof * &ring.delta)) == Ok(true);
    out.push(verdict(
        "invariants.level2.delta".to_string(),
        anchor::IDENTITIES,
        ring.delta == delta_formula && product && factor_d && factor_delta,
        "curve discriminant equals q4^2(16 q2^2 - 64 q4); 64·Delta·w(Delta) = D^3; Delta = q4·D and D^2 = 16(q2^2 - 4 q4)·Delta"
            .to_string(),
    ));

    let s4 = invariant_subspace(ring, &w, 4, 0).len();
    let s8 = invariant_subspace(ring, &w, 8, 0).len();
    out.push(verdict(
        "invariants.level2.subspace".to_string(),
        anchor::INV_SUBSPACE,
        s4 == 1 && s8 == 2,
        format!("fixed spaces: weight 4 dimension {s4} (span q2^2); weight 8 dimension {s8} (span q2^4, q2^4 - r4^2)"),
    ));

    let generated = check_generation(ring, &w, core::slice::from_ref(&q2), max_weight, max_denom);
    out.push(verdict(
        "invariants.level2.generation".to_string(),
        anchor::GENERATION,
        generated == Ok(true),
        format!(
            "w-invariants generated by q2 and D^(+-1) with D = q2^4 - r4^2, up to weight {max_weight}, denominator exponent {max_denom}"
        ),
    ));

    out.push(verdict(
        "invariants.level2.integrality".to_string(),
        anchor::INTEGRALITY,
        p_integrality(&[q2, ring.unit.clone(), ring.delta.clone()], p),
        format!("generator coefficients have denominators coprime to p = {p}"),
    ));

    out.push(flagged(
        "invariants.level2.degree".to_string(),
        anchor::GENERATION,
        "stated generator degrees give |D| = 8, while the verified generator q2^4 - r4^2 has topological degree 16 (modular weight 8); recorded without guessing intent"
            .to_string(),
    ));

    out
}

fn level3_checks(ring: &GradedRing, p: u64, max_weight: u32, max_denom: u32) -> Vec<CheckResult> {
    let u = ring.var(0);
    let v = ring.var(1);
    let s = ring.var(2);
    let tstar = graded::tstar_level3(ring);
    let w = fricke_for_level(ring).expect("level 3 has a Fricke involution");
    let mut out = Vec::new();

    out.push(verdict(
        "invariants.level3.tsquared".to_string(),
        anchor::T_SQUARED,
        check_t_squared(ring, &tstar, 3),
        "t(a1^2) = -3 a1^2, t(a1a3) = 1/3 a1^4 - 9 a1a3, t(a3^2) = -1/27 a1^6 + 2 a1^3a3 - 27 a3^2; t∘t multiplies weight-k generators by 3^k"
            .to_string(),
    ));

    let img_v = &u.pow(2).scale(&ratio(1, 27)) - &v;
    let img_s = &(&u.pow(3).scale(&ratio(1, 729)) - &(&u * &v).scale(&ratio(2, 27))) + &s;
    let images_ok = w.images[0] == u && w.images[1] == img_v && w.images[2] == img_s;
    let involution_ok = (0..3).all(|i| apply(ring, &w, &w.images[i]) == ring.var(i));
    out.push(verdict(
        "invariants.level3.fricke".to_string(),
        anchor::FRICKE,
        images_ok && involution_ok && is_invariant(ring, &w, &ring.unit),
        "w fixes a1^2 (w(a1^2) = t(a1^2)/(-3) = a1^2; a sign flip would need t(a1^2) = +3 a1^2, contradicting the verified self-map); w(a1a3) = 1/27 a1^4 - a1a3; w(a3^2) = 1/729 a1^6 - 2/27 a1^3a3 + a3^2; w∘w = id; w(D) = D"
            .to_string(),
    ));

    let delta_formula = &(&(&u * &v) * &s) - &s.pow(2).scale(&rat(27));
    let wd = apply(ring, &w, &ring.delta);
    let scale = Rat::from_integer(Int::from(2).pow(8) * Int::from(3).pow(18));
    let product = verify_identity(
        ring,
        &(&ring.delta * &wd).scale(&scale),
        &ring.unit.pow(4),
    ) == Ok(true);
    let d2_cleared = &(&u.pow(3) - &(&u * &v).scale(&rat(108))) + &s.scale(&rat(2916));
    let d2_identity = verify_identity(ring, &(&u.pow(3) - &d2_cleared), &ring.unit) == Ok(true);
    let d2_invariant = is_invariant(ring, &w, &d2_cleared);
    let factor_d = verify_identity(ring, &ring.delta.scale(&rat(108)), &(&s * &ring.unit))
        == Ok(true);
    let cof = &(&u.pow(3) - &(&u * &v).scale(&rat(54))) + &s.scale(&rat(729));
    let factor_delta = verify_identity(
        ring,
        &ring.unit.pow(3),
        &(&cof * &ring.delta).scale(&Rat::from_integer(Int::from(108).pow(3))),
    ) == Ok(true);
    out.push(verdict(
        "invariants.level3.delta".to_string(),
        anchor::IDENTITIES,
        ring.delta == delta_formula && product && d2_identity && d2_invariant && factor_d && factor_delta,
        "curve discriminant equals a1^3a3^3 - 27 a3^4; 2^8·3^18·Delta·w(Delta) = D^4 with D = 108 a3(a1^3 - 27 a3); a1^6 - (54 a3 - a1^3)^2 = D and the subtrahend is w-invariant; 108·Delta = a3^2·D and D^3 = 108^3(a1^6 - 54 a1^3a3 + 729 a3^2)·Delta"
            .to_string(),
    ));

    let combined = cyclotomic_invariant_subspace(ring, 3, Some(&w), 6, 0).unwrap();
    let empty4 = cyclotomic_invariant_subspace(ring, 3, Some(&w), 4, 0)
        .unwrap()
        .is_empty();
    out.push(verdict(
        "invariants.level3.subspace".to_string(),
        anchor::CYCLOTOMIC,
        combined.len() == 2 && empty4,
        "order-3 character with the involution: weight-6 fixed space has dimension 2 (span a1^6, D); admissible weights are multiples of 3 in modular weight, i.e. topological degree divisible by 6 on the even generators"
            .to_string(),
    ));

    let generated = check_cyclotomic_generation(ring, 6, Some(&w), &[u.pow(3)], max_weight, max_denom);
    out.push(verdict(
        "invariants.level3.generation".to_string(),
        anchor::GENERATION,
        generated == Ok(true),
        format!(
            "order-6 invariants generated by a1^6 and D^(+-1), up to weight {max_weight}, denominator exponent {max_denom}"
        ),
    ));

    out.push(verdict(
        "invariants.level3.integrality".to_string(),
        anchor::INTEGRALITY,
        p_integrality(&[u.pow(3), ring.unit.clone(), ring.delta.clone()], p),
        format!("generator coefficients have denominators coprime to p = {p}"),
    ));

    out
}

/// q-series checks: the discriminant product formula against the
/// Eisenstein combination, and the Eisenstein normalizations.
pub fn qseries_checks(prec: usize) -> Result<Vec<CheckResult>, WeierstrassError> {
    let delta = delta_qseries(prec)?;
    let e4 = eisenstein(4, prec)?;
    let e6 = eisenstein(6, prec)?;
    let mut combo = e4.mul(&e4).mul(&e4).sub(&e6.mul(&e6));
    combo = combo.scale(&ratio(1, 1728));
    let agree = (0..prec).all(|i| delta.coeff(i) == combo.coeff(i));
    let mut tau_text = String::new();
    for i in 0..prec.min(9) {
        let _ = write!(tau_text, "{}{}", if i == 0 { "" } else { ", " }, delta.coeff(i));
    }
    let norms_ok = e4.coeff(0) == Rat::one()
        && e4.coeff(1) == rat(240)
        && e6.coeff(0) == Rat::one()
        && e6.coeff(1) == rat(-504);
    Ok(vec![
        verdict(
            "qseries.delta".to_string(),
            anchor::Q_ORACLE,
            agree,
            format!(
                "q·prod(1-q^n)^24 = (E4^3 - E6^2)/1728 to precision {prec}; leading coefficients {tau_text}"
            ),
        ),
        verdict(
            "qseries.eisenstein".to_string(),
            anchor::EISENSTEIN,
            norms_ok,
            "E4 = 1 + 240 q + ...; E6 = 1 - 504 q + ...".to_string(),
        ),
    ])
}

/// The symbolic Tate-quantity identity over fully generic coefficients.
pub fn weierstrass_checks() -> Vec<CheckResult> {
    let inv = curve_invariants(&generic_coeffs());
    let identity = &inv.c4.pow(3) - &inv.c6.pow(2) == inv.delta.scale(&rat(1728));
    let weights = [1u32, 2, 3, 4, 6];
    let graded_ok = inv.c4.weight(&weights) == Some(4)
        && inv.c6.weight(&weights) == Some(6)
        && inv.delta.weight(&weights) == Some(12);
    vec![verdict(
        "weierstrass.symbolic".to_string(),
        anchor::TATE_QUANTITIES,
        identity && graded_ok,
        "c4^3 - c6^2 = 1728·Delta for symbolic a1, a2, a3, a4, a6; weights 4, 6, 12 under wt(ai) = i"
            .to_string(),
    )]
}

/// The one global flagged record for the unit-index reading.
fn index_reading_flag() -> CheckResult {
    flagged(
        "hermitian.indexef".to_string(),
        anchor::CLASS_GU,
        "stated intermediate value 2 for the unit-index factor versus the derived 2^(u-1); only the end-to-end equality h(GU) = h(F) is asserted, and it holds for every field scanned"
            .to_string(),
    )
}

/// The splitting certificate for the default working prime.
fn splitting_check(n: u64) -> CheckResult {
    let k = field(n);
    let p = default_lemma_prime(n);
    let ok = split_prime(&k, p) == Ok(Splitting::Split) && legendre(&k.disc(), p) == 1;
    verdict(
        format!("classgroup.split.n{n:02}"),
        anchor::FIELD_SPLIT,
        ok,
        format!(
            "p = {p} factors into two distinct conjugate primes: legendre({}, {p}) = 1",
            k.disc()
        ),
    )
}

/// Every check for every squarefree N ≤ max_n, with default parameters.
pub fn verify_all(max_n: u64) -> Report {
    let mut checks = Vec::new();
    checks.push(index_reading_flag());
    checks.extend(weierstrass_checks());
    checks.extend(qseries_checks(64).expect("precision is positive"));

    for n in 1..=max_n {
        if !is_squarefree(n) {
            continue;
        }
        checks.extend(classgroup_checks(n));
        checks.extend(lattice_checks(n));
        checks.extend(cm_checks(n));
        if let Some((p, aux)) = hondatate_defaults(n) {
            checks.extend(
                hondatate_checks(n, p, &aux).expect("default parameters are admissible"),
            );
        }
        if n <= 3 {
            checks.extend(invariants_checks(n as u8, None, 24, 2));
        }
    }

    Report::new(checks)
}

/// Structural description of one stack in the theorem case split.
#[derive(Serialize, Clone, Debug)]
pub struct StackDescriptor {
    pub descriptor: String,
    pub ring: String,
    pub status: Status,
}

/// The case-split summary for one field, keyed by N (and the working prime
/// when supplied).
#[derive(Serialize, Clone, Debug)]
pub struct TheoremReport {
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub paper_ref: String,
    pub h: u64,
    pub sh_k0: StackDescriptor,
    pub sh_k1_component: StackDescriptor,
}

impl TheoremReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Build the case-split summary. A supplied prime must be > 3 and split.
pub fn theorem_report(n: u64, p: Option<u64>) -> Result<TheoremReport, String> {
    let k = QuadField::new(n).map_err(|e| e.to_string())?;
    if let Some(p) = p {
        if !is_prime(p) {
            return Err(format!("p = {p} is not prime"));
        }
        if p <= 3 {
            return Err(format!("p = {p} violates the hypothesis p > 3"));
        }
        match split_prime(&k, p) {
            Ok(Splitting::Split) => {}
            Ok(s) => {
                return Err(format!(
                    "p = {p} is {s} in Q(sqrt(-{n})); the hypotheses require a split prime"
                ))
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    let h = class_group(&k).h;
    let (k0, k1) = match n {
        1 => (
            StackDescriptor {
                descriptor: "GaloisCover(2)".to_string(),
                ring: "c4,c6^2".to_string(),
                status: Status::Pass,
            },
            StackDescriptor {
                descriptor: "GaloisCover(2)".to_string(),
                ring: "c4,c6^2".to_string(),
                status: Status::Pass,
            },
        ),
        3 => (
            StackDescriptor {
                descriptor: "GaloisCover(3)".to_string(),
                ring: "c4^3,c6".to_string(),
                status: Status::Pass,
            },
            StackDescriptor {
                descriptor: "GaloisCover(3)".to_string(),
                ring: "a1^6,D3".to_string(),
                status: Status::Pass,
            },
        ),
        2 => (
            StackDescriptor {
                descriptor: "Components(1)".to_string(),
                ring: "c4,c6".to_string(),
                status: Status::Pass,
            },
            StackDescriptor {
                descriptor: "Components(1)".to_string(),
                ring: "q2,D2".to_string(),
                status: Status::Pass,
            },
        ),
        _ => (
            StackDescriptor {
                descriptor: format!("Components({h})"),
                ring: "c4,c6".to_string(),
                status: Status::Pass,
            },
            StackDescriptor {
                descriptor: "Components(1)".to_string(),
                ring: "involution-invariants only".to_string(),
                status: Status::Flagged,
            },
        ),
    };
    Ok(TheoremReport {
        n,
        p,
        paper_ref: anchor::THEOREM.to_string(),
        h,
        sh_k0: k0,
        sh_k1_component: k1,
    })
}

/// One-field report bundles for the narrow subcommands.
pub fn single_area_report(checks: Vec<CheckResult>) -> Report {
    Report::new(checks)
}
