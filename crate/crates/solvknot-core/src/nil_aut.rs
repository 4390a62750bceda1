//! Automorphisms of Gamma(e, eta): the k[m,n] family with its parameter
//! solver, the named automorphisms b and r, inner recognition through the
//! planar image, the outer automorphism table, meridianal classes, weight
//! orbit normal forms u^n t, centralizer/normalizer comparisons for the
//! meridianal twists, and the certificates for the tau_2 symmetry.
//!
//! An automorphism is stored by its images of (u, v, z); the induced
//! element of N_{Aff(2)}(P) (its *planar image*) is the canonical handle
//! for outer-class computations, since the map Aut(Gamma) -> Aut(P) is
//! injective. The (s, t, p) parameters of k[m,n] are solved for inside the
//! faithful Aff(Nil) model rather than taken from any closed formula; a
//! comparison report records which closed-form variants the solved values
//! agree with.

use crate::affine::AffineIso;
use crate::group_table::FiniteGroupTable;
use crate::imat::solve_integer;
use crate::imat::IMat;
use crate::lattice::IntegerLattice;
use crate::nil_group::{
    beta_matrix, gamma_membership, key2, mat2, mul2, point_group_d, rho_matrix, wallpaper_p,
    AffNilElement, GammaGroup, NilAutomorphism, NilError, NilPoint,
};
use crate::qmat::{qvec_sub, QMat, QVec};
use crate::rat::{is_int, rat, ratio, to_i64, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

// ---------------------------------------------------------------------------
// GammaAutomorphism
// ---------------------------------------------------------------------------

/// An automorphism of Gamma(e, eta), stored by the images of the three
/// generators u, v, z (as elements of the faithful Aff(Nil) embedding).
#[derive(Clone, Debug)]
pub struct GammaAutomorphism {
    pub owner: (i64, i64),
    pub iu: AffNilElement,
    pub iv: AffNilElement,
    pub iz: AffNilElement,
    pub name: Option<String>,
}

fn check_owner(g: &GammaGroup, phi: &GammaAutomorphism) -> Result<(), NilError> {
    if phi.owner != (g.e, g.eta) {
        return Err(NilError::OwnerMismatch);
    }
    Ok(())
}

/// Constructs an automorphism from generator images, verifying at build
/// time that the images lie in Gamma, satisfy the three defining relators,
/// act invertibly on H1, and have a planar image in the normalizer of P.
pub fn aut_from_images(
    g: &GammaGroup,
    iu: AffNilElement,
    iv: AffNilElement,
    iz: AffNilElement,
    name: Option<String>,
) -> Result<GammaAutomorphism, NilError> {
    for img in [&iu, &iv, &iz] {
        gamma_membership(g, img)?;
    }
    let eta = g.eta;
    let rel1 = iz.mul(&iu).mul(&iz.inverse()) == iv;
    let rel2 = iz.mul(&iv).mul(&iz.inverse())
        == iv
            .inverse()
            .mul(&iu.inverse())
            .mul(&iz.pow(3 * eta - 3));
    let rel3 = iv.mul(&iu).mul(&iv.inverse()).mul(&iu.inverse()) == iz.pow(3 * eta * g.q);
    if !(rel1 && rel2 && rel3) {
        return Err(NilError::NotMember(
            "generator images do not satisfy the defining relators".into(),
        ));
    }
    let phi = GammaAutomorphism {
        owner: (g.e, g.eta),
        iu,
        iv,
        iz,
        name,
    };
    if !h1_acts_invertibly(g, &phi)? {
        return Err(NilError::NotMember(
            "induced map on H1 is not invertible".into(),
        ));
    }
    let img = aut_p_image(g, &phi)?;
    if !wallpaper_p().normalizes(&img) {
        return Err(NilError::NotMember(
            "planar image does not normalize P".into(),
        ));
    }
    Ok(phi)
}

pub fn identity_aut(g: &GammaGroup) -> GammaAutomorphism {
    GammaAutomorphism {
        owner: (g.e, g.eta),
        iu: g.u.clone(),
        iv: g.v.clone(),
        iz: g.z.clone(),
        name: Some("id".into()),
    }
}

/// The inner automorphism c_g of conjugation by an element of Gamma.
pub fn conj_aut(g: &GammaGroup, by: &AffNilElement) -> Result<GammaAutomorphism, NilError> {
    let inv = by.inverse();
    aut_from_images(
        g,
        by.mul(&g.u).mul(&inv),
        by.mul(&g.v).mul(&inv),
        by.mul(&g.z).mul(&inv),
        None,
    )
}

/// Applies the automorphism to an arbitrary element of Gamma by collecting
/// it into normal form and substituting the generator images.
pub fn aut_apply(
    g: &GammaGroup,
    phi: &GammaAutomorphism,
    elt: &AffNilElement,
) -> Result<AffNilElement, NilError> {
    check_owner(g, phi)?;
    let nf = gamma_membership(g, elt)?;
    Ok(phi
        .iz
        .pow(nf.r)
        .mul(&phi.iu.pow(nf.a))
        .mul(&phi.iv.pow(nf.b))
        .mul(&phi.iz.pow(3 * nf.c)))
}

/// Composition, applying `second` first: (first ∘ second)(x) = first(second(x)).
pub fn aut_compose(
    g: &GammaGroup,
    first: &GammaAutomorphism,
    second: &GammaAutomorphism,
) -> Result<GammaAutomorphism, NilError> {
    check_owner(g, first)?;
    check_owner(g, second)?;
    aut_from_images(
        g,
        aut_apply(g, first, &second.iu)?,
        aut_apply(g, first, &second.iv)?,
        aut_apply(g, first, &second.iz)?,
        None,
    )
}

/// Equality of automorphisms = equality of the three generator images.
pub fn aut_equal(a: &GammaAutomorphism, b: &GammaAutomorphism) -> bool {
    a.owner == b.owner && a.iu == b.iu && a.iv == b.iv && a.iz == b.iz
}

pub fn aut_is_identity(g: &GammaGroup, phi: &GammaAutomorphism) -> bool {
    phi.iu == g.u && phi.iv == g.v && phi.iz == g.z
}

// ---------------------------------------------------------------------------
// The planar image in N_{Aff(2)}(P)
// ---------------------------------------------------------------------------

/// The element of N_{Aff(2)}(P) inducing the same automorphism of P: the
/// linear part A sends e1, e2 to the planar translations of the u- and
/// v-images, and the translation part w is the unique solution of
/// (I - B') w = t', where (t', B') is the planar image of the z-image.
/// Uniqueness holds because B' is conjugate to -beta, which has no fixed
/// vectors, matching the triviality of C_{Aff(2)}(P).
pub fn aut_p_image(g: &GammaGroup, phi: &GammaAutomorphism) -> Result<AffineIso, NilError> {
    check_owner(g, phi)?;
    let pu = phi.iu.planar_image();
    let pv = phi.iv.planar_image();
    let pz = phi.iz.planar_image();
    if !pu.a.is_identity() || !pv.a.is_identity() {
        return Err(NilError::NotMember(
            "u and v images must be planar translations".into(),
        ));
    }
    let a = QMat::from_rows(vec![
        vec![pu.v[0].clone(), pv.v[0].clone()],
        vec![pu.v[1].clone(), pv.v[1].clone()],
    ]);
    let neg_beta = beta_matrix().neg();
    let a_inv = a
        .inverse()
        .ok_or_else(|| NilError::NotMember("degenerate planar linear part".into()))?;
    if a.mul(&neg_beta).mul(&a_inv) != pz.a {
        return Err(NilError::NotMember(
            "planar linear parts are not conjugate correctly".into(),
        ));
    }
    let i_minus_bz = QMat::identity(2).sub(&pz.a);
    let w = i_minus_bz
        .inverse()
        .expect("I - B' is invertible for B' of order 3 without fixed vectors")
        .mul_vec(&pz.v);
    Ok(AffineIso::new(w, a))
}

// ---------------------------------------------------------------------------
// H1 functor
// ---------------------------------------------------------------------------

/// Image of an element in the coordinates (u-and-v total, z total) of the
/// abelianization presented as Z^2 / relations.
pub fn h1_vec(g: &GammaGroup, elt: &AffNilElement) -> Result<[i64; 2], NilError> {
    let nf = gamma_membership(g, elt)?;
    Ok([nf.a + nf.b, nf.r + 3 * nf.c])
}

/// The relation lattice of H1(Gamma) in (u, z) coordinates.
pub fn h1_relation_lattice(g: &GammaGroup) -> IntegerLattice {
    IntegerLattice::from_generators(
        2,
        &[
            vec![3, -(3 * g.eta - 3)],
            vec![0, 3 * g.eta * g.q],
        ],
    )
}

/// The matrix of the induced endomorphism of H1 (columns: images of u, z).
pub fn h1_matrix(g: &GammaGroup, phi: &GammaAutomorphism) -> Result<IMat, NilError> {
    let hu = h1_vec(g, &phi.iu)?;
    let hz = h1_vec(g, &phi.iz)?;
    Ok(IMat::from_rows(&[vec![hu[0], hz[0]], vec![hu[1], hz[1]]]))
}

fn surjective_mod_relations(m: &IMat, rel: &IntegerLattice) -> bool {
    let mut gens: Vec<Vec<i64>> = vec![
        vec![m.row(0)[0], m.row(1)[0]],
        vec![m.row(0)[1], m.row(1)[1]],
    ];
    gens.extend(rel.basis.iter().cloned());
    let lat = IntegerLattice::from_generators(2, &gens);
    lat.contains(&[1, 0]) && lat.contains(&[0, 1])
}

pub fn h1_acts_invertibly(g: &GammaGroup, phi: &GammaAutomorphism) -> Result<bool, NilError> {
    let m = h1_matrix(g, phi)?;
    Ok(surjective_mod_relations(&m, &h1_relation_lattice(g)))
}

/// Meridianal test: H1(phi) - I must act invertibly on the finite group
/// Z/3 + Z/3|q|.
pub fn is_meridianal(g: &GammaGroup, phi: &GammaAutomorphism) -> Result<bool, NilError> {
    let m = h1_matrix(g, phi)?;
    let mi = IMat::from_rows(&[
        vec![m.row(0)[0] - 1, m.row(0)[1]],
        vec![m.row(1)[0], m.row(1)[1] - 1],
    ]);
    Ok(surjective_mod_relations(&mi, &h1_relation_lattice(g)))
}

// ---------------------------------------------------------------------------
// k[m,n] and the named automorphisms
// ---------------------------------------------------------------------------

/// Solved integer parameters for k[m,n]: u -> u z^{3 eta s},
/// v -> v z^{3 eta t}, z -> z^{3 eta p + 1} u^m v^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KParams {
    pub m: i64,
    pub n: i64,
    pub s: i64,
    pub t: i64,
    pub p: i64,
}

fn central_shift(g: &GammaGroup, r: &Rat) -> AffNilElement {
    // z^{3 eta s} is the central translation [0, 0, -s/q].
    AffNilElement::translation(NilPoint::new(
        Rat::zero(),
        Rat::zero(),
        -r.clone() / rat(g.q),
    ))
}

fn k_images_rational(
    g: &GammaGroup,
    m: i64,
    n: i64,
    s: &Rat,
    t: &Rat,
    p: &Rat,
) -> (AffNilElement, AffNilElement, AffNilElement) {
    let iu = g.u.mul(&central_shift(g, s));
    let iv = g.v.mul(&central_shift(g, t));
    let iz = central_shift(g, p)
        .mul(&g.z)
        .mul(&g.u.pow(m))
        .mul(&g.v.pow(n));
    (iu, iv, iz)
}

/// The three relator residuals of the candidate images, which must all be
/// the identity. Their central coordinates are affine in (s, t, p); the
/// planar and automorphism parts are independent of (s, t, p).
fn k_residual_w(g: &GammaGroup, m: i64, n: i64, s: &Rat, t: &Rat, p: &Rat) -> [Rat; 3] {
    let eta = g.eta;
    let (iu, iv, iz) = k_images_rational(g, m, n, s, t, p);
    let r1 = iz.mul(&iu).mul(&iz.inverse()).mul(&iv.inverse());
    let r2 = iz
        .mul(&iv)
        .mul(&iz.inverse())
        .mul(&iz.pow(3 - 3 * eta))
        .mul(&iu)
        .mul(&iv);
    let r3 = iv
        .mul(&iu)
        .mul(&iv.inverse())
        .mul(&iu.inverse())
        .mul(&iz.pow(-3 * eta * g.q));
    for r in [&r1, &r2, &r3] {
        assert!(
            r.sigma.is_identity() && r.n.x.is_zero() && r.n.y.is_zero(),
            "relator residual must be central for all (s, t, p)"
        );
    }
    [r1.n.w.clone(), r2.n.w.clone(), r3.n.w.clone()]
}

/// Solves for rational (s, t, p) making the k[m,n] images relator-exact.
fn k_solve_rational(g: &GammaGroup, m: i64, n: i64) -> Option<[Rat; 3]> {
    let zero = Rat::zero();
    let one = Rat::one();
    let base = k_residual_w(g, m, n, &zero, &zero, &zero);
    let es = k_residual_w(g, m, n, &one, &zero, &zero);
    let et = k_residual_w(g, m, n, &zero, &one, &zero);
    let ep = k_residual_w(g, m, n, &zero, &zero, &one);
    let rows: Vec<QVec> = (0..3)
        .map(|i| {
            vec![
                &es[i] - &base[i],
                &et[i] - &base[i],
                &ep[i] - &base[i],
            ]
        })
        .collect();
    let mat = QMat::from_rows(rows);
    let rhs: QVec = base.iter().map(|w| -w.clone()).collect();
    let (part, kernel) = mat.solve(&rhs)?;
    assert!(
        kernel.is_empty(),
        "the k[m,n] parameter system must determine (s, t, p) uniquely"
    );
    Some([part[0].clone(), part[1].clone(), part[2].clone()])
}

/// Integer parameters for k[m,n], or an error when none exist (for
/// eta = -1 exactly the case m + n not divisible by 3).
pub fn k_solve(g: &GammaGroup, m: i64, n: i64) -> Result<KParams, NilError> {
    let stp = k_solve_rational(g, m, n).ok_or(NilError::KNotIntegral(m, n))?;
    if !stp.iter().all(is_int) {
        return Err(NilError::KNotIntegral(m, n));
    }
    Ok(KParams {
        m,
        n,
        s: to_i64(&stp[0]),
        t: to_i64(&stp[1]),
        p: to_i64(&stp[2]),
    })
}

/// The automorphism k[m,n], built from the solved integer parameters.
pub fn k_make(g: &GammaGroup, m: i64, n: i64) -> Result<GammaAutomorphism, NilError> {
    let kp = k_solve(g, m, n)?;
    let eta = g.eta;
    aut_from_images(
        g,
        g.u.mul(&g.z.pow(3 * eta * kp.s)),
        g.v.mul(&g.z.pow(3 * eta * kp.t)),
        g.z.pow(3 * eta * kp.p + 1).mul(&g.u.pow(m)).mul(&g.v.pow(n)),
        Some(format!("k[{},{}]", m, n)),
    )
}

/// Comparison of the solved (s, t, p) against the closed-form candidates
/// in circulation for eta = +1. One display substitutes q = 3e (which
/// contradicts q = 3e - eta - 2 = 3e - 3) and reads s = (m-2n)e,
/// t = -(m+n)e. Eliminating the linear constraint system s - t = -nq,
/// s + 2t = mq directly instead gives s = (m-2n) q/3, t = +(m+n) q/3.
/// The report records which candidate the faithful model agrees with.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct KVariantReport {
    pub params: KParams,
    pub satisfies_linear_constraints: bool,
    pub satisfies_p_constraint: bool,
    /// eta = +1 only: s == (m - 2n) e and t == -(m + n) e
    pub matches_printed_display: Option<bool>,
    /// eta = +1 only: s == (m - 2n) q/3 and t == +(m + n) q/3, with q/3 = e - 1
    pub matches_q_scaled_form: Option<bool>,
}

pub fn k_variant_report(g: &GammaGroup, m: i64, n: i64) -> Result<KVariantReport, NilError> {
    let kp = k_solve(g, m, n)?;
    let q = g.q;
    let lin = kp.s - kp.t == -n * q && kp.s + 2 * kp.t == m * q;
    let pcon = 6 * kp.p == (m + n) * ((m + n - 1) * q + 2 * (g.eta - 1));
    let (printed, scaled) = if g.eta == 1 {
        let q3 = q / 3;
        (
            Some(kp.s == (m - 2 * n) * g.e && kp.t == -(m + n) * g.e),
            Some(kp.s == (m - 2 * n) * q3 && kp.t == (m + n) * q3),
        )
    } else {
        (None, None)
    };
    Ok(KVariantReport {
        params: kp,
        satisfies_linear_constraints: lin,
        satisfies_p_constraint: pcon,
        matches_printed_display: printed,
        matches_q_scaled_form: scaled,
    })
}

/// The named automorphisms b, r, c_u, c_v, c_z.
pub struct NamedAuts {
    pub b: GammaAutomorphism,
    pub r: GammaAutomorphism,
    pub c_u: GammaAutomorphism,
    pub c_v: GammaAutomorphism,
    pub c_z: GammaAutomorphism,
}

pub fn named_auts(g: &GammaGroup) -> Result<NamedAuts, NilError> {
    let eta = g.eta;
    let b = aut_from_images(
        g,
        g.v.inverse().mul(&g.z.pow(3 * eta * g.e - 3)),
        g.u.mul(&g.v).mul(&g.z.pow(3 * eta * (g.e - 1))),
        g.z.clone(),
        Some("b".into()),
    )?;
    let r = aut_from_images(
        g,
        g.v.inverse(),
        g.u.inverse(),
        g.z.inverse(),
        Some("r".into()),
    )?;
    let mut c_u = conj_aut(g, &g.u)?;
    c_u.name = Some("c_u".into());
    let mut c_v = conj_aut(g, &g.v)?;
    c_v.name = Some("c_v".into());
    let mut c_z = conj_aut(g, &g.z)?;
    c_z.name = Some("c_z".into());
    Ok(NamedAuts { b, r, c_u, c_v, c_z })
}

/// Iterated self-composition.
pub fn aut_pow(
    g: &GammaGroup,
    phi: &GammaAutomorphism,
    k: u32,
) -> Result<GammaAutomorphism, NilError> {
    let mut acc = identity_aut(g);
    for _ in 0..k {
        acc = aut_compose(g, &acc, phi)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Inner recognition and outer classes
// ---------------------------------------------------------------------------

/// Tests whether phi is inner; on success returns a conjugator in Gamma
/// (verified exactly). The planar image decides: phi is inner exactly when
/// its planar image lies in P itself.
pub fn is_inner(
    g: &GammaGroup,
    phi: &GammaAutomorphism,
) -> Result<Option<AffNilElement>, NilError> {
    let img = aut_p_image(g, phi)?;
    if !img.v.iter().all(is_int) {
        return Ok(None);
    }
    let neg_beta = key2(&beta_matrix().neg());
    let mut pw = [1, 0, 0, 1];
    let mut kk = None;
    for k in 0..3 {
        if mat2(&pw) == img.a {
            kk = Some(k);
            break;
        }
        pw = mul2(&pw, &neg_beta);
    }
    let Some(k) = kk else {
        return Ok(None);
    };
    let cand = g
        .u
        .pow(to_i64(&img.v[0]))
        .mul(&g.v.pow(to_i64(&img.v[1])))
        .mul(&g.z.pow(k));
    let c = conj_aut(g, &cand)?;
    if aut_equal(&c, phi) {
        Ok(Some(cand))
    } else {
        Ok(None)
    }
}

/// Canonical label of the outer class of an automorphism: the translation
/// residue of the planar image in thirds modulo Z^2, together with the
/// lexicographically least representative of the linear part's coset
/// modulo <-beta>. Two automorphisms have equal labels exactly when they
/// differ by an inner automorphism.
pub type OutLabel = ([i64; 2], [i64; 4]);

pub fn outer_label(g: &GammaGroup, phi: &GammaAutomorphism) -> Result<OutLabel, NilError> {
    let img = aut_p_image(g, phi)?;
    let mut w3 = [0i64; 2];
    for (i, x) in img.v.iter().enumerate() {
        let t = x.clone() * rat(3);
        assert!(is_int(&t), "planar translations lie in (1/3)Z^2");
        w3[i] = to_i64(&t).rem_euclid(3);
    }
    let neg_beta = key2(&beta_matrix().neg());
    let mut a = key2(&img.a);
    let mut best = a;
    for _ in 0..2 {
        a = mul2(&a, &neg_beta);
        best = best.min(a);
    }
    Ok((w3, best))
}

/// The outer automorphism group of Gamma as an explicit table of outer
/// class labels, with one representative automorphism per class.
pub struct OutGammaTable {
    pub labels: Vec<OutLabel>,
    pub reps: Vec<GammaAutomorphism>,
    pub table: FiniteGroupTable,
}

impl OutGammaTable {
    pub fn index_of(&self, label: &OutLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Closes {[id], [b], [r], [k[1,0]] when defined} under composition modulo
/// inner automorphisms. The safety bound of 48 classes converts a
/// canonicalization bug into a diagnosable error.
pub fn out_gamma(g: &GammaGroup) -> Result<OutGammaTable, NilError> {
    let na = named_auts(g)?;
    let mut gens = vec![identity_aut(g), na.b, na.r];
    if let Ok(k) = k_make(g, 1, 0) {
        gens.push(k);
    }
    let mut reps: BTreeMap<OutLabel, GammaAutomorphism> = BTreeMap::new();
    for a in gens {
        let l = outer_label(g, &a)?;
        reps.entry(l).or_insert(a);
    }
    loop {
        let snapshot: Vec<GammaAutomorphism> = reps.values().cloned().collect();
        let before = reps.len();
        for a in &snapshot {
            for b in &snapshot {
                let p = aut_compose(g, a, b)?;
                let l = outer_label(g, &p)?;
                reps.entry(l).or_insert(p);
                if reps.len() > 48 {
                    return Err(NilError::OuterClosureBound);
                }
            }
        }
        if reps.len() == before {
            break;
        }
    }
    let labels: Vec<OutLabel> = reps.keys().copied().collect();
    let order: Vec<GammaAutomorphism> = labels.iter().map(|l| reps[l].clone()).collect();
    let index: BTreeMap<OutLabel, usize> =
        labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let n = labels.len();
    let mut mul = vec![vec![0usize; n]; n];
    for (i, a) in order.iter().enumerate() {
        for (j, b) in order.iter().enumerate() {
            let l = outer_label(g, &aut_compose(g, a, b)?)?;
            mul[i][j] = index[&l];
        }
    }
    let id = (0..n)
        .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
        .expect("outer closure contains the identity class");
    let inv: Vec<usize> = (0..n)
        .map(|x| (0..n).find(|&y| mul[x][y] == id).expect("inverse class"))
        .collect();
    Ok(OutGammaTable {
        labels,
        reps: order,
        table: FiniteGroupTable { size: n, mul, inv, id },
    })
}

// ---------------------------------------------------------------------------
// F subgroup report
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FSubgroupReport {
    pub eta: i64,
    /// (m, n) pairs in the box {-3..3}^2 for which k[m,n] exists
    pub success_count: usize,
    pub all_succeed: bool,
    /// success holds exactly when m + n = 0 (mod 3)
    pub success_iff_mod3: bool,
    /// eta = +1: the index vectors of k[1,0] and c_u span all of Z^2
    pub k_cu_span_full: bool,
    /// eta = -1: the index vectors of c_u and c_v span an index 3 sublattice
    pub cu_cv_index: Option<u64>,
    pub k00_is_identity: bool,
}

pub fn f_subgroup(g: &GammaGroup) -> Result<FSubgroupReport, NilError> {
    let mut success_count = 0usize;
    let mut all = true;
    let mut iff3 = true;
    for m in -3..=3i64 {
        for n in -3..=3i64 {
            let ok = k_make(g, m, n).is_ok();
            if ok {
                success_count += 1;
            } else {
                all = false;
            }
            if ok != ((m + n).rem_euclid(3) == 0) {
                iff3 = false;
            }
        }
    }
    let full = IntegerLattice::full(2);
    let k_cu = IntegerLattice::from_generators(2, &[vec![1, 0], vec![-2, -1]]);
    let cu_cv = IntegerLattice::from_generators(2, &[vec![-2, -1], vec![1, -1]]);
    let k00 = k_make(g, 0, 0)?;
    Ok(FSubgroupReport {
        eta: g.eta,
        success_count,
        all_succeed: all,
        success_iff_mod3: iff3,
        k_cu_span_full: k_cu == full,
        cu_cv_index: cu_cv.index_in(&full).ok(),
        k00_is_identity: aut_is_identity(g, &k00),
    })
}

// ---------------------------------------------------------------------------
// Meridianal classes
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeridianalGammaReport {
    /// number of outer classes up to conjugacy and inversion that consist
    /// of meridianal automorphisms
    pub meridianal_class_count: usize,
    pub meridianal_class_contains_r: bool,
    /// orders (in Out) of one representative per meridianal class, sorted;
    /// eta = +1 yields [2, 6]: besides the central class [r], the order-6
    /// class of r.k[1,0] is also meridianal
    pub meridianal_rep_orders: Vec<usize>,
    /// H1 verdict for the composite r.k[1,0] (absent when k is undefined)
    pub rk_is_meridianal: Option<bool>,
    pub identity_is_meridianal: bool,
    pub b_cubed_is_meridianal: bool,
}

pub fn meridianal_classes_gamma(
    g: &GammaGroup,
    out: &OutGammaTable,
) -> Result<MeridianalGammaReport, NilError> {
    let t = &out.table;
    let merid: Vec<bool> = out
        .reps
        .iter()
        .map(|phi| is_meridianal(g, phi))
        .collect::<Result<_, _>>()?;
    // meridianality is an outer-class invariant and is preserved both by
    // conjugation and by inversion, so classes merge consistently
    let classes = t.conjugacy_classes();
    let class_of = |x: usize| -> usize {
        classes
            .iter()
            .position(|c| c.contains(&x))
            .expect("every element lies in a class")
    };
    let mut merged: Vec<BTreeSet<usize>> = Vec::new();
    let mut seen = vec![false; classes.len()];
    for (i, c) in classes.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let j = class_of(t.inv[c[0]]);
        seen[i] = true;
        seen[j] = true;
        let mut set: BTreeSet<usize> = c.iter().copied().collect();
        set.extend(classes[j].iter().copied());
        merged.push(set);
    }
    let mut merid_count = 0usize;
    let mut contains_r = false;
    let mut rep_orders = Vec::new();
    let na = named_auts(g)?;
    let r_label = outer_label(g, &na.r)?;
    let r_idx = out.index_of(&r_label).expect("[r] is an outer class");
    let order_of = |x: usize| -> usize {
        let mut ord = 1;
        let mut y = x;
        while y != t.id {
            y = t.mul[y][x];
            ord += 1;
        }
        ord
    };
    for set in &merged {
        let vals: BTreeSet<bool> = set.iter().map(|&x| merid[x]).collect();
        assert_eq!(vals.len(), 1, "meridianality must be constant on classes");
        if vals.contains(&true) {
            merid_count += 1;
            rep_orders.push(order_of(*set.iter().next().unwrap()));
            if set.contains(&r_idx) {
                contains_r = true;
            }
        }
    }
    rep_orders.sort_unstable();
    let rk = match k_make(g, 1, 0) {
        Ok(k) => Some(is_meridianal(g, &aut_compose(g, &na.r, &k)?)?),
        Err(_) => None,
    };
    let b3 = aut_pow(g, &na.b, 3)?;
    Ok(MeridianalGammaReport {
        meridianal_class_count: merid_count,
        meridianal_class_contains_r: contains_r,
        meridianal_rep_orders: rep_orders,
        rk_is_meridianal: rk,
        identity_is_meridianal: merid[t.id],
        b_cubed_is_meridianal: is_meridianal(g, &b3)?,
    })
}

// ---------------------------------------------------------------------------
// Weight orbit normal forms
// ---------------------------------------------------------------------------

/// A weight element g·t is reduced to the form u^n·(central)·t by a
/// conjugator h = z^d u^i v^j, optionally pre-twisted by the meridian
/// (conjugation by t replaces g with r(g)). Comparison is modulo the
/// centre, which acts trivially by conjugation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightOrbitGamma {
    pub n: i64,
    /// conjugator data (t-twist in {0,1}, z/u/v exponents)
    pub twist: i64,
    pub d: i64,
    pub i: i64,
    pub j: i64,
    pub radius: i64,
    /// the label n is unchanged when the weight element is pushed through
    /// the centralizer generators of the u^n-twisted meridian
    pub preserved_by_centralizer: bool,
}

fn orbit_scan(
    g: &GammaGroup,
    elt: &AffNilElement,
    radius: i64,
    first_only: bool,
) -> Result<(BTreeSet<i64>, Option<WeightOrbitGamma>), NilError> {
    let na = named_auts(g)?;
    let r = &na.r;
    // power caches over the search box; index k + radius
    let pows = |base: &AffNilElement| -> Vec<AffNilElement> {
        (-radius..=radius).map(|k| base.pow(k)).collect()
    };
    let at = |cache: &[AffNilElement], k: i64| -> AffNilElement {
        cache[(k + radius) as usize].clone()
    };
    let u_pows = pows(&g.u);
    let v_pows = pows(&g.v);
    let ru_pows = pows(&r.iu);
    let rv_pows = pows(&r.iv);
    let mut labels = BTreeSet::new();
    let mut first = None;
    for twist in 0..2i64 {
        let base = if twist == 1 {
            aut_apply(g, r, elt)?
        } else {
            elt.clone()
        };
        for d in 0..3i64 {
            let zd = g.z.pow(d);
            let rz_neg = r.iz.pow(-d);
            for i in -radius..=radius {
                // h = z^d u^i v^j; the meridian twists the right factor,
                // so the conjugated element is h * base * r(h)^{-1}
                let head = zd.mul(&at(&u_pows, i));
                let tail_i = at(&ru_pows, -i).mul(&rz_neg);
                for j in -radius..=radius {
                    let cand = head
                        .mul(&at(&v_pows, j))
                        .mul(&base)
                        .mul(&at(&rv_pows, -j))
                        .mul(&tail_i);
                    // u^n z^{3c} form: trivial linear part and zero y
                    if cand.sigma.a.is_identity() && cand.n.y.is_zero() {
                        debug_assert!(cand.sigma.is_identity());
                        assert!(is_int(&cand.n.x));
                        let n = to_i64(&cand.n.x);
                        labels.insert(n);
                        if first.is_none() {
                            first = Some(WeightOrbitGamma {
                                n,
                                twist,
                                d,
                                i,
                                j,
                                radius,
                                preserved_by_centralizer: false,
                            });
                        }
                        if first_only {
                            return Ok((labels, first));
                        }
                    }
                }
            }
        }
    }
    Ok((labels, first))
}

/// Reduces a weight element g·t (g in the commutator subgroup) to the
/// u^n·t normal form by bounded conjugator search; the certificate is
/// valid only at the stated radius.
pub fn weight_orbit_normal_form_gamma(
    g: &GammaGroup,
    elt: &AffNilElement,
    radius: i64,
) -> Result<WeightOrbitGamma, NilError> {
    let hv = h1_vec(g, elt)?;
    if !h1_relation_lattice(g).contains(&hv) {
        return Err(NilError::NotInDerivedSubgroup);
    }
    let (_, first) = orbit_scan(g, elt, radius, true)?;
    let mut nf = first.ok_or(NilError::SearchExhausted(radius))?;

    // The centralizer generators of the u^n-twisted meridian extend to the
    // weight-element level: for psi with psi.r.psi^-1 = c_w . r, the weight
    // element g.t maps to psi(g).w.t, so the label must be stable under the
    // substitution g -> psi(g).w. Since r^2 = 1, w is the conjugator
    // recognized in psi.r.psi^-1.r.
    let na = named_auts(g)?;
    let uv = g.u.mul(&g.v.inverse());
    let un = g.u.pow(nf.n);
    let un_r = aut_compose(g, &conj_aut(g, &un)?, &na.r)?;
    let un_r_inv = aut_compose(
        g,
        &conj_aut(g, &aut_apply(g, &na.r, &un.inverse())?)?,
        &na.r,
    )?;
    let pairs = [
        (conj_aut(g, &uv)?, conj_aut(g, &uv.inverse())?),
        (un_r, un_r_inv),
    ];
    let mut preserved = true;
    for (psi, psi_inv) in &pairs {
        let delta = aut_compose(
            g,
            &aut_compose(g, &aut_compose(g, psi, &na.r)?, psi_inv)?,
            &na.r,
        )?;
        let w = match is_inner(g, &delta)? {
            Some(w) => w,
            None => {
                preserved = false;
                break;
            }
        };
        let cand = aut_apply(g, psi, elt)?.mul(&w);
        let (_, f2) = orbit_scan(g, &cand, radius, true)?;
        match f2 {
            Some(x) if x.n == nf.n => {}
            _ => preserved = false,
        }
    }
    nf.preserved_by_centralizer = preserved;
    Ok(nf)
}

/// All labels n with u^n·(central)·t reachable from g·t by conjugators in
/// the search box; used as the bounded uniqueness oracle. The input is not
/// required to lie in the commutator subgroup, so representatives u^m can
/// be compared directly.
pub fn orbit_labels_bounded(
    g: &GammaGroup,
    elt: &AffNilElement,
    radius: i64,
) -> Result<BTreeSet<i64>, NilError> {
    let (labels, _) = orbit_scan(g, elt, radius, false)?;
    Ok(labels)
}

// ---------------------------------------------------------------------------
// Planar subgroup solver (centralizers and normalizers in Aut(P))
// ---------------------------------------------------------------------------

/// Canonical description of a subgroup of the planar image of Aut(Gamma):
/// the lattice of its pure translations in thirds units, plus one reduced
/// coset representative per linear part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlanarSubgroup {
    pub lattice: IntegerLattice,
    pub reps: BTreeMap<[i64; 4], Vec<i64>>,
}

impl PlanarSubgroup {
    pub fn finite_part_size(&self) -> usize {
        self.reps.len()
    }
}

fn thirds_units(v: &[Rat]) -> Option<Vec<i64>> {
    let mut out = Vec::with_capacity(v.len());
    for r in v {
        let q = r.clone() * rat(3);
        if !is_int(&q) {
            return None;
        }
        out.push(to_i64(&q));
    }
    Some(out)
}

fn from_thirds(u: &[i64]) -> QVec {
    u.iter().map(|&k| ratio(k, 3)).collect()
}

struct PlanarClosure {
    lattice: IntegerLattice,
    reps: BTreeMap<[i64; 4], Vec<i64>>,
}

impl PlanarClosure {
    fn new() -> Self {
        let mut reps = BTreeMap::new();
        reps.insert([1, 0, 0, 1], vec![0, 0]);
        PlanarClosure {
            lattice: IntegerLattice::zero(2),
            reps,
        }
    }

    fn insert_translation(&mut self, u: &[i64]) -> bool {
        if self.lattice.contains(u) {
            return false;
        }
        let sum = self
            .lattice
            .sum(&IntegerLattice::from_generators(2, &[u.to_vec()]))
            .expect("same ambient");
        self.lattice = sum;
        let old = std::mem::take(&mut self.reps);
        for (k, v) in old {
            self.reps.insert(k, self.lattice.reduce(&v));
        }
        true
    }

    fn insert(&mut self, f: &AffineIso) -> bool {
        let k = key2(&f.a);
        let u = thirds_units(&f.v).expect("planar translations lie in (1/3)Z^2");
        if f.a.is_identity() {
            if u.iter().all(|&c| c == 0) {
                return false;
            }
            return self.insert_translation(&u);
        }
        match self.reps.get(&k) {
            Some(rep) => {
                let diff: Vec<i64> = u.iter().zip(rep).map(|(a, b)| a - b).collect();
                if diff.iter().all(|&c| c == 0) {
                    false
                } else {
                    self.insert_translation(&diff)
                }
            }
            None => {
                let red = self.lattice.reduce(&u);
                self.reps.insert(k, red);
                true
            }
        }
    }
}

/// Closes a finite set of planar images into a canonical subgroup
/// description (linear parts range over the twelve-element point group).
pub fn planar_closure(gens: &[AffineIso]) -> PlanarSubgroup {
    let mut st = PlanarClosure::new();
    for g in gens {
        st.insert(g);
        st.insert(&g.inverse());
    }
    for _round in 0..100 {
        let mut changed = false;
        let items: Vec<AffineIso> = st
            .reps
            .iter()
            .map(|(k, v)| AffineIso::new(from_thirds(v), mat2(k)))
            .collect();
        for a in &items {
            for b in &items {
                changed |= st.insert(&a.compose(b));
            }
            changed |= st.insert(&a.inverse());
        }
        let keys: Vec<[i64; 4]> = st.reps.keys().copied().collect();
        let basis = st.lattice.basis.clone();
        for k in &keys {
            for l in &basis {
                let img = vec![k[0] * l[0] + k[1] * l[1], k[2] * l[0] + k[3] * l[1]];
                changed |= st.insert_translation(&img);
            }
        }
        if !changed {
            return PlanarSubgroup {
                lattice: st.lattice,
                reps: st.reps,
            };
        }
    }
    panic!("planar closure did not stabilize");
}

/// Translation residues (thirds units, mod 3) available to elements of the
/// planar image of Aut(Gamma): all of 3(I+beta)^{-1}Z^2 / 3Z^2 for
/// eta = +1, only integral translations for eta = -1.
fn planar_residues(eta: i64) -> Vec<Vec<i64>> {
    if eta == 1 {
        vec![vec![0, 0], vec![2, 1], vec![1, 2]]
    } else {
        vec![vec![0, 0]]
    }
}

fn i_minus2(m: &QMat) -> IMat {
    let mut rows = Vec::new();
    for r in 0..2 {
        rows.push(
            (0..2)
                .map(|c| (if r == c { 1 } else { 0 }) - to_i64(&m[(r, c)]))
                .collect(),
        );
    }
    IMat::from_rows(&rows)
}

/// All solutions u (thirds units) of (I - M)(u/3) = rhs with u congruent
/// to a valid residue mod 3: particular solutions plus 3*ker(I - M).
fn planar_solve_family(
    m_lin: &QMat,
    rhs: &QVec,
    residues: &[Vec<i64>],
) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let im = i_minus2(m_lin);
    let rhs3: Vec<i64> = rhs
        .iter()
        .map(|x| {
            let q = x.clone() * rat(3);
            assert!(is_int(&q), "right-hand side must lie in (1/3)Z^2");
            to_i64(&q)
        })
        .collect();
    let mut particulars = Vec::new();
    let mut kernel3: Vec<Vec<i64>> = Vec::new();
    for r in residues {
        let shifted: Vec<i64> = (0..2)
            .map(|row| rhs3[row] - im.row(row).iter().zip(r).map(|(a, b)| a * b).sum::<i64>())
            .collect();
        if shifted.iter().any(|c| c.rem_euclid(3) != 0) {
            continue;
        }
        let reduced: Vec<i64> = shifted.iter().map(|c| c / 3).collect();
        if let Some((part, kernel)) = solve_integer(&im, &reduced) {
            let u: Vec<i64> = (0..2).map(|c| r[c] + 3 * part[c]).collect();
            particulars.push(u);
            if kernel3.is_empty() {
                kernel3 = kernel
                    .iter()
                    .map(|k| k.iter().map(|&c| 3 * c).collect())
                    .collect();
            }
        }
    }
    (particulars, kernel3)
}

fn planar_assemble(families: Vec<(QMat, Vec<Vec<i64>>, Vec<Vec<i64>>)>) -> PlanarSubgroup {
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for (b, parts, kernel) in &families {
        gens.extend(kernel.iter().cloned());
        if b.is_identity() {
            gens.extend(parts.iter().cloned());
        }
    }
    let lattice = IntegerLattice::from_generators(2, &gens);
    let mut reps = BTreeMap::new();
    for (b, parts, _) in &families {
        if parts.is_empty() {
            continue;
        }
        let first = lattice.reduce(&parts[0]);
        for p in parts {
            assert_eq!(
                lattice.reduce(p),
                first,
                "solution family is not a single coset of the translation lattice"
            );
        }
        reps.insert(key2(b), first);
    }
    PlanarSubgroup { lattice, reps }
}

/// Exhaustive centralizer of a planar image phi = (v, A) within the planar
/// image of Aut(Gamma): per commuting linear part B, solve
/// (I - A) w = (I - B) v over the valid residues.
pub fn planar_centralizer(eta: i64, phi: &AffineIso) -> PlanarSubgroup {
    let residues = planar_residues(eta);
    let (d_elements, _) = point_group_d();
    let mut families = Vec::new();
    for bk in &d_elements {
        let b = mat2(bk);
        if b.mul(&phi.a) != phi.a.mul(&b) {
            continue;
        }
        let rhs = qvec_sub(&phi.v, &b.mul_vec(&phi.v));
        let (parts, kernel) = planar_solve_family(&phi.a, &rhs, &residues);
        families.push((b, parts, kernel));
    }
    planar_assemble(families)
}

/// Exhaustive normalizer of the cyclic subgroup generated by a planar
/// image of infinite order: elements conjugating phi to phi^{+-1}.
pub fn planar_normalizer_cyclic(eta: i64, phi: &AffineIso) -> PlanarSubgroup {
    let residues = planar_residues(eta);
    let (d_elements, _) = point_group_d();
    let targets = [phi.clone(), phi.inverse()];
    let mut families: Vec<(QMat, Vec<Vec<i64>>, Vec<Vec<i64>>)> = Vec::new();
    for bk in &d_elements {
        let b = mat2(bk);
        let b_inv = b.inverse().expect("point group matrices are invertible");
        let conj_lin = b.mul(&phi.a).mul(&b_inv);
        let mut parts_all = Vec::new();
        let mut kernel_all: Vec<Vec<i64>> = Vec::new();
        for t in &targets {
            if conj_lin != t.a {
                continue;
            }
            // (w, B) phi (w, B)^{-1} = t  <=>  (I - t.a) w = t.v - B v_phi
            let rhs = qvec_sub(&t.v, &b.mul_vec(&phi.v));
            let (parts, kernel) = planar_solve_family(&t.a, &rhs, &residues);
            parts_all.extend(parts);
            if kernel_all.is_empty() {
                kernel_all = kernel;
            }
        }
        if !parts_all.is_empty() {
            families.push((b, parts_all, kernel_all));
        }
    }
    planar_assemble(families)
}

// ---------------------------------------------------------------------------
// Centralizer claims for the meridianal twists
// ---------------------------------------------------------------------------

/// Checks around the claim N(<u^n r>) = C(u^n r) = <u^n r, uv^{-1}> for
/// n != 0. Every verdict is recorded exactly as the solver computes it;
/// deviations from a claimed generating set are reported, never patched.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaCentralizerReport {
    pub n: i64,
    pub eta: i64,
    /// c_{uv^{-1}} commutes with u^n r exactly (as automorphisms)
    pub uv_shift_commutes: bool,
    /// (u^n r)^{-1} = c_{v^n} ∘ r exactly
    pub inverse_is_v_shift: bool,
    /// weight-orbit label of the v^n shift (expected -n)
    pub inverse_orbit_label: i64,
    /// the planar solver's centralizer equals the closure of the claimed
    /// generators {u^n r, uv^{-1}}
    pub centralizer_matches_claimed: bool,
    /// index of the claimed translation lattice in the solver's (None when
    /// incomparable); records the exact excess when the claim undershoots
    pub claimed_lattice_index: Option<u64>,
    /// k[1,0] commutes with u^n r exactly (eta = +1 witness for the excess)
    pub k_commutes: Option<bool>,
    /// the cyclic normalizer equals the centralizer
    pub normalizer_equals_centralizer: bool,
    /// c_{u^n} ∘ b^3 conjugates u^n r to its inverse exactly (witness that
    /// the normalizer is strictly larger, and that u^n r is conjugate to
    /// its inverse in Aut(Gamma))
    pub b_cubed_shift_inverts: bool,
}

pub fn centralizer_claims_gamma(g: &GammaGroup, n: i64) -> Result<GammaCentralizerReport, NilError> {
    let na = named_auts(g)?;
    let c_un = conj_aut(g, &g.u.pow(n))?;
    let un_r = aut_compose(g, &c_un, &na.r)?;
    let uv_inv = g.u.mul(&g.v.inverse());
    let c_uv = conj_aut(g, &uv_inv)?;
    let uv_shift_commutes = aut_equal(
        &aut_compose(g, &c_uv, &un_r)?,
        &aut_compose(g, &un_r, &c_uv)?,
    );

    // (u^n r)^{-1} = r^{-1} c_{u^n}^{-1} = r c_{u^{-n}} = c_{v^n} r.
    let c_vn = conj_aut(g, &g.v.pow(n))?;
    let inverse = aut_compose(g, &c_vn, &na.r)?;
    let inverse_is_v_shift = aut_is_identity(g, &aut_compose(g, &un_r, &inverse)?)
        && aut_is_identity(g, &aut_compose(g, &inverse, &un_r)?);
    let inverse_orbit_label = {
        let labels = orbit_labels_bounded(g, &g.v.pow(n), 6)?;
        assert_eq!(labels.len(), 1, "v^n reduces to a single label");
        *labels.iter().next().expect("nonempty")
    };

    let img = aut_p_image(g, &un_r)?;
    let img_uv = aut_p_image(g, &c_uv)?;
    let claimed = planar_closure(&[img.clone(), img_uv]);
    let solver_c = planar_centralizer(g.eta, &img);
    let solver_n = planar_normalizer_cyclic(g.eta, &img);
    let claimed_lattice_index = claimed.lattice.index_in(&solver_c.lattice).ok();
    let k_commutes = match k_make(g, 1, 0) {
        Ok(k) => Some(aut_equal(
            &aut_compose(g, &k, &un_r)?,
            &aut_compose(g, &un_r, &k)?,
        )),
        Err(_) => None,
    };

    let b3 = aut_pow(g, &na.b, 3)?;
    let psi = aut_compose(g, &c_un, &b3)?;
    // psi^{-1} = b^{-3} c_{u^{-n}} = b^3 c_{u^{-n}} since b^6 = 1
    let c_un_inv = conj_aut(g, &g.u.pow(-n))?;
    let psi_inv = aut_compose(g, &b3, &c_un_inv)?;
    assert!(aut_is_identity(g, &aut_compose(g, &psi, &psi_inv)?));
    let conj = aut_compose(g, &aut_compose(g, &psi, &un_r)?, &psi_inv)?;
    let b_cubed_shift_inverts = aut_equal(&conj, &inverse);

    Ok(GammaCentralizerReport {
        n,
        eta: g.eta,
        uv_shift_commutes,
        inverse_is_v_shift,
        inverse_orbit_label,
        centralizer_matches_claimed: solver_c == claimed,
        claimed_lattice_index,
        k_commutes,
        normalizer_equals_centralizer: solver_n == solver_c,
        b_cubed_shift_inverts,
    })
}

// ---------------------------------------------------------------------------
// tau_2 certificates
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Tau2Report {
    pub r_squared_is_identity: bool,
    /// the fixed-point equations of the rho-action force y = -x and
    /// w = xy/2, i.e. exactly the curve [s, -s, 0] in symmetrized
    /// coordinates; checked on a symbolic sample and by the forcing
    /// equations
    pub fixed_curve_verified: bool,
    /// the unique Aff(Nil) lift of b^3 (trivial planar part, linear part
    /// -I) has this translation-cocycle pair mu; derived from the model
    /// images of u and v
    pub lift_mu: [Rat; 2],
    /// conjugation by the derived lift reproduces all three generator
    /// images of b^3 (sanity check on the derivation)
    pub lift_conjugation_consistent: bool,
    /// the derived mu equals ((eta - e)/q, (eta - e)/q); measuring the
    /// central coordinate in z^3 units (scale by -eta q) this is exactly
    /// (e eta - 1, e eta - 1), i.e. b^3 acts by
    /// [x, y, w] -> [-x, -y, w + (e eta - 1)(x + y)] in those units
    pub b_cubed_formula_verified: bool,
    /// action of the derived lift on the Nil point [1, 1, 0]
    pub b_cubed_at_one_one_zero: NilPoint,
}

/// The involution R = ([0,0,0], rho, (0,0)) of Aff(Nil).
pub fn r_element() -> AffNilElement {
    AffNilElement::new(
        NilPoint::identity(),
        NilAutomorphism::new(rho_matrix(), [Rat::zero(), Rat::zero()]),
    )
}

pub fn tau2_certificates(g: &GammaGroup) -> Result<Tau2Report, NilError> {
    let r_aff = r_element();
    let r_squared = r_aff.mul(&r_aff).is_identity();

    // Fixed points of R([x,y,w]) = [-y, -x, -w + xy]: the equations force
    // y = -x and w = xy/2 = -x^2/2, the curve [s, -s, 0] in symmetrized
    // coordinates. Verify the identity on a sample large enough for the
    // quadratic, plus the symmetrized form, plus non-fixedness off-curve.
    let mut fixed_ok = true;
    for k in -3..=3i64 {
        let s = ratio(k, 2);
        let on_curve = NilPoint::new(s.clone(), -s.clone(), -&s * &s / rat(2));
        fixed_ok &= r_aff.apply(&on_curve) == on_curve;
        let sym = on_curve.to_symmetric();
        fixed_ok &= sym[0] == s && sym[1] == -s.clone() && sym[2].is_zero();
        if k != 0 {
            let off = NilPoint::new(s.clone(), -s.clone(), Rat::zero() - rat(k));
            fixed_ok &= !(r_aff.apply(&off) == off) || off.w == -&s * &s / rat(2);
            let off2 = NilPoint::new(s.clone(), s.clone(), Rat::zero());
            fixed_ok &= r_aff.apply(&off2) != off2;
        }
    }

    let na = named_auts(g)?;
    let b3 = aut_pow(g, &na.b, 3)?;
    // b^3 fixes the planar image pointwise with linear part -I, so it has
    // a unique Aff(Nil) lift (0, sigma) with sigma = (-I, mu); since the
    // central coordinate of u maps by w -> mu_1 x + mu_2 y + w, the mu
    // components can be read off the model images of u and v.
    assert!(b3.iu.n.x == -Rat::one() && b3.iu.n.y.is_zero() && b3.iu.sigma.is_identity());
    assert!(b3.iv.n.x.is_zero() && b3.iv.n.y == -Rat::one() && b3.iv.sigma.is_identity());
    let mu = [b3.iu.n.w.clone(), b3.iv.n.w.clone()];
    let sigma = NilAutomorphism::new(QMat::identity(2).neg(), mu.clone());
    let lift = AffNilElement::new(NilPoint::identity(), sigma.clone());
    let lift_inv = lift.inverse();
    let consistent = lift.mul(&g.u).mul(&lift_inv) == b3.iu
        && lift.mul(&g.v).mul(&lift_inv) == b3.iv
        && lift.mul(&g.z).mul(&lift_inv) == b3.iz;
    // mu = (eta - e)/q in model units; scaled by -eta q (z^3 units) this is
    // eta q (e - eta)/q = e eta - eta^2 = e eta - 1, the displayed constant
    let expected = ratio(g.eta - g.e, g.q);
    let scaled = &mu[0] * rat(-g.eta * g.q);
    let formula =
        mu[0] == expected && mu[1] == expected && scaled == rat(g.e * g.eta - 1);

    Ok(Tau2Report {
        r_squared_is_identity: r_squared,
        fixed_curve_verified: fixed_ok,
        lift_mu: mu,
        lift_conjugation_consistent: consistent,
        b_cubed_formula_verified: formula,
        b_cubed_at_one_one_zero: sigma.apply(&NilPoint::from_i64(1, 1, 0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nil_group::gamma_build;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid() -> Vec<GammaGroup> {
        let mut out = Vec::new();
        for e in [-2i64, 0, 2] {
            for eta in [1i64, -1] {
                out.push(gamma_build(e, eta).unwrap());
            }
        }
        out
    }

    fn rand_gamma_word(g: &GammaGroup, rng: &mut ChaCha8Rng, len: usize) -> AffNilElement {
        let mut acc = AffNilElement::identity();
        for _ in 0..len {
            let gen = match rng.gen_range(0..3) {
                0 => &g.u,
                1 => &g.v,
                _ => &g.z,
            };
            let e: i64 = rng.gen_range(-2..=2);
            acc = acc.mul(&gen.pow(e));
        }
        acc
    }

    fn central_part(g: &GammaGroup, x: &AffNilElement) -> bool {
        x.sigma.is_identity() && x.n.x.is_zero() && x.n.y.is_zero() && {
            // central translations of Gamma are powers of z^3
            let _ = g;
            true
        }
    }

    fn equal_mod_center(g: &GammaGroup, a: &AffNilElement, b: &AffNilElement) -> bool {
        central_part(g, &a.mul(&b.inverse()))
    }

    #[test]
    fn k_parameters_match_constraints_and_q_scaled_form() {
        for g in grid() {
            let q3 = g.q / 3;
            for (m, n) in [(1i64, 0i64), (-2, -1), (1, -1), (0, -1), (2, 1), (3, 0)] {
                let rep = match k_variant_report(&g, m, n) {
                    Ok(rep) => rep,
                    Err(NilError::KNotIntegral(_, _)) => {
                        assert_eq!(g.eta, -1);
                        assert_ne!((m + n).rem_euclid(3), 0);
                        continue;
                    }
                    Err(e) => panic!("unexpected error: {}", e),
                };
                assert!(rep.satisfies_linear_constraints);
                assert!(rep.satisfies_p_constraint);
                if g.eta == 1 {
                    // the solved parameters follow the q/3-scaled closed
                    // form, not the printed q = 3e display
                    assert_eq!(rep.matches_q_scaled_form, Some(true));
                    assert_eq!(rep.params.s, (m - 2 * n) * q3);
                    assert_eq!(rep.params.t, (m + n) * q3);
                    assert_eq!(2 * rep.params.p, (m + n) * (m + n - 1) * q3);
                    if m != 2 * n || m + n != 0 {
                        assert_eq!(rep.matches_printed_display, Some(false));
                    }
                }
            }
        }
        // frozen spot values
        let g = gamma_build(0, 1).unwrap();
        let kp = k_solve(&g, 1, 0).unwrap();
        assert_eq!((kp.s, kp.t, kp.p), (-1, -1, 0));
        let g = gamma_build(2, 1).unwrap();
        let kp = k_solve(&g, 1, 0).unwrap();
        assert_eq!((kp.s, kp.t, kp.p), (1, 1, 0));
    }

    #[test]
    fn k_specials_are_conjugations() {
        for g in grid() {
            let na = named_auts(&g).unwrap();
            let cu = k_make(&g, -2, -1).unwrap();
            assert!(aut_equal(&cu, &na.c_u));
            assert_eq!(k_solve(&g, -2, -1).unwrap().s, 0);
            let cv = k_make(&g, 1, -1).unwrap();
            assert!(aut_equal(&cv, &na.c_v));
            assert_eq!(k_solve(&g, 1, -1).unwrap().t, 0);
            // k[0,0] is the identity automorphism
            assert!(aut_is_identity(&g, &k_make(&g, 0, 0).unwrap()));
        }
    }

    #[test]
    fn k_undefined_exactly_off_the_mod3_sublattice_for_eta_minus() {
        let g = gamma_build(0, -1).unwrap();
        assert!(matches!(k_make(&g, 1, 0), Err(NilError::KNotIntegral(1, 0))));
        assert!(matches!(k_make(&g, 0, -1), Err(NilError::KNotIntegral(0, -1))));
        assert!(k_make(&g, 2, 1).is_ok());
    }

    #[test]
    fn named_automorphism_relations() {
        for g in grid() {
            let na = named_auts(&g).unwrap();
            assert!(aut_is_identity(&g, &aut_pow(&g, &na.b, 6).unwrap()));
            assert!(aut_is_identity(&g, &aut_pow(&g, &na.r, 2).unwrap()));
            let br = aut_compose(&g, &na.b, &na.r).unwrap();
            assert!(aut_is_identity(&g, &aut_pow(&g, &br, 2).unwrap()));
            assert!(aut_equal(&na.c_z, &aut_pow(&g, &na.b, 4).unwrap()));
            // b^2 is conjugation by z^2
            let b2 = aut_pow(&g, &na.b, 2).unwrap();
            assert!(aut_equal(&b2, &conj_aut(&g, &g.z.pow(2)).unwrap()));
            // composing with the identity changes nothing
            assert!(aut_equal(
                &aut_compose(&g, &na.b, &identity_aut(&g)).unwrap(),
                &na.b
            ));
            // r is induced by conjugation with the affine involution R
            let r_aff = r_element();
            let r_inv = r_aff.inverse();
            assert_eq!(r_aff.mul(&g.u).mul(&r_inv), na.r.iu);
            assert_eq!(r_aff.mul(&g.v).mul(&r_inv), na.r.iv);
            assert_eq!(r_aff.mul(&g.z).mul(&r_inv), na.r.iz);
        }
    }

    #[test]
    fn r_conjugation_acts_on_the_k_family() {
        // conjugating by r maps k[m,n] to k[m-n,-n]; in particular
        // k = k[1,0] is fixed, against the displayed relation r k r = k^-1
        for g in grid() {
            let na = named_auts(&g).unwrap();
            for (m, n) in [(1i64, 0i64), (2, 1), (-2, -1), (1, -1)] {
                let k = match k_make(&g, m, n) {
                    Ok(k) => k,
                    Err(_) => continue,
                };
                let rkr = aut_compose(
                    &g,
                    &aut_compose(&g, &na.r, &k).unwrap(),
                    &na.r,
                )
                .unwrap();
                let expected = k_make(&g, m - n, -n).unwrap();
                assert!(aut_equal(&rkr, &expected), "(e,eta)=({},{})", g.e, g.eta);
                // the k-family composes along its index lattice, so the
                // printed inverse is k[-m,-n]; r fixes k[1,0] instead of
                // inverting it
                let kinv = k_make(&g, -m, -n).unwrap();
                if aut_is_identity(&g, &aut_compose(&g, &k, &kinv).unwrap())
                    && (m - n, -n) != (-m, -n)
                {
                    assert!(!aut_equal(&rkr, &kinv));
                }
            }
        }
    }

    #[test]
    fn inner_recognition() {
        for g in grid() {
            let na = named_auts(&g).unwrap();
            let w = is_inner(&g, &na.c_u).unwrap().expect("c_u is inner");
            assert!(equal_mod_center(&g, &w, &g.u));
            assert!(is_inner(&g, &na.r).unwrap().is_none());
            let w = is_inner(&g, &identity_aut(&g)).unwrap().unwrap();
            assert!(central_part(&g, &w));
        }
    }

    #[test]
    fn inner_recognition_of_random_conjugations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in grid() {
            for _ in 0..2 {
                let w = rand_gamma_word(&g, &mut rng, 4);
                let c = conj_aut(&g, &w).unwrap();
                let found = is_inner(&g, &c).unwrap().expect("c_w is inner");
                assert!(equal_mod_center(&g, &found, &w));
            }
        }
    }

    #[test]
    fn out_tables() {
        for g in grid() {
            let out = out_gamma(&g).unwrap();
            if g.eta == 1 {
                assert_eq!(out.table.size, 12);
                assert_eq!(
                    out.table.order_profile(),
                    vec![1, 2, 2, 2, 2, 2, 2, 2, 3, 3, 6, 6]
                );
            } else {
                assert_eq!(out.table.size, 4);
                assert_eq!(out.table.order_profile(), vec![1, 2, 2, 2]);
            }
            // [c_z] is the trivial class
            let na = named_auts(&g).unwrap();
            let cz = outer_label(&g, &na.c_z).unwrap();
            assert_eq!(out.index_of(&cz), Some(out.table.id));
            // b and b^3 fall in the same outer class since b^2 is inner
            let b3 = aut_pow(&g, &na.b, 3).unwrap();
            assert_eq!(
                outer_label(&g, &na.b).unwrap(),
                outer_label(&g, &b3).unwrap()
            );
        }
    }

    #[test]
    fn meridianal_class_census() {
        for g in grid() {
            let out = out_gamma(&g).unwrap();
            let rep = meridianal_classes_gamma(&g, &out).unwrap();
            assert!(rep.meridianal_class_contains_r);
            assert!(!rep.identity_is_meridianal);
            assert!(!rep.b_cubed_is_meridianal);
            if g.eta == 1 {
                // besides [r] (a central involution of Out), the order-6
                // class of r.k[1,0] is meridianal as well
                assert_eq!(rep.meridianal_class_count, 2);
                assert_eq!(rep.meridianal_rep_orders, vec![2, 6]);
                assert_eq!(rep.rk_is_meridianal, Some(true));
            } else {
                assert_eq!(rep.meridianal_class_count, 1);
                assert_eq!(rep.meridianal_rep_orders, vec![2]);
                assert_eq!(rep.rk_is_meridianal, None);
            }
        }
    }

    #[test]
    fn f_subgroup_reports() {
        for g in grid() {
            let rep = f_subgroup(&g).unwrap();
            assert!(rep.k00_is_identity);
            if g.eta == 1 {
                assert!(rep.all_succeed);
                assert_eq!(rep.success_count, 49);
                assert!(rep.k_cu_span_full);
            } else {
                assert!(!rep.all_succeed);
                assert!(rep.success_iff_mod3);
                assert_eq!(rep.success_count, 17);
                assert_eq!(rep.cu_cv_index, Some(3));
            }
        }
    }

    #[test]
    fn weight_orbit_normal_forms() {
        for g in grid() {
            // the trivial weight element reduces to n = 0
            let nf =
                weight_orbit_normal_form_gamma(&g, &AffNilElement::identity(), 4).unwrap();
            assert_eq!(nf.n, 0);
            assert!(nf.preserved_by_centralizer);

            // u itself is not in the commutator subgroup
            assert!(matches!(
                weight_orbit_normal_form_gamma(&g, &g.u, 4),
                Err(NilError::NotInDerivedSubgroup)
            ));

            // u^3 v^3 with the central correction that puts it in the
            // commutator subgroup
            let c = if g.eta == 1 { 0 } else { 4 };
            let elt = g.u.pow(3).mul(&g.v.pow(3)).mul(&g.z.pow(3 * c));
            let nf = weight_orbit_normal_form_gamma(&g, &elt, 6).unwrap();
            let labels = orbit_labels_bounded(&g, &elt, 6).unwrap();
            assert_eq!(labels.len(), 1, "(e,eta)=({},{})", g.e, g.eta);
            assert!(labels.contains(&nf.n));
            assert!(nf.preserved_by_centralizer);
        }
    }

    #[test]
    fn weight_orbit_labels_separate_small_n() {
        for g in grid() {
            for m in -2..=2i64 {
                let labels = orbit_labels_bounded(&g, &g.u.pow(m), 6).unwrap();
                assert_eq!(labels, BTreeSet::from([m]), "(e,eta)=({},{})", g.e, g.eta);
            }
        }
    }

    #[test]
    fn centralizer_reports() {
        for g in grid() {
            for n in [1i64, 2] {
                let rep = centralizer_claims_gamma(&g, n).unwrap();
                assert_eq!(rep.n, n);
                assert!(rep.uv_shift_commutes);
                assert!(rep.inverse_is_v_shift);
                assert_eq!(rep.inverse_orbit_label, -n);
                // the claimed normalizer = centralizer identity fails: the
                // b^3-shifted automorphism conjugates u^n r to its inverse
                assert!(!rep.normalizer_equals_centralizer);
                assert!(rep.b_cubed_shift_inverts);
                if g.eta == 1 {
                    // the claimed generating set undershoots by index 3;
                    // k[1,0] is the missing commuting element
                    assert!(!rep.centralizer_matches_claimed);
                    assert_eq!(rep.claimed_lattice_index, Some(3));
                    assert_eq!(rep.k_commutes, Some(true));
                } else {
                    assert!(rep.centralizer_matches_claimed);
                    assert_eq!(rep.claimed_lattice_index, Some(1));
                    assert_eq!(rep.k_commutes, None);
                }
            }
        }
    }

    #[test]
    fn tau2_reports() {
        for g in grid() {
            let rep = tau2_certificates(&g).unwrap();
            assert!(rep.r_squared_is_identity);
            assert!(rep.fixed_curve_verified);
            assert!(rep.lift_conjugation_consistent);
            assert!(rep.b_cubed_formula_verified);
            let mu = ratio(g.eta - g.e, g.q);
            assert_eq!(rep.lift_mu, [mu.clone(), mu.clone()]);
            assert_eq!(
                rep.b_cubed_at_one_one_zero,
                NilPoint::new(rat(-1), rat(-1), &mu + &mu)
            );
        }
    }

    #[test]
    fn planar_image_functoriality() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in grid() {
            let na = named_auts(&g).unwrap();
            let pool = [&na.b, &na.r, &na.c_u, &na.c_v, &na.c_z];
            for _ in 0..4 {
                let phi = pool[rng.gen_range(0..pool.len())];
                let psi = pool[rng.gen_range(0..pool.len())];
                let comp = aut_compose(&g, phi, psi).unwrap();
                let lhs = aut_p_image(&g, &comp).unwrap();
                let rhs = aut_p_image(&g, phi)
                    .unwrap()
                    .compose(&aut_p_image(&g, psi).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn h1_functoriality_mod_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for g in grid() {
            let na = named_auts(&g).unwrap();
            let lat = h1_relation_lattice(&g);
            let mut pool = vec![
                na.b.clone(),
                na.r.clone(),
                na.c_u.clone(),
                na.c_z.clone(),
            ];
            if let Ok(k) = k_make(&g, 1, 0) {
                pool.push(k);
            }
            for _ in 0..4 {
                let phi = &pool[rng.gen_range(0..pool.len())];
                let psi = &pool[rng.gen_range(0..pool.len())];
                let comp = aut_compose(&g, phi, psi).unwrap();
                let mc = h1_matrix(&g, &comp).unwrap();
                let mp = h1_matrix(&g, phi).unwrap();
                let mq = h1_matrix(&g, psi).unwrap();
                for col in 0..2 {
                    let diff: Vec<i64> = (0..2)
                        .map(|row| {
                            let prod: i64 =
                                (0..2).map(|t| mp.row(row)[t] * mq.row(t)[col]).sum();
                            mc.row(row)[col] - prod
                        })
                        .collect();
                    assert!(lat.contains(&diff));
                }
            }
        }
    }
}

