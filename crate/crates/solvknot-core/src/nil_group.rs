//! The Heisenberg group Nil, its automorphisms, Aff(Nil), the wallpaper
//! group P, and the lattice groups Gamma(e, eta) via their faithful
//! embedding in Aff(Nil).
//!
//! Points of Nil are upper-triangular coordinates [x, y, w]. Automorphisms
//! are pairs (A, mu) of a 2x2 rational matrix and a rational row vector;
//! their composition carries a quadratic correction term (a cocycle), here
//! called the *composition correction* to avoid colliding with the knot
//! parameter eta. The decisive correctness oracle for both formulas is
//! compose-then-apply versus apply-then-apply on random rational points.

use crate::affine::AffineIso;
use crate::group_table::{build_table, FiniteGroupTable};
use crate::imat::{smith_normal_form, IMat};
use crate::qmat::{qvec_from_i64, QMat};
use crate::rat::{is_int, rat, ratio, to_i64, Rat};
use crate::words::{parse_word, WordError};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum NilError {
    #[error("e must be even, got {0}")]
    OddE(i64),
    #[error("eta must be +1 or -1, got {0}")]
    BadEta(i64),
    #[error("q = 3e - eta - 2 must be nonzero")]
    ZeroQ,
    #[error("unknown generator letter '{0}' (expected u, v or z)")]
    UnknownLetter(char),
    #[error("word syntax: {0}")]
    Parse(#[from] WordError),
    #[error("element is not a member of Gamma(e, eta): {0}")]
    NotMember(String),
    #[error("automorphisms belong to different groups")]
    OwnerMismatch,
    #[error("no integer parameters (s, t, p) exist for k[{0},{1}]")]
    KNotIntegral(i64, i64),
    #[error("outer class closure exceeded the safety bound")]
    OuterClosureBound,
    #[error("element is not in the commutator subgroup")]
    NotInDerivedSubgroup,
    #[error("no conjugator found within search radius {0}")]
    SearchExhausted(i64),
}

// ---------------------------------------------------------------------------
// Nil points
// ---------------------------------------------------------------------------

/// A point [x, y, w] of Nil in upper-triangular matrix coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NilPoint {
    pub x: Rat,
    pub y: Rat,
    pub w: Rat,
}

impl NilPoint {
    pub fn new(x: Rat, y: Rat, w: Rat) -> Self {
        NilPoint { x, y, w }
    }

    pub fn from_i64(x: i64, y: i64, w: i64) -> Self {
        NilPoint::new(rat(x), rat(y), rat(w))
    }

    pub fn identity() -> Self {
        NilPoint::from_i64(0, 0, 0)
    }

    /// [x,y,w]·[x',y',w'] = [x+x', y+y', w+w'+xy'] (matrix product).
    pub fn mul(&self, other: &NilPoint) -> NilPoint {
        NilPoint::new(
            &self.x + &other.x,
            &self.y + &other.y,
            &self.w + &other.w + &self.x * &other.y,
        )
    }

    pub fn inverse(&self) -> NilPoint {
        NilPoint::new(-&self.x, -&self.y, -&self.w + &self.x * &self.y)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.w.is_zero()
    }

    /// Symmetrized coordinates [x, y, w - xy/2]; in these the involution
    /// with linear part rho reads [x, y, s] -> [-y, -x, -s].
    pub fn to_symmetric(&self) -> [Rat; 3] {
        [
            self.x.clone(),
            self.y.clone(),
            &self.w - &self.x * &self.y * ratio(1, 2),
        ]
    }

    pub fn from_symmetric(s: &[Rat; 3]) -> NilPoint {
        NilPoint::new(
            s[0].clone(),
            s[1].clone(),
            &s[2] + &s[0] * &s[1] * ratio(1, 2),
        )
    }
}

// ---------------------------------------------------------------------------
// Nil automorphisms
// ---------------------------------------------------------------------------

/// An automorphism (A, mu) of Nil: A is 2x2 invertible, mu = (mu1, mu2) a
/// row vector. Writing A = (a c; b d), the action is
///   [x,y,w] -> [ax+cy, bx+dy,
///               mu1 x + mu2 y + det(A) w + bc xy
///               + (ab/2) x(x-1) + (cd/2) y(y-1)].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NilAutomorphism {
    pub a: QMat,
    pub mu: [Rat; 2],
}

impl NilAutomorphism {
    pub fn new(a: QMat, mu: [Rat; 2]) -> Self {
        assert_eq!((a.rows, a.cols), (2, 2));
        assert!(!a.det().is_zero(), "linear part must be invertible");
        NilAutomorphism { a, mu }
    }

    pub fn identity() -> Self {
        NilAutomorphism::new(QMat::identity(2), [Rat::zero(), Rat::zero()])
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_identity() && self.mu[0].is_zero() && self.mu[1].is_zero()
    }

    fn entries(&self) -> (Rat, Rat, Rat, Rat) {
        // A = (a c; b d)
        (
            self.a[(0, 0)].clone(),
            self.a[(1, 0)].clone(),
            self.a[(0, 1)].clone(),
            self.a[(1, 1)].clone(),
        )
    }

    pub fn apply(&self, n: &NilPoint) -> NilPoint {
        let (a, b, c, d) = self.entries();
        let det = &a * &d - &b * &c;
        let half = ratio(1, 2);
        let x = &a * &n.x + &c * &n.y;
        let y = &b * &n.x + &d * &n.y;
        let w = &self.mu[0] * &n.x
            + &self.mu[1] * &n.y
            + det * &n.w
            + &b * &c * &n.x * &n.y
            + &a * &b * &half * &n.x * (&n.x - Rat::one())
            + &c * &d * &half * &n.y * (&n.y - Rat::one());
        NilPoint::new(x, y, w)
    }

    /// The quadratic correction entering the composition law; called the
    /// composition correction here (the knot parameter eta is unrelated).
    fn composition_correction(&self, other: &NilAutomorphism) -> [Rat; 2] {
        let (a, b, c, d) = self.entries();
        let (g, h, j, k) = other.entries();
        let one = Rat::one();
        let two = rat(2);
        [
            &a * &b * &g * (&one - &g) + &c * &d * &h * (&one - &h)
                - &two * &b * &c * &g * &h,
            &a * &b * &j * (&one - &j) + &c * &d * &k * (&one - &k)
                - &two * &b * &c * &j * &k,
        ]
    }

    /// (A,mu) ∘ (B,nu) = (AB, mu·B + det(A)·nu - correction/2), so that
    /// compose(self, other) applies `other` first. The sign of the
    /// correction term is forced by the compose-vs-apply oracle: writing
    /// l_M = (M11 M21 / 2, M12 M22 / 2), the mu-part of a composite is
    /// mu·B + det(A)·nu + l_AB - det(A)·l_B - l_A·B, and the trailing
    /// three terms equal minus half the correction.
    pub fn compose(&self, other: &NilAutomorphism) -> NilAutomorphism {
        let ab = self.a.mul(&other.a);
        let det = self.a.det();
        let corr = self.composition_correction(other);
        let half = ratio(1, 2);
        let (g, h, j, k) = other.entries();
        let mu_b = [
            &self.mu[0] * &g + &self.mu[1] * &h,
            &self.mu[0] * &j + &self.mu[1] * &k,
        ];
        NilAutomorphism::new(
            ab,
            [
                mu_b[0].clone() + &det * &other.mu[0] - &half * &corr[0],
                mu_b[1].clone() + &det * &other.mu[1] - &half * &corr[1],
            ],
        )
    }

    pub fn inverse(&self) -> NilAutomorphism {
        let a_inv = self.a.inverse().expect("invertible linear part");
        // Solve (A,mu) ∘ (B,nu) = (I,0) for (B,nu) with B = A^{-1}:
        //   mu·B + det(A)·nu + correction(A,B)/2 = 0.
        let b = NilAutomorphism::new(a_inv, [Rat::zero(), Rat::zero()]);
        let partial = self.compose(&b);
        debug_assert!(partial.a.is_identity());
        let det = self.a.det();
        let nu = [-&partial.mu[0] / &det, -&partial.mu[1] / &det];
        let out = NilAutomorphism::new(b.a, nu);
        debug_assert!(self.compose(&out).is_identity());
        out
    }

    pub fn pow(&self, k: i64) -> NilAutomorphism {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = NilAutomorphism::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Aff(Nil)
// ---------------------------------------------------------------------------

/// An element (n, sigma) of Aff(Nil) = Nil ⋊ Aut(Nil), acting by
/// (n, sigma)(n') = n · sigma(n').
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AffNilElement {
    pub n: NilPoint,
    pub sigma: NilAutomorphism,
}

impl AffNilElement {
    pub fn new(n: NilPoint, sigma: NilAutomorphism) -> Self {
        AffNilElement { n, sigma }
    }

    pub fn identity() -> Self {
        AffNilElement::new(NilPoint::identity(), NilAutomorphism::identity())
    }

    pub fn translation(n: NilPoint) -> Self {
        AffNilElement::new(n, NilAutomorphism::identity())
    }

    /// (n, sigma)(n', sigma') = (n · sigma(n'), sigma ∘ sigma').
    pub fn mul(&self, other: &AffNilElement) -> AffNilElement {
        AffNilElement::new(
            self.n.mul(&self.sigma.apply(&other.n)),
            self.sigma.compose(&other.sigma),
        )
    }

    pub fn inverse(&self) -> AffNilElement {
        let s_inv = self.sigma.inverse();
        AffNilElement::new(s_inv.apply(&self.n.inverse()), s_inv)
    }

    pub fn apply(&self, p: &NilPoint) -> NilPoint {
        self.n.mul(&self.sigma.apply(p))
    }

    pub fn pow(&self, k: i64) -> AffNilElement {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = AffNilElement::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.n.is_identity() && self.sigma.is_identity()
    }

    pub fn commutes_with(&self, other: &AffNilElement) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Image under the projection Aff(Nil) -> Aff(2) that kills the centre.
    pub fn planar_image(&self) -> AffineIso {
        AffineIso::new(vec![self.n.x.clone(), self.n.y.clone()], self.sigma.a.clone())
    }
}

// ---------------------------------------------------------------------------
// The wallpaper group P and its automorphisms
// ---------------------------------------------------------------------------

pub fn beta_matrix() -> QMat {
    QMat::from_i64_rows(&[&[0, 1], &[-1, 1]])
}

pub fn rho_matrix() -> QMat {
    QMat::from_i64_rows(&[&[0, -1], &[-1, 0]])
}

pub(crate) fn key2(m: &QMat) -> [i64; 4] {
    let mut k = [0i64; 4];
    for i in 0..2 {
        for j in 0..2 {
            k[2 * i + j] = to_i64(&m[(i, j)]);
        }
    }
    k
}

pub(crate) fn mat2(k: &[i64; 4]) -> QMat {
    QMat::from_i64_rows(&[&k[0..2], &k[2..4]])
}

pub(crate) fn mul2(a: &[i64; 4], b: &[i64; 4]) -> [i64; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// The point group D = <beta, rho> of order 12, as a concrete table of
/// integer 2x2 matrices.
pub fn point_group_d() -> (Vec<[i64; 4]>, FiniteGroupTable) {
    build_table(
        &[key2(&beta_matrix()), key2(&rho_matrix())],
        |a, b| mul2(a, b),
        24,
    )
}

/// The wallpaper group data: generator images in Aff(2) and the
/// normalizer membership predicate.
pub struct WallpaperP {
    pub u: AffineIso,
    pub v: AffineIso,
    pub z: AffineIso,
    pub d_elements: Vec<[i64; 4]>,
    pub d_table: FiniteGroupTable,
}

pub fn wallpaper_p() -> WallpaperP {
    let (d_elements, d_table) = point_group_d();
    WallpaperP {
        u: AffineIso::translation(qvec_from_i64(&[1, 0])),
        v: AffineIso::translation(qvec_from_i64(&[0, 1])),
        z: AffineIso::linear(beta_matrix().neg()),
        d_elements,
        d_table,
    }
}

impl WallpaperP {
    /// Membership test for the normalizer of P in Aff(2): the linear part
    /// must lie in D and (I + beta) v must be integral.
    pub fn normalizes(&self, f: &AffineIso) -> bool {
        if f.dim() != 2 {
            return false;
        }
        let lin_ok = f.a.data.iter().all(is_int)
            && self.d_elements.contains(&key2(&f.a));
        if !lin_ok {
            return false;
        }
        let m = QMat::identity(2).add(&beta_matrix());
        m.mul_vec(&f.v).iter().all(is_int)
    }
}

/// The outer automorphism group of P as an explicit 12-element table,
/// together with the order profile of the direct product S3 x Z/2 for
/// comparison.
pub struct OutP {
    pub elements: Vec<([i64; 2], [i64; 4])>,
    pub table: FiniteGroupTable,
}

pub fn out_p() -> OutP {
    // Aut(P) = (I + beta^{-1}) T(P) ⋊ D. Translations are taken modulo
    // T(P); the residues form Z/3 since det(I + beta^{-1}) = 3. An outer
    // class is a coset of the inner subgroup, generated at this level by
    // the image of z, i.e. (0, -beta). Elements are canonicalized as the
    // lexicographically least member of their inner coset.
    //
    // Represent a class by (t, A) with t in (scaled) residue coordinates:
    // t = 3 * (translation residue) in Z^2 / 3Z^2.
    let neg_beta = key2(&beta_matrix().neg());
    let inner: Vec<([i64; 2], [i64; 4])> = (0..3)
        .scan(([0i64; 2], [1, 0, 0, 1]), |st, _| {
            let out = *st;
            *st = (st.0, mul2(&st.1, &neg_beta));
            Some(out)
        })
        .collect();
    let canon = move |g: &([i64; 2], [i64; 4])| -> ([i64; 2], [i64; 4]) {
        inner
            .iter()
            .map(|h| raw_mul(g, h))
            .min()
            .unwrap()
    };
    // raw multiplication of (t, A) pairs with t mod 3 (scaled units):
    fn raw_mul(a: &([i64; 2], [i64; 4]), b: &([i64; 2], [i64; 4])) -> ([i64; 2], [i64; 4]) {
        let t = [
            (a.0[0] + a.1[0] * b.0[0] + a.1[1] * b.0[1]).rem_euclid(3),
            (a.0[1] + a.1[2] * b.0[0] + a.1[3] * b.0[1]).rem_euclid(3),
        ];
        (t, mul2(&a.1, &b.1))
    }
    // Generators of Aut(P) at this level: the translation residue of
    // (I + beta^{-1}) e_1, and the linear generators beta (inner at outer
    // level only via z) and rho. (I + beta^{-1}) e_1 = (2, 1).
    let gens: Vec<([i64; 2], [i64; 4])> = vec![
        canon(&([2, 1], [1, 0, 0, 1])),
        canon(&([0, 0], key2(&beta_matrix()))),
        canon(&([0, 0], key2(&rho_matrix()))),
    ];
    let (elements, table) = build_table(&gens, |a, b| canon(&raw_mul(a, b)), 48);
    OutP { elements, table }
}

/// Order profile of the abstract group S3 x Z/2 (= dihedral of order 12).
pub fn s3_x_z2_profile() -> Vec<usize> {
    // S3 as permutation words over {0,1,2}; Z2 as a sign.
    let s3_gens: Vec<([usize; 3], i64)> = vec![([1, 0, 2], 1), ([1, 2, 0], 1), ([0, 1, 2], -1)];
    let (_, table) = build_table(
        &s3_gens,
        |a, b| {
            let p = [a.0[b.0[0]], a.0[b.0[1]], a.0[b.0[2]]];
            (p, a.1 * b.1)
        },
        24,
    );
    table.order_profile()
}

// ---------------------------------------------------------------------------
// Gamma(e, eta)
// ---------------------------------------------------------------------------

/// The lattice group Gamma(e, eta) via its faithful embedding in Aff(Nil):
/// u, v map to unit translations, z to ([0,0,-1/(3q)], alpha) with
/// alpha = (-beta, (0, (eta-1)/q)) and q = 3e - eta - 2.
#[derive(Clone, Debug)]
pub struct GammaGroup {
    pub e: i64,
    pub eta: i64,
    pub q: i64,
    pub u: AffNilElement,
    pub v: AffNilElement,
    pub z: AffNilElement,
}

pub fn gamma_build(e: i64, eta: i64) -> Result<GammaGroup, NilError> {
    if e % 2 != 0 {
        return Err(NilError::OddE(e));
    }
    if eta != 1 && eta != -1 {
        return Err(NilError::BadEta(eta));
    }
    let q = 3 * e - eta - 2;
    if q == 0 {
        return Err(NilError::ZeroQ);
    }
    let u = AffNilElement::translation(NilPoint::from_i64(1, 0, 0));
    let v = AffNilElement::translation(NilPoint::from_i64(0, 1, 0));
    let alpha = NilAutomorphism::new(
        beta_matrix().neg(),
        [Rat::zero(), ratio(eta - 1, q)],
    );
    // The central coordinate of z is -eta/(3q): the u/v/z relators pin it
    // down uniquely (the conjugation relator forces mu2 = (3 eta - 3) w_z
    // and the commutator relator forces 3 eta q w_z = -1, which are
    // simultaneously consistent only with w_z = -eta/(3q)).
    let z = AffNilElement::new(
        NilPoint::new(Rat::zero(), Rat::zero(), ratio(-eta, 3 * q)),
        alpha,
    );
    let g = GammaGroup { e, eta, q, u, v, z };
    let report = verify_gamma_presentations(&g);
    assert!(
        report.iter().all(|(_, ok)| *ok),
        "presentation relators must hold for (e, eta) = ({}, {})",
        e,
        eta
    );
    Ok(g)
}

impl GammaGroup {
    /// The central generator h = z^{3 eta}.
    pub fn h(&self) -> AffNilElement {
        self.z.pow(3 * self.eta)
    }

    pub fn generator(&self, c: char) -> Result<AffNilElement, NilError> {
        match c {
            'u' => Ok(self.u.clone()),
            'v' => Ok(self.v.clone()),
            'z' => Ok(self.z.clone()),
            _ => Err(NilError::UnknownLetter(c)),
        }
    }
}

pub fn gamma_eval(g: &GammaGroup, word: &str) -> Result<AffNilElement, NilError> {
    let mut acc = AffNilElement::identity();
    for (letter, exp) in parse_word(word)? {
        acc = acc.mul(&g.generator(letter)?.pow(exp));
    }
    Ok(acc)
}

/// Verifies both presentations of Gamma(e, eta) inside Aff(Nil): the
/// three u/v/z relators, centrality of h = z^{3 eta}, and the h/x/y/z
/// presentation under the substitutions x = z u, y = x^{-1} h^e z^{-1}.
pub fn verify_gamma_presentations(g: &GammaGroup) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    let (u, v, z) = (&g.u, &g.v, &g.z);
    let eta = g.eta;

    out.push((
        "z u z^-1 = v".to_string(),
        z.mul(u).mul(&z.inverse()) == *v,
    ));
    out.push((
        "z v z^-1 = v^-1 u^-1 z^(3 eta - 3)".to_string(),
        z.mul(v).mul(&z.inverse())
            == v.inverse().mul(&u.inverse()).mul(&z.pow(3 * eta - 3)),
    ));
    out.push((
        "v u v^-1 u^-1 = z^(3 eta q)".to_string(),
        v.mul(u).mul(&v.inverse()).mul(&u.inverse()) == z.pow(3 * eta * g.q),
    ));
    out.push((
        "v u v^-1 u^-1 = ([0,0,-1], id)".to_string(),
        v.mul(u).mul(&v.inverse()).mul(&u.inverse())
            == AffNilElement::translation(NilPoint::from_i64(0, 0, -1)),
    ));

    let h = g.h();
    out.push(("h commutes with u".to_string(), h.commutes_with(u)));
    out.push(("h commutes with v".to_string(), h.commutes_with(v)));
    out.push(("h commutes with z".to_string(), h.commutes_with(z)));

    // First presentation via x = z u, y = x^-1 h^e z^-1.
    let x = z.mul(u);
    let y = x.inverse().mul(&h.pow(g.e)).mul(&z.inverse());
    out.push(("x^3 = h".to_string(), x.pow(3) == h));
    out.push(("y^3 = h".to_string(), y.pow(3) == h));
    out.push(("z^(3 eta) = h".to_string(), z.pow(3 * eta) == h));
    out.push(("x y z = h^e".to_string(), x.mul(&y).mul(z) == h.pow(g.e)));
    // Substitution consistency: u = z^-1 x and v = x z^-1.
    out.push(("u = z^-1 x".to_string(), z.inverse().mul(&x) == *u));
    out.push(("v = x z^-1".to_string(), x.mul(&z.inverse()) == *v));
    out
}

/// The collection normal form z^r u^a v^b (z^3)^c with r in {0, 1, 2}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaNormalForm {
    pub r: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Decides membership of an Aff(Nil) element in the embedded Gamma(e, eta)
/// and returns its collection normal form.
pub fn gamma_membership(
    g: &GammaGroup,
    elt: &AffNilElement,
) -> Result<GammaNormalForm, NilError> {
    // The linear part of z is -beta, of order 3; it determines r mod 3.
    let r = (0..3)
        .find(|&r| g.z.pow(r).sigma.a == elt.sigma.a)
        .ok_or_else(|| NilError::NotMember("linear part not a power of -beta".into()))?;
    let rest = g.z.pow(-r).mul(elt);
    if !is_int(&rest.n.x) || !is_int(&rest.n.y) {
        return Err(NilError::NotMember("translation part not integral".into()));
    }
    let (a, b) = (to_i64(&rest.n.x), to_i64(&rest.n.y));
    let central = g.v.pow(-b).mul(&g.u.pow(-a)).mul(&rest);
    let z3 = g.z.pow(3);
    if !central.sigma.is_identity() || !central.n.x.is_zero() || !central.n.y.is_zero() {
        return Err(NilError::NotMember("residue is not central".into()));
    }
    let step = &z3.n.w;
    let c_rat = &central.n.w / step;
    if !is_int(&c_rat) {
        return Err(NilError::NotMember("central part not a power of z^3".into()));
    }
    let c = to_i64(&c_rat);
    let nf = GammaNormalForm { r, a, b, c };
    debug_assert_eq!(gamma_normal_form_eval(g, &nf), *elt);
    Ok(nf)
}

pub fn gamma_normal_form_eval(g: &GammaGroup, nf: &GammaNormalForm) -> AffNilElement {
    g.z.pow(nf.r)
        .mul(&g.u.pow(nf.a))
        .mul(&g.v.pow(nf.b))
        .mul(&g.z.pow(3 * nf.c))
}

// ---------------------------------------------------------------------------
// H1
// ---------------------------------------------------------------------------

/// Invariant factors of the abelianization of Gamma(e, eta): (3, 3|q|).
pub fn h1_gamma(g: &GammaGroup) -> Vec<i64> {
    // Abelianized relations over (u, v, z):
    //   u - v = 0;  u + 2v - (3 eta - 3) z = 0;  3 eta q z = 0.
    let rel = IMat::from_rows(&[
        vec![1, -1, 0],
        vec![1, 2, -(3 * g.eta - 3)],
        vec![0, 0, 3 * g.eta * g.q],
    ]);
    smith_normal_form(&rel)
        .elementary_divisors()
        .into_iter()
        .filter(|&d| d != 1)
        .map(|d| d.abs())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
        ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9))
    }

    fn rand_point(rng: &mut ChaCha8Rng) -> NilPoint {
        NilPoint::new(rand_rat(rng), rand_rat(rng), rand_rat(rng))
    }

    fn rand_aut(rng: &mut ChaCha8Rng) -> NilAutomorphism {
        loop {
            let a = QMat::from_rows(vec![
                vec![rand_rat(rng), rand_rat(rng)],
                vec![rand_rat(rng), rand_rat(rng)],
            ]);
            if !a.det().is_zero() {
                return NilAutomorphism::new(a, [rand_rat(rng), rand_rat(rng)]);
            }
        }
    }

    #[test]
    fn nil_point_group_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (p, q, r) = (rand_point(&mut rng), rand_point(&mut rng), rand_point(&mut rng));
            assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            assert!(p.mul(&p.inverse()).is_identity());
            let s = p.to_symmetric();
            assert_eq!(NilPoint::from_symmetric(&s), p);
        }
    }

    #[test]
    fn automorphisms_are_homomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let s = rand_aut(&mut rng);
            let (p, q) = (rand_point(&mut rng), rand_point(&mut rng));
            assert_eq!(s.apply(&p.mul(&q)), s.apply(&p).mul(&s.apply(&q)));
        }
    }

    #[test]
    fn compose_vs_apply_oracle() {
        // The decisive oracle for the twisted composition law: at least a
        // thousand random rational triples.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..1000 {
            let s = rand_aut(&mut rng);
            let t = rand_aut(&mut rng);
            let p = rand_point(&mut rng);
            assert_eq!(s.compose(&t).apply(&p), s.apply(&t.apply(&p)));
        }
    }

    #[test]
    fn compose_associative_and_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let (s, t, u) = (rand_aut(&mut rng), rand_aut(&mut rng), rand_aut(&mut rng));
            assert_eq!(s.compose(&t).compose(&u), s.compose(&t.compose(&u)));
            assert!(s.compose(&s.inverse()).is_identity());
            assert!(s.inverse().compose(&s).is_identity());
            assert_eq!(s.compose(&NilAutomorphism::identity()), s);
        }
    }

    #[test]
    fn rho_involution_in_symmetric_coordinates() {
        let r = NilAutomorphism::new(rho_matrix(), [Rat::zero(), Rat::zero()]);
        // In symmetrized coordinates [x, y, s] -> [-y, -x, -s].
        let p = NilPoint::from_symmetric(&[rat(1), rat(2), rat(3)]);
        assert_eq!(r.apply(&p).to_symmetric(), [rat(-2), rat(-1), rat(-3)]);
        // In matrix coordinates the same point reads [-2, -1, -1].
        assert_eq!(r.apply(&NilPoint::from_i64(1, 2, 3)), NilPoint::from_i64(-2, -1, -1));
        assert!(r.compose(&r).is_identity());
    }

    #[test]
    fn alpha_cubed_has_identity_linear_part() {
        let g = gamma_build(0, -1).unwrap();
        assert!(g.z.pow(3).sigma.a.is_identity());
        // (-beta)^3 = I since beta^3 = -I.
        let nb = beta_matrix().neg();
        assert!(nb.mul(&nb).mul(&nb).is_identity());
    }

    #[test]
    fn gamma_parameters() {
        assert_eq!(gamma_build(0, -1).unwrap().q, -1);
        assert_eq!(gamma_build(2, 1).unwrap().q, 3);
        assert!(matches!(gamma_build(1, 1), Err(NilError::OddE(1))));
        assert!(matches!(gamma_build(0, 2), Err(NilError::BadEta(2))));
    }

    #[test]
    fn presentations_hold_on_the_test_grid() {
        for e in [-2, 0, 2] {
            for eta in [1, -1] {
                let g = gamma_build(e, eta).unwrap();
                for (name, ok) in verify_gamma_presentations(&g) {
                    assert!(ok, "({}, {}): {}", e, eta, name);
                }
            }
        }
    }

    #[test]
    fn gamma_eval_examples() {
        let g = gamma_build(0, -1).unwrap();
        assert_eq!(
            gamma_eval(&g, "v u v^-1 u^-1").unwrap(),
            AffNilElement::translation(NilPoint::from_i64(0, 0, -1))
        );
        assert_eq!(gamma_eval(&g, "").unwrap(), AffNilElement::identity());
        assert_eq!(
            gamma_eval(&g, "z u z^-1").unwrap(),
            gamma_eval(&g, "v").unwrap()
        );
        assert!(matches!(gamma_eval(&g, "w"), Err(NilError::UnknownLetter('w'))));
    }

    #[test]
    fn center_commutes_with_short_words() {
        for (e, eta) in [(0, -1), (2, 1)] {
            let g = gamma_build(e, eta).unwrap();
            let h = g.h();
            let gens = ["u", "v", "z"];
            let mut words: Vec<String> = vec![String::new()];
            for _ in 0..4 {
                words = words
                    .iter()
                    .flat_map(|w| gens.iter().map(move |c| format!("{} {}", w, c)))
                    .collect();
                for w in &words {
                    assert!(h.commutes_with(&gamma_eval(&g, w).unwrap()), "{}", w);
                }
            }
        }
    }

    #[test]
    fn normal_form_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (e, eta) in [(0, -1), (0, 1), (2, 1), (-2, -1)] {
            let g = gamma_build(e, eta).unwrap();
            for _ in 0..40 {
                let nf = GammaNormalForm {
                    r: rng.gen_range(0..3),
                    a: rng.gen_range(-4..=4),
                    b: rng.gen_range(-4..=4),
                    c: rng.gen_range(-3..=3),
                };
                let elt = gamma_normal_form_eval(&g, &nf);
                assert_eq!(gamma_membership(&g, &elt).unwrap(), nf);
            }
            // A non-member: an irrational-for-Gamma translation.
            let bad = AffNilElement::translation(NilPoint::new(
                ratio(1, 2),
                Rat::zero(),
                Rat::zero(),
            ));
            assert!(gamma_membership(&g, &bad).is_err());
        }
    }

    #[test]
    fn wallpaper_group_and_out_p() {
        let p = wallpaper_p();
        assert_eq!(p.d_elements.len(), 12);
        // z normalizes P; so does (0, -I2); a half-integer translation
        // does not.
        assert!(p.normalizes(&p.z));
        assert!(p.normalizes(&AffineIso::linear(QMat::from_i64_rows(&[&[-1, 0], &[0, -1]]))));
        assert!(p.normalizes(&p.u));
        assert!(!p.normalizes(&AffineIso::translation(vec![ratio(1, 2), Rat::zero()])));
        // but the normalizer is strictly larger than P: third-integer
        // translations in (I + beta)^{-1} Z^2 normalize.
        let third = QMat::identity(2)
            .add(&beta_matrix())
            .inverse()
            .unwrap()
            .mul_vec(&qvec_from_i64(&[1, 0]));
        assert!(p.normalizes(&AffineIso::translation(third)));

        let out = out_p();
        assert_eq!(out.elements.len(), 12);
        assert_eq!(out.table.order_profile(), s3_x_z2_profile());
    }

    #[test]
    fn h1_invariant_factors() {
        assert_eq!(h1_gamma(&gamma_build(0, -1).unwrap()), vec![3, 3]);
        assert_eq!(h1_gamma(&gamma_build(2, 1).unwrap()), vec![3, 9]);
        for (e, eta) in [(-2, 1), (-2, -1), (0, 1), (2, -1)] {
            let g = gamma_build(e, eta).unwrap();
            assert_eq!(h1_gamma(&g), vec![3, 3 * g.q.abs()]);
        }
    }
}
