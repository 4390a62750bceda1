//! The flat 3-dimensional crystallographic group `G6` (Hantzsche-Wendt
//! group), realized by affine isometries of Q^3.
//!
//! Generators:
//!   x = (e1/2, X),  y = ((e2-e3)/2, Y),  z = xy = ((e1-e2+e3)/2, Z)
//! with X = diag(1,-1,-1), Y = diag(-1,1,-1), Z = diag(-1,-1,1).
//!
//! The translation subgroup is T = Z^3 with basis (x^2, y^2, z^2) mapping to
//! (e1, e2, e3); an element is written by its holonomy coset and an integer
//! translation.

use crate::affine::AffineIso;
use crate::imat::{smith_normal_form, IMat};
use crate::lattice::IntegerLattice;
use crate::qmat::{qvec_from_i64, qvec_sub, QMat, QVec};
use crate::rat::{is_int, rat, ratio, to_i64};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlatError {
    #[error("affine map is not an element of G6: {0}")]
    NotInG6(String),
    #[error("element is not in the requested subgroup: {0}")]
    NotInSubgroup(String),
    #[error("unknown generator letter '{0}'")]
    BadLetter(char),
    #[error("word parse error: {0}")]
    Parse(#[from] crate::words::WordError),
}

/// Holonomy classes of G6: the quotient G6/T is (Z/2)^2.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord, Hash)]
pub enum Hol {
    I,
    X,
    Y,
    Z,
}

pub const HOLS: [Hol; 4] = [Hol::I, Hol::X, Hol::Y, Hol::Z];

impl Hol {
    pub fn matrix(self) -> QMat {
        match self {
            Hol::I => QMat::identity(3),
            Hol::X => QMat::from_i64_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            Hol::Y => QMat::from_i64_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
            Hol::Z => QMat::from_i64_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
        }
    }

    /// Coset offset: the translation part of the standard representative.
    pub fn offset(self) -> QVec {
        match self {
            Hol::I => vec![rat(0), rat(0), rat(0)],
            Hol::X => vec![ratio(1, 2), rat(0), rat(0)],
            Hol::Y => vec![rat(0), ratio(1, 2), ratio(-1, 2)],
            Hol::Z => vec![ratio(1, 2), ratio(-1, 2), ratio(1, 2)],
        }
    }

    /// Image in G6/T = (Z/2)^2, with x -> (1,0), y -> (0,1).
    pub fn f2_class(self) -> [u8; 2] {
        match self {
            Hol::I => [0, 0],
            Hol::X => [1, 0],
            Hol::Y => [0, 1],
            Hol::Z => [1, 1],
        }
    }

    fn from_matrix(m: &QMat) -> Option<Hol> {
        HOLS.into_iter().find(|h| h.matrix() == *m)
    }
}

/// An element of G6 as a certified affine isometry, together with its
/// decomposition `g = (offset(h) + t, h.matrix())` with `t` integral.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct G6Element {
    pub affine: AffineIso,
    pub holonomy: Hol,
    /// Integer translation `t` with `g = translation(t) * rep(holonomy)`.
    pub translation: [i64; 3],
}

impl G6Element {
    pub fn affine(&self) -> &AffineIso {
        &self.affine
    }
}

pub fn gen_x() -> AffineIso {
    AffineIso::new(Hol::X.offset(), Hol::X.matrix())
}

pub fn gen_y() -> AffineIso {
    AffineIso::new(Hol::Y.offset(), Hol::Y.matrix())
}

pub fn gen_z() -> AffineIso {
    gen_x().compose(&gen_y())
}

/// Decide membership of an affine map in G6 and return its decomposition.
pub fn g6_membership(f: &AffineIso) -> Result<G6Element, FlatError> {
    if f.dim() != 3 {
        return Err(FlatError::NotInG6("wrong dimension".into()));
    }
    let h = Hol::from_matrix(&f.a)
        .ok_or_else(|| FlatError::NotInG6("linear part is not in the holonomy group".into()))?;
    let diff = qvec_sub(&f.v, &h.offset());
    if !diff.iter().all(is_int) {
        return Err(FlatError::NotInG6(format!(
            "translation offset is not integral for holonomy {:?}",
            h
        )));
    }
    let t: Vec<i64> = diff.iter().map(to_i64).collect();
    Ok(G6Element { affine: f.clone(), holonomy: h, translation: [t[0], t[1], t[2]] })
}

/// A word in the generators x, y, z: letters with integer exponents.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct G6Word(pub Vec<(char, i64)>);

impl G6Word {
    pub fn parse(s: &str) -> Result<G6Word, FlatError> {
        Ok(G6Word(crate::words::parse_word(s)?))
    }
}

/// Evaluate a word in x, y, z to an affine isometry.
pub fn g6_eval(word: &G6Word) -> Result<AffineIso, FlatError> {
    let mut out = AffineIso::identity(3);
    for &(letter, exp) in &word.0 {
        let g = match letter {
            'x' => gen_x(),
            'y' => gen_y(),
            'z' => gen_z(),
            other => return Err(FlatError::BadLetter(other)),
        };
        out = out.compose(&g.pow(exp));
    }
    Ok(out)
}

/// The pure translation `x^{2m} y^{2n} z^{2p}` in T-coordinates.
pub fn t_element(m: i64, n: i64, p: i64) -> AffineIso {
    AffineIso::translation(qvec_from_i64(&[m, n, p]))
}

/// If `f` is a pure translation in T, return its T-coordinates.
pub fn t_coordinates(f: &AffineIso) -> Option<[i64; 3]> {
    let g = g6_membership(f).ok()?;
    if g.holonomy == Hol::I {
        Some(g.translation)
    } else {
        None
    }
}

/// Report from checking the defining presentation and the dictionary into
/// Zimmermann's generating set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationReport {
    pub relator_xyyxyy: bool,
    pub relator_yxxyxx: bool,
    pub z_equals_xy: bool,
    pub x2_y2_z2_are_standard_basis: bool,
    pub zimmermann_z_is_y_x_inv: bool,
    pub zimmermann_z_is_y2_z_inv: bool,
    pub zimmermann_z_squared_is_z_minus_2: bool,
    pub zimmermann_relators: bool,
}

impl PresentationReport {
    pub fn all_ok(&self) -> bool {
        self.relator_xyyxyy
            && self.relator_yxxyxx
            && self.z_equals_xy
            && self.x2_y2_z2_are_standard_basis
            && self.zimmermann_z_is_y_x_inv
            && self.zimmermann_z_is_y2_z_inv
            && self.zimmermann_z_squared_is_z_minus_2
            && self.zimmermann_relators
    }
}

/// Check `x y^2 x^{-1} y^2 = y x^2 y^{-1} x^2 = 1`, `z = xy`, the T basis,
/// and the dictionary `z_Z = y x^{-1}` into the alternative presentation
/// `z_Z y x = x^2 z_Z^2 = z_Z^2 x^2`.
pub fn verify_g6_presentation() -> PresentationReport {
    let x = gen_x();
    let y = gen_y();
    let z = gen_z();
    let e = |w: &str| g6_eval(&G6Word::parse(w).unwrap()).unwrap();

    let r1 = e("x y^2 x^-1 y^2").is_identity();
    let r2 = e("y x^2 y^-1 x^2").is_identity();
    let zxy = z == x.compose(&y);
    let basis = t_coordinates(&e("x^2")) == Some([1, 0, 0])
        && t_coordinates(&e("y^2")) == Some([0, 1, 0])
        && t_coordinates(&e("z^2")) == Some([0, 0, 1]);

    let zz = y.compose(&x.inverse());
    let zim1 = zz == e("y^2 z^-1");
    let zim2 = zz.compose(&zz) == e("z^-2");
    // relators of the alternative presentation: z_Z y x = x^2 z_Z^2 = z_Z^2 x^2
    let lhs = zz.compose(&y).compose(&x);
    let mid = e("x^2").compose(&zz).compose(&zz);
    let rhs = zz.compose(&zz).compose(&e("x^2"));
    let zim3 = lhs == mid && mid == rhs;

    PresentationReport {
        relator_xyyxyy: r1,
        relator_yxxyxx: r2,
        z_equals_xy: zxy,
        x2_y2_z2_are_standard_basis: basis,
        zimmermann_z_is_y_x_inv: zim1,
        zimmermann_z_is_y2_z_inv: zim2,
        zimmermann_z_squared_is_z_minus_2: zim3,
        zimmermann_relators: zim3,
    }
}

/// The three nested lattices T > G6' > 2T in T-coordinates, with indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupLattices {
    pub t: IntegerLattice,
    pub commutator: IntegerLattice,
    pub two_t: IntegerLattice,
    pub index_t_over_commutator: u64,
    pub index_commutator_over_two_t: u64,
    /// Invariant factors of T/G6' (expected: 2, 2).
    pub t_mod_commutator: Vec<i64>,
    /// Invariant factors of G6'/2T (expected: 2).
    pub commutator_mod_two_t: Vec<i64>,
}

/// G6' has basis {x^4, y^4, x^2 y^2 z^-2}, i.e. rows (2,0,0), (0,2,0),
/// (1,1,-1) in T-coordinates.
pub fn commutator_lattice() -> IntegerLattice {
    IntegerLattice::from_generators(3, &[vec![2, 0, 0], vec![0, 2, 0], vec![1, 1, -1]])
}

pub fn g6_subgroup_lattices() -> SubgroupLattices {
    let t = IntegerLattice::full(3);
    let c = commutator_lattice();
    let two_t = t.scaled(2);
    let i1 = c.index_in(&t).expect("G6' <= T with finite index");
    let i2 = two_t.index_in(&c).expect("2T <= G6' with finite index");

    // quotient invariant factors: SNF of the sublattice basis written in the
    // ambient basis
    let quot = |sub: &IntegerLattice, amb: &IntegerLattice| -> Vec<i64> {
        // coordinates of sub basis in amb basis
        let bt = IMat::from_rows(&amb.basis).transpose();
        let coords: Vec<Vec<i64>> = sub
            .basis
            .iter()
            .map(|b| crate::imat::solve_integer(&bt, b).expect("sublattice").0)
            .collect();
        smith_normal_form(&IMat::from_rows(&coords))
            .elementary_divisors()
            .into_iter()
            .filter(|&d| d != 1)
            .collect()
    };

    SubgroupLattices {
        t_mod_commutator: quot(&c, &t),
        commutator_mod_two_t: quot(&two_t, &c),
        t,
        commutator: c,
        two_t,
        index_t_over_commutator: i1,
        index_commutator_over_two_t: i2,
    }
}

/// H1(G6) = (Z/4)^2 on the images of x and y.
///
/// The class of `g = translation(t) * rep(h)` is
/// `(eps_x(h) + 2 t1 + 2 t3, eps_y(h) + 2 t2 + 2 t3) mod 4`
/// since x^2, y^2, z^2 abelianize to 2x, 2y, 2(x+y).
pub fn h1_class(g: &G6Element) -> [i64; 4 / 2] {
    let [t1, t2, t3] = g.translation;
    let [ex, ey] = g.holonomy.f2_class();
    [
        (ex as i64 + 2 * t1 + 2 * t3).rem_euclid(4),
        (ey as i64 + 2 * t2 + 2 * t3).rem_euclid(4),
    ]
}

/// Abelianization data of G6 via Smith reduction of the relator matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct H1G6 {
    /// Invariant factors (expected: 4, 4).
    pub invariant_factors: Vec<i64>,
    pub x4_maps_to_zero: bool,
    pub class_map_is_homomorphism_spot_check: bool,
}

pub fn h1_g6() -> H1G6 {
    // abelianized relators: x y^2 x^-1 y^2 -> 4y, y x^2 y^-1 x^2 -> 4x
    let rel = IMat::from_rows(&[vec![0, 4], vec![4, 0]]);
    let snf = smith_normal_form(&rel);
    let factors: Vec<i64> = snf
        .elementary_divisors()
        .into_iter()
        .filter(|&d| d != 1)
        .collect();

    let e = |w: &str| g6_membership(&g6_eval(&G6Word::parse(w).unwrap()).unwrap()).unwrap();
    let x4_zero = h1_class(&e("x^4")) == [0, 0];

    // spot check that h1_class is a homomorphism on a few products
    let words = ["x", "y", "z", "x y", "x^2 y^-1 z", "z^3 x y^2", "y^-1 x^-1"];
    let mut ok = true;
    for a in words {
        for b in words {
            let ga = e(a);
            let gb = e(b);
            let gab = g6_membership(&ga.affine.compose(&gb.affine)).unwrap();
            let ca = h1_class(&ga);
            let cb = h1_class(&gb);
            let cab = h1_class(&gab);
            if cab != [(ca[0] + cb[0]).rem_euclid(4), (ca[1] + cb[1]).rem_euclid(4)] {
                ok = false;
            }
        }
    }

    H1G6 {
        invariant_factors: factors,
        x4_maps_to_zero: x4_zero,
        class_map_is_homomorphism_spot_check: ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_holds() {
        let r = verify_g6_presentation();
        assert!(r.all_ok(), "{:?}", r);
    }

    #[test]
    fn membership_decides_correctly() {
        assert!(g6_membership(&gen_x()).is_ok());
        assert!(g6_membership(&gen_z()).is_ok());
        assert!(g6_membership(&t_element(3, -2, 5)).is_ok());
        // half-integer pure translation is not in G6
        let bad = AffineIso::translation(vec![ratio(1, 2), rat(0), rat(0)]);
        assert!(g6_membership(&bad).is_err());
        // wrong linear part
        let bad2 = AffineIso::linear(QMat::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]));
        assert!(g6_membership(&bad2).is_err());
    }

    #[test]
    fn word_evaluation_round_trips() {
        let w = G6Word::parse("x^2 y^-3 z x").unwrap();
        let f = g6_eval(&w).unwrap();
        let g = g6_membership(&f).unwrap();
        // rebuild from decomposition
        let rebuilt = AffineIso::translation(qvec_from_i64(&g.translation))
            .compose(&AffineIso::new(g.holonomy.offset(), g.holonomy.matrix()));
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn subgroup_lattice_indices() {
        let l = g6_subgroup_lattices();
        assert_eq!(l.index_t_over_commutator, 4);
        assert_eq!(l.index_commutator_over_two_t, 2);
        assert_eq!(l.t_mod_commutator, vec![2, 2]);
        assert_eq!(l.commutator_mod_two_t, vec![2]);
        assert!(l.two_t.is_sublattice_of(&l.commutator));
        assert!(l.commutator.is_sublattice_of(&l.t));
    }

    #[test]
    fn h1_is_z4_squared() {
        let h = h1_g6();
        assert_eq!(h.invariant_factors, vec![4, 4]);
        assert!(h.x4_maps_to_zero);
        assert!(h.class_map_is_homomorphism_spot_check);
    }

    #[test]
    fn h1_classes_of_generators() {
        let e = |w: &str| g6_membership(&g6_eval(&G6Word::parse(w).unwrap()).unwrap()).unwrap();
        assert_eq!(h1_class(&e("x")), [1, 0]);
        assert_eq!(h1_class(&e("y")), [0, 1]);
        assert_eq!(h1_class(&e("z")), [1, 1]);
        assert_eq!(h1_class(&e("x^2")), [2, 0]);
        assert_eq!(h1_class(&e("z^2")), [2, 2]);
    }
}
