//! Automorphisms of G6 via the affine normalizer N = N_{Aff(3)}(G6).
//!
//! Since the centralizer of G6 in Aff(3) is trivial, Aut(G6) is isomorphic
//! to N and Out(G6) to N/G6. The named generators are
//!   a = (0,-X), b = (0,-Y), c = (0,-Z),
//!   d = (e1/2, I), e = (e2/2, I), f = (e3/2, I),
//!   i = (-e3/4, P), j = ((e1-e2)/4, J),
//! with P the (1 2)-swap negating e3 and J the signed 3-cycle below.
//!
//! Out(G6) is enumerated concretely: translations of N lie in (1/4)Z^3, so
//! N/T is finite (order 384) and Out(G6) = N/G6 has order 96. Outer classes
//! are canonicalized by reducing the translation into [0,1)^3 and taking the
//! lexicographic minimum over the four coset multiples by {1, x, y, z}.

use crate::affine::AffineIso;
use crate::flat_group::{g6_eval, g6_membership, gen_x, gen_y, gen_z, h1_class, G6Element, G6Word};
use crate::group_table::{build_table, FiniteGroupTable};
use crate::qmat::QMat;
use crate::rat::{frac_part, rat, ratio, to_i64, Rat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    #[error("unknown automorphism letter '{0}'")]
    BadLetter(char),
    #[error("word parse error: {0}")]
    Parse(#[from] crate::words::WordError),
    #[error("affine map does not normalize G6: {0}")]
    NotInNormalizer(String),
    #[error("meridianal criteria disagree for the given automorphism")]
    CriteriaDisagree,
}

/// A certified element of N (equivalently, an automorphism of G6).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct G6Automorphism {
    pub rep: AffineIso,
    pub name: Option<String>,
}

fn p_matrix() -> QMat {
    QMat::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]])
}

fn j_matrix() -> QMat {
    QMat::from_i64_rows(&[&[0, 1, 0], &[0, 0, -1], &[1, 0, 0]])
}

pub fn named_aut(letter: char) -> Result<AffineIso, AutError> {
    let half = |k: usize| {
        let mut v = vec![rat(0), rat(0), rat(0)];
        v[k] = ratio(1, 2);
        v
    };
    Ok(match letter {
        'a' => AffineIso::linear(crate::flat_group::Hol::X.matrix().neg()),
        'b' => AffineIso::linear(crate::flat_group::Hol::Y.matrix().neg()),
        'c' => AffineIso::linear(crate::flat_group::Hol::Z.matrix().neg()),
        'd' => AffineIso::translation(half(0)),
        'e' => AffineIso::translation(half(1)),
        'f' => AffineIso::translation(half(2)),
        'i' => AffineIso::new(vec![rat(0), rat(0), ratio(-1, 4)], p_matrix()),
        'j' => AffineIso::new(vec![ratio(1, 4), ratio(-1, 4), rat(0)], j_matrix()),
        // group elements admitted in words such as c_x = bcd = x
        'x' => gen_x(),
        'y' => gen_y(),
        'z' => gen_z(),
        other => return Err(AutError::BadLetter(other)),
    })
}

/// Evaluate a word over {a..f, i, j, x, y, z} with `^k` exponents to an
/// affine map (left-to-right product).
pub fn aut_word(s: &str) -> Result<AffineIso, AutError> {
    let mut out = AffineIso::identity(3);
    for (letter, exp) in crate::words::parse_word(s)? {
        out = out.compose(&named_aut(letter)?.pow(exp));
    }
    Ok(out)
}

/// Decide membership in N: the map must conjugate both x and y into G6.
pub fn normalizer_membership(f: &AffineIso) -> Result<G6Automorphism, AutError> {
    if f.dim() != 3 {
        return Err(AutError::NotInNormalizer("wrong dimension".into()));
    }
    for (name, g) in [("x", gen_x()), ("y", gen_y())] {
        let conj = g.conjugate(f);
        if g6_membership(&conj).is_err() {
            return Err(AutError::NotInNormalizer(format!(
                "conjugate of {} is not in G6",
                name
            )));
        }
    }
    Ok(G6Automorphism { rep: f.clone(), name: None })
}

/// Apply the automorphism (conjugation in Aff(3)) to a group element.
pub fn aut_apply(phi: &G6Automorphism, g: &G6Element) -> G6Element {
    let conj = g.affine.conjugate(&phi.rep);
    g6_membership(&conj).expect("automorphism must map G6 into G6")
}

pub fn is_orientation_preserving(f: &AffineIso) -> bool {
    f.a.det() == rat(1)
}

/// Check the generator action table: each of a..f, i, j sends (x, y) to the
/// stated words.
pub fn verify_generator_actions() -> Vec<(String, bool)> {
    let table: [(char, &str, &str); 8] = [
        ('a', "x^-1", "y"),
        ('b', "x", "y^-1"),
        ('c', "x", "z^2 y"),
        ('d', "x", "x^2 y"),
        ('e', "y^2 x", "y"),
        ('f', "z^2 x", "z^2 y"),
        ('i', "y", "x"),
        ('j', "z", "x"),
    ];
    let mut out = Vec::new();
    for (letter, img_x, img_y) in table {
        let phi = named_aut(letter).unwrap();
        let ok = gen_x().conjugate(&phi) == g6_eval(&G6Word::parse(img_x).unwrap()).unwrap()
            && gen_y().conjugate(&phi) == g6_eval(&G6Word::parse(img_y).unwrap()).unwrap();
        out.push((format!("{}: x -> {}, y -> {}", letter, img_x, img_y), ok));
    }
    out
}

/// Relations that hold exactly in Aut(G6) (i.e. as affine identities in N).
pub fn aut_relations() -> Vec<(&'static str, &'static str)> {
    vec![
        ("a^2", ""),
        ("b^2", ""),
        ("c^2", ""),
        ("ab", "ba"),
        ("ac", "ca"),
        ("bc", "cb"),
        ("de", "ed"),
        ("df", "fd"),
        ("ef", "fe"),
        ("ada", "d^-1"),
        ("ae", "ea"),
        ("af", "fa"),
        ("bd", "db"),
        ("beb", "e^-1"),
        ("bf", "fb"),
        ("cd", "dc"),
        ("ce", "ec"),
        ("cfc", "f^-1"),
        ("j^3", "abce"),
        ("j^6", ""),
        ("jaj^-1", "c"),
        ("jbj^-1", "ad^-1"),
        ("jcj^-1", "be"),
        ("jdj^-1", "f"),
        ("jej^-1", "d"),
        ("jfj^-1", "e^-1"),
        ("i^2", ""),
        ("idi", "e"),
        ("iei", "d"),
        ("ifi", "f^-1"),
        ("iai", "b"),
        ("ibi", "a"),
        ("ici", "cf"),
        ("jiji", "d"),
        // inner automorphisms
        ("bcd", "x"),
        ("acef", "y"),
        ("bcdacef", "z"),
        ("bcdbcd", "d^2"),
        ("acefacef", "e^2"),
        ("xy xy", "f^2"),
    ]
}

/// Relations of the Out(G6) presentation that only hold modulo inner
/// automorphisms (checked at the canonical-label level).
pub fn out_relations() -> Vec<(&'static str, &'static str)> {
    vec![
        ("ici", "ae"),
        ("jbj^-1", "abc"),
        ("jej^-1", "bc"),
        ("jiji", "bc"),
        ("d", "bc"),
        ("f", "ace"),
        ("j^3", "abce"),
    ]
}

pub fn verify_aut_presentation() -> Vec<(String, bool)> {
    let mut report = Vec::new();
    for (lhs, rhs) in aut_relations() {
        let ok = aut_word(lhs).unwrap() == aut_word(rhs).unwrap();
        report.push((format!("{} = {}", lhs, if rhs.is_empty() { "1" } else { rhs }), ok));
    }
    let out = out_g6_cached();
    for (lhs, rhs) in out_relations() {
        let ok = out.label_of(&aut_word(lhs).unwrap()) == out.label_of(&aut_word(rhs).unwrap());
        report.push((
            format!("[{}] = [{}] in Out", lhs, if rhs.is_empty() { "1" } else { rhs }),
            ok,
        ));
    }
    report
}

// ---------------------------------------------------------------------------
// Enumeration of N/T and Out(G6)
// ---------------------------------------------------------------------------

/// The 48 signed permutation matrices of rank 3.
pub fn signed_permutations() -> Vec<QMat> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..8u8 {
            let mut m = QMat::zero(3, 3);
            for (col, &row) in p.iter().enumerate() {
                let s = if signs >> col & 1 == 1 { -1 } else { 1 };
                m[(row, col)] = rat(s);
            }
            out.push(m);
        }
    }
    out
}

fn quarter_vec(w4: &[i64; 3]) -> Vec<Rat> {
    w4.iter().map(|&k| ratio(k, 4)).collect()
}

/// Translation residues w mod Z^3 (in quarter units, entries 0..3) making
/// (w, B) an element of N, for the given signed permutation B.
pub fn valid_residues(b: &QMat) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for q1 in 0..4 {
        for q2 in 0..4 {
            for q3 in 0..4 {
                let w4 = [q1, q2, q3];
                let f = AffineIso::new(quarter_vec(&w4), b.clone());
                if normalizer_membership(&f).is_ok() {
                    out.push(w4);
                }
            }
        }
    }
    out
}

fn mat_key(m: &QMat) -> [i64; 9] {
    let mut k = [0i64; 9];
    for i in 0..3 {
        for j in 0..3 {
            k[3 * i + j] = to_i64(&m[(i, j)]);
        }
    }
    k
}

fn mat_from_key(k: &[i64; 9]) -> QMat {
    QMat::from_i64_rows(&[&k[0..3], &k[3..6], &k[6..9]])
}

/// Canonical label of an outer class [f] for f in N.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct OutLabel {
    pub linear: [i64; 9],
    /// translation residue in quarter units, each entry in 0..3
    pub w4: [i64; 3],
}

impl OutLabel {
    pub fn rep(&self) -> AffineIso {
        AffineIso::new(quarter_vec(&self.w4), mat_from_key(&self.linear))
    }

    pub fn display(&self) -> String {
        format!("B{:?}w{:?}", self.linear, self.w4)
    }
}

fn residue_of(f: &AffineIso) -> ([i64; 9], [i64; 3]) {
    let mut w4 = [0i64; 3];
    for k in 0..3 {
        let fr = frac_part(&f.v[k]);
        w4[k] = to_i64(&(fr * rat(4)));
    }
    (mat_key(&f.a), w4)
}

/// Canonicalize an element of N to its Out(G6) label: lexicographic minimum
/// of the mod-Z^3 residues of f·h over the coset representatives
/// h in {1, x, y, z}.
pub fn out_label(f: &AffineIso) -> OutLabel {
    let mut best: Option<([i64; 9], [i64; 3])> = None;
    for h in [
        AffineIso::identity(3),
        gen_x(),
        gen_y(),
        gen_z(),
    ] {
        let cand = residue_of(&f.compose(&h));
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    }
    let (linear, w4) = best.unwrap();
    OutLabel { linear, w4 }
}

/// The enumerated group N/T of order 384 (residues per signed permutation).
pub fn n_mod_t() -> Vec<(QMat, Vec<[i64; 3]>)> {
    signed_permutations()
        .into_iter()
        .map(|b| {
            let r = valid_residues(&b);
            (b, r)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct OutG6 {
    pub labels: Vec<OutLabel>,
    pub table: FiniteGroupTable,
    index: BTreeMap<OutLabel, usize>,
}

impl OutG6 {
    pub fn order(&self) -> usize {
        self.table.size
    }

    pub fn label_of(&self, f: &AffineIso) -> usize {
        self.index[&out_label(f)]
    }

    pub fn rep(&self, idx: usize) -> AffineIso {
        self.labels[idx].rep()
    }

    /// Image of a class in Aut(G6/T) = GL(2, F2), as column vectors of the
    /// images of x and y.
    pub fn gl2_image(&self, idx: usize) -> [[u8; 2]; 2] {
        gl2_of(&self.rep(idx))
    }
}

pub fn gl2_of(f: &AffineIso) -> [[u8; 2]; 2] {
    let cx = g6_membership(&gen_x().conjugate(f)).unwrap().holonomy.f2_class();
    let cy = g6_membership(&gen_y().conjugate(f)).unwrap().holonomy.f2_class();
    // columns are the images of x and y
    [[cx[0], cy[0]], [cx[1], cy[1]]]
}

pub fn gl2_mul(a: [[u8; 2]; 2], b: [[u8; 2]; 2]) -> [[u8; 2]; 2] {
    let mut c = [[0u8; 2]; 2];
    for r in 0..2 {
        for s in 0..2 {
            c[r][s] = (a[r][0] * b[0][s] + a[r][1] * b[1][s]) % 2;
        }
    }
    c
}

pub fn gl2_order(m: [[u8; 2]; 2]) -> usize {
    let id = [[1, 0], [0, 1]];
    let mut acc = m;
    let mut k = 1;
    while acc != id {
        acc = gl2_mul(acc, m);
        k += 1;
        assert!(k <= 6);
    }
    k
}

/// Shared one-shot Out(G6) table (construction is deterministic and the
/// table is immutable, so a process-wide instance is safe).
pub fn out_g6_cached() -> &'static OutG6 {
    static TABLE: std::sync::OnceLock<OutG6> = std::sync::OnceLock::new();
    TABLE.get_or_init(out_g6)
}

/// Build the 96-element Out(G6) table from the N/T enumeration.
pub fn out_g6() -> OutG6 {
    let mut label_set: Vec<OutLabel> = Vec::new();
    for (b, residues) in n_mod_t() {
        for w4 in residues {
            let f = AffineIso::new(quarter_vec(&w4), b.clone());
            label_set.push(out_label(&f));
        }
    }
    label_set.sort();
    label_set.dedup();
    let mul = |a: &OutLabel, b: &OutLabel| out_label(&a.rep().compose(&b.rep()));
    let (labels, table) = build_table(&label_set, mul, 128);
    let index = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    OutG6 { labels, table, index }
}

// ---------------------------------------------------------------------------
// Meridianal automorphisms
// ---------------------------------------------------------------------------

/// The 2x2 matrix of the induced map on H1(G6) = (Z/4)^2, columns the classes
/// of phi(x), phi(y).
pub fn h1_matrix(phi: &G6Automorphism) -> [[i64; 2]; 2] {
    let cx = h1_class(&aut_apply(phi, &g6_membership(&gen_x()).unwrap()));
    let cy = h1_class(&aut_apply(phi, &g6_membership(&gen_y()).unwrap()));
    [[cx[0], cy[0]], [cx[1], cy[1]]]
}

/// Meridianal test: image in GL(2,F2) has order 3; cross-checked against
/// invertibility of H1(phi) - 1 over Z/4.
pub fn is_meridianal(phi: &G6Automorphism) -> Result<bool, AutError> {
    let crit_gl2 = gl2_order(gl2_of(&phi.rep)) == 3;
    let m = h1_matrix(phi);
    let det = (m[0][0] - 1) * (m[1][1] - 1) - m[0][1] * m[1][0];
    let crit_h1 = det.rem_euclid(2) == 1;
    if crit_gl2 != crit_h1 {
        return Err(AutError::CriteriaDisagree);
    }
    Ok(crit_gl2)
}

/// Grouping of outer classes by simultaneous conjugacy and inversion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeridianalReport {
    /// number of meridianal outer classes (elements of the 96-table)
    pub meridianal_element_count: usize,
    /// classes under conjugacy together with inversion, as label strings of
    /// their minimal elements, with the determinant of the class
    pub classes: Vec<(String, i64)>,
    /// the orientation-preserving classes, tagged by which named rep they
    /// contain ("ja" / "jb")
    pub orientation_preserving: Vec<String>,
    pub ja_cubed_is_identity: bool,
    pub jb_cubed_is_de_inv_f: bool,
    pub jb_class_cubed_is_ab: bool,
    pub ab_nontrivial_in_out: bool,
    pub ja_inverted_by_i: bool,
    pub jb_inverted_by_i: bool,
}

pub fn meridianal_classes(out: &OutG6) -> MeridianalReport {
    let meridianal: Vec<usize> = (0..out.order())
        .filter(|&k| {
            let phi = G6Automorphism { rep: out.rep(k), name: None };
            is_meridianal(&phi).unwrap()
        })
        .collect();

    // union by conjugacy and inversion
    let t = &out.table;
    let mut class_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &m in &meridianal {
        if class_of.contains_key(&m) {
            continue;
        }
        let mut members = std::collections::BTreeSet::new();
        for g in 0..t.size {
            let c = t.conjugate(g, m);
            members.insert(c);
            members.insert(t.inv[c]);
        }
        let id = classes.len();
        for &x in &members {
            class_of.insert(x, id);
        }
        classes.push(members.into_iter().collect());
    }

    let ja = aut_word("ja").unwrap();
    let jb = aut_word("jb").unwrap();
    let ja_idx = out.label_of(&ja);
    let jb_idx = out.label_of(&jb);
    let i_idx = out.label_of(&aut_word("i").unwrap());
    let ab_idx = out.label_of(&aut_word("ab").unwrap());

    let mut class_descr = Vec::new();
    let mut or_preserving = Vec::new();
    for cls in &classes {
        let min = cls[0];
        let det = to_i64(&out.rep(min).a.det());
        class_descr.push((out.labels[min].display(), det));
        if det == 1 {
            let tag = if cls.contains(&ja_idx) {
                "ja"
            } else if cls.contains(&jb_idx) {
                "jb"
            } else {
                "unnamed"
            };
            or_preserving.push(tag.to_string());
        }
    }
    or_preserving.sort();

    MeridianalReport {
        meridianal_element_count: meridianal.len(),
        classes: class_descr,
        orientation_preserving: or_preserving,
        ja_cubed_is_identity: ja.pow(3).is_identity(),
        jb_cubed_is_de_inv_f: jb.pow(3) == aut_word("de^-1f").unwrap(),
        jb_class_cubed_is_ab: t.power(jb_idx, 3) == ab_idx,
        ab_nontrivial_in_out: ab_idx != t.id,
        ja_inverted_by_i: t.conjugate(i_idx, ja_idx) == t.inv[ja_idx],
        jb_inverted_by_i: t.conjugate(i_idx, jb_idx) == t.inv[jb_idx],
    }
}

/// Order of an automorphism in Aut(G6): the linear part has order at most 6
/// among the relevant signed permutations, so powers are checked up to 48;
/// once the linear part is the identity with a nonzero translation, the
/// order is infinite.
pub fn element_order(f: &AffineIso) -> Option<u32> {
    let mut acc = f.clone();
    for k in 1..=48u32 {
        if acc.is_identity() {
            return Some(k);
        }
        if acc.a.is_identity() {
            return None; // nonzero translation repeats forever
        }
        acc = acc.compose(f);
    }
    unreachable!("signed-permutation linear parts have order dividing 48")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_actions_match() {
        for (desc, ok) in verify_generator_actions() {
            assert!(ok, "action table failed: {}", desc);
        }
    }

    #[test]
    fn aut_relations_hold() {
        for (desc, ok) in verify_aut_presentation() {
            assert!(ok, "relation failed: {}", desc);
        }
    }

    #[test]
    fn normalizer_membership_examples() {
        assert!(normalizer_membership(&aut_word("e").unwrap()).is_ok());
        // quarter translation alone is not in N
        let f = AffineIso::translation(vec![ratio(1, 4), rat(0), rat(0)]);
        assert!(normalizer_membership(&f).is_err());
        // G6 itself normalizes
        assert!(normalizer_membership(&gen_x()).is_ok());
        assert!(normalizer_membership(&gen_z()).is_ok());
    }

    #[test]
    fn n_mod_t_has_order_384() {
        let data = n_mod_t();
        let total: usize = data.iter().map(|(_, r)| r.len()).sum();
        assert_eq!(total, 384);
        // each signed permutation admits exactly 8 residues
        assert!(data.iter().all(|(_, r)| r.len() == 8));
    }

    #[test]
    fn out_g6_structure() {
        let out = out_g6_cached();
        assert_eq!(out.order(), 96);

        // center = {1, [ab]}
        let ab = out.label_of(&aut_word("ab").unwrap());
        let mut center = out.table.center();
        center.sort_unstable();
        let mut expect = vec![out.table.id, ab];
        expect.sort_unstable();
        assert_eq!(center, expect);

        // kernel of the GL(2,F2) map is <[a],[b],[c],[e]> of order 16
        let id2 = [[1, 0], [0, 1]];
        let kernel: Vec<usize> = (0..out.order())
            .filter(|&k| out.gl2_image(k) == id2)
            .collect();
        assert_eq!(kernel.len(), 16);
        let gens: Vec<usize> = ["a", "b", "c", "e"]
            .iter()
            .map(|w| out.label_of(&aut_word(w).unwrap()))
            .collect();
        let span = out.table.subgroup_generated(&gens);
        assert_eq!(span.len(), 16);
        assert!(kernel.iter().all(|k| span.contains(k)));

        // surjectivity: images hit all 6 elements of GL(2,F2)
        let mut images: Vec<[[u8; 2]; 2]> = (0..out.order()).map(|k| out.gl2_image(k)).collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 6);

        // [d] = [bc], [f] = [ace]
        assert_eq!(
            out.label_of(&aut_word("d").unwrap()),
            out.label_of(&aut_word("bc").unwrap())
        );
        assert_eq!(
            out.label_of(&aut_word("f").unwrap()),
            out.label_of(&aut_word("ace").unwrap())
        );
    }

    #[test]
    fn quotient_map_is_homomorphism() {
        let out = out_g6_cached();
        let words = ["ja", "ice", "abce", "d", "ij", "f", "ce"];
        for wa in words {
            for wb in words {
                let fa = aut_word(wa).unwrap();
                let fb = aut_word(wb).unwrap();
                let lhs = out.label_of(&fa.compose(&fb));
                let rhs = out.table.mul[out.label_of(&fa)][out.label_of(&fb)];
                assert_eq!(lhs, rhs, "quotient not multiplicative on {} * {}", wa, wb);
            }
        }
    }

    #[test]
    fn kernel_of_quotient_is_g6() {
        let out = out_g6_cached();
        // member of G6 -> identity label
        for w in ["x", "y", "z", "x^2", "xy^-1z"] {
            let f = g6_eval(&G6Word::parse(w).unwrap()).unwrap();
            assert_eq!(out.label_of(&f), out.table.id, "word {}", w);
        }
        // non-member -> nontrivial label
        for w in ["a", "d", "ja", "ice"] {
            assert_ne!(out.label_of(&aut_word(w).unwrap()), out.table.id, "word {}", w);
        }
    }

    #[test]
    fn no_order_12_complement() {
        let out = out_g6_cached();
        let def_image: Vec<usize> = ["d", "e", "f"]
            .iter()
            .map(|w| out.label_of(&aut_word(w).unwrap()))
            .collect();
        let normal = out.table.subgroup_generated(&def_image);
        assert_eq!(normal.len(), 8);
        let candidates = out.table.two_generated_subgroups_of_order(12);
        assert!(!candidates.is_empty());
        for s in &candidates {
            let meet = s.intersection(&normal).count();
            assert!(meet > 1, "found an order-12 complement: extension would split");
        }
    }

    #[test]
    fn meridianal_examples() {
        let mk = |w: &str| G6Automorphism { rep: aut_word(w).unwrap(), name: None };
        assert!(is_meridianal(&mk("ja")).unwrap());
        assert!(is_meridianal(&mk("jb")).unwrap());
        assert!(is_meridianal(&mk("j")).unwrap());
        assert!(!is_meridianal(&mk("")).unwrap());
        assert!(!is_meridianal(&mk("e")).unwrap());
        assert!(!is_meridianal(&mk("i")).unwrap());
    }

    #[test]
    fn meridianal_classification() {
        let out = out_g6_cached();
        let rep = meridianal_classes(&out);
        assert_eq!(rep.meridianal_element_count, 32);
        // orientation-preserving classes are exactly [ja] and [jb]
        assert_eq!(rep.orientation_preserving, vec!["ja", "jb"]);
        assert!(rep.ja_cubed_is_identity);
        assert!(rep.jb_cubed_is_de_inv_f);
        assert!(rep.jb_class_cubed_is_ab);
        assert!(rep.ab_nontrivial_in_out);
        assert!(rep.ja_inverted_by_i);
        assert!(rep.jb_inverted_by_i);
    }

    #[test]
    fn element_orders() {
        assert_eq!(element_order(&aut_word("i").unwrap()), Some(2));
        assert_eq!(element_order(&aut_word("j").unwrap()), Some(6));
        assert_eq!(element_order(&aut_word("ja").unwrap()), Some(3));
        assert_eq!(element_order(&aut_word("d").unwrap()), None);
        assert_eq!(element_order(&aut_word("ice").unwrap()), None);
        // d^2 jb has infinite order: (d^2 jb)^3 = (d e^-1 f)^3
        assert_eq!(element_order(&aut_word("d^2jb").unwrap()), None);
        for n in 0..4i64 {
            let w = format!("d^{}jb", 2 * n);
            let f = aut_word(&w).unwrap();
            assert_eq!(element_order(&f), None, "{}", w);
            let cube = f.pow(3);
            let rhs = aut_word("de^-1f").unwrap().pow(2 * n + 1);
            assert_eq!(cube, rhs, "cube identity for n={}", n);
        }
    }

    #[test]
    fn orientation_dets() {
        for (w, det) in [
            ("a", -1),
            ("b", -1),
            ("c", -1),
            ("d", 1),
            ("e", 1),
            ("f", 1),
            ("i", 1),
            ("j", -1),
            ("ja", 1),
            ("jb", 1),
            ("ce", -1),
            ("ice", -1),
            ("abce", -1),
        ] {
            let f = aut_word(w).unwrap();
            assert_eq!(to_i64(&f.a.det()), det, "det of {}", w);
        }
    }

    #[test]
    fn out_order_consistency_with_element_order() {
        let out = out_g6_cached();
        for k in 0..out.order() {
            let table_ord = out.table.order_of(k) as u32;
            if let Some(ord) = element_order(&out.rep(k)) {
                assert_eq!(
                    ord % table_ord,
                    0,
                    "outer order must divide automorphism order at index {}",
                    k
                );
            }
        }
    }
}
