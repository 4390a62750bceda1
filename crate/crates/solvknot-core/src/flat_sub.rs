//! Infinite subgroups of N = Aut(G6): canonical descriptions, closures of
//! generating sets, exact centralizer/normalizer solvers, weight-orbit
//! normal forms for the two flat knot-group families, and the affine
//! symmetry certificates.
//!
//! A subgroup S of N is stored canonically as
//!   - the lattice L = { u : (u/4, I) in S } of its pure translations, in
//!     quarter units, and
//!   - one canonical coset representative per linear part (two elements of S
//!     with the same linear part differ by a translation in L, so the
//!     representative is the L-reduced translation).
//! Equality of such descriptions is decidable and presentation-independent.

use crate::affine::AffineIso;
use crate::flat_aut::{aut_word, element_order, normalizer_membership, signed_permutations};
use crate::flat_group::{commutator_lattice, HOLS};
use crate::imat::{solve_integer, IMat};
use crate::lattice::IntegerLattice;
use crate::qmat::{qvec_sub, QMat, QVec};
use crate::rat::{is_int, rat, ratio, to_i64, Rat};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubError {
    #[error("element is not in the affine normalizer of G6")]
    NotInN,
    #[error("subgroup closure did not stabilize within the iteration bound")]
    ClosureBound,
    #[error("element is not in the commutator subgroup lattice")]
    NotInCommutator,
    #[error("no conjugator exists for the requested normal form")]
    NoConjugator,
}

type BKey = [i64; 9];

fn bkey(m: &QMat) -> BKey {
    let mut k = [0i64; 9];
    for r in 0..3 {
        for c in 0..3 {
            k[3 * r + c] = to_i64(&m[(r, c)]);
        }
    }
    k
}

fn bmat(k: &BKey) -> QMat {
    QMat::from_i64_rows(&[&k[0..3], &k[3..6], &k[6..9]])
}

fn quarter_units(v: &[Rat]) -> Option<Vec<i64>> {
    let mut out = Vec::with_capacity(v.len());
    for r in v {
        let q = r.clone() * rat(4);
        if !is_int(&q) {
            return None;
        }
        out.push(to_i64(&q));
    }
    Some(out)
}

fn from_quarter(u: &[i64]) -> QVec {
    u.iter().map(|&k| ratio(k, 4)).collect()
}

/// Canonical description of a subgroup of N.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AffSubgroup {
    /// pure-translation lattice, in quarter units
    pub lattice: IntegerLattice,
    /// linear part -> L-reduced translation (quarter units)
    pub reps: BTreeMap<BKey, Vec<i64>>,
}

impl AffSubgroup {
    pub fn finite_part_size(&self) -> usize {
        self.reps.len()
    }

    pub fn contains(&self, f: &AffineIso) -> bool {
        let k = bkey(&f.a);
        match (quarter_units(&f.v), self.reps.get(&k)) {
            (Some(u), Some(rep)) => {
                let diff: Vec<i64> = u.iter().zip(rep).map(|(a, b)| a - b).collect();
                self.lattice.contains(&diff)
            }
            _ => false,
        }
    }

    /// The index-at-most-2 subgroup of orientation-preserving elements.
    pub fn orientation_preserving_part(&self) -> AffSubgroup {
        let reps = self
            .reps
            .iter()
            .filter(|(k, _)| bmat(k).det() == rat(1))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        AffSubgroup { lattice: self.lattice.clone(), reps }
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.reps.keys().all(|k| bmat(k).det() == rat(1))
    }

    /// The stored coset representative with the given linear part.
    pub fn representative(&self, k: &BKey) -> AffineIso {
        AffineIso::new(from_quarter(&self.reps[k]), bmat(k))
    }
}

struct ClosureState {
    lattice: IntegerLattice,
    reps: BTreeMap<BKey, Vec<i64>>,
}

impl ClosureState {
    fn new() -> Self {
        let mut reps = BTreeMap::new();
        reps.insert(bkey(&QMat::identity(3)), vec![0, 0, 0]);
        ClosureState {
            lattice: IntegerLattice::zero(3),
            reps,
        }
    }

    fn insert_translation(&mut self, u: &[i64]) -> bool {
        if self.lattice.contains(u) {
            return false;
        }
        let sum = self
            .lattice
            .sum(&IntegerLattice::from_generators(3, &[u.to_vec()]))
            .expect("same ambient");
        self.lattice = sum;
        // re-reduce all representatives against the grown lattice
        let old = std::mem::take(&mut self.reps);
        for (k, v) in old {
            self.reps.insert(k, self.lattice.reduce(&v));
        }
        true
    }

    fn insert(&mut self, f: &AffineIso) -> bool {
        let k = bkey(&f.a);
        let u = quarter_units(&f.v).expect("N translations lie in (1/4)Z^3");
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

/// Close a finite generating set (elements of N) into a canonical subgroup
/// description. Terminates because linear parts range over at most 48
/// matrices and the translation lattice can only grow within (1/4)Z^3.
pub fn subgroup_closure(gens: &[AffineIso]) -> Result<AffSubgroup, SubError> {
    for g in gens {
        normalizer_membership(g).map_err(|_| SubError::NotInN)?;
    }
    let mut st = ClosureState::new();
    st.insert(&AffineIso::identity(3));
    for g in gens {
        st.insert(g);
        st.insert(&g.inverse());
    }
    for _round in 0..100 {
        let mut changed = false;
        let items: Vec<AffineIso> = st.reps.keys().map(|k| {
            AffineIso::new(from_quarter(&st.reps[k]), bmat(k))
        }).collect();
        for a in &items {
            for b in &items {
                changed |= st.insert(&a.compose(b));
            }
            changed |= st.insert(&a.inverse());
        }
        // translation lattice must be invariant under every linear part
        let keys: Vec<BKey> = st.reps.keys().copied().collect();
        let basis = st.lattice.basis.clone();
        for k in &keys {
            let b = bmat(k);
            for l in &basis {
                let img: Vec<i64> = (0..3)
                    .map(|r| (0..3).map(|c| to_i64(&b[(r, c)]) * l[c]).sum())
                    .collect();
                changed |= st.insert_translation(&img);
            }
        }
        if !changed {
            return Ok(AffSubgroup { lattice: st.lattice, reps: st.reps });
        }
    }
    Err(SubError::ClosureBound)
}

/// Translation residues (quarter units, entries 0..3) valid for a given
/// linear part, i.e. making (w, B) an element of N.
fn residues_for(b: &QMat) -> Vec<Vec<i64>> {
    crate::flat_aut::valid_residues(b)
        .into_iter()
        .map(|w4| w4.to_vec())
        .collect()
}

fn i_minus(m: &QMat) -> IMat {
    let mut rows = Vec::new();
    for r in 0..3 {
        rows.push(
            (0..3)
                .map(|c| (if r == c { 1 } else { 0 }) - to_i64(&m[(r, c)]))
                .collect(),
        );
    }
    IMat::from_rows(&rows)
}

/// All solutions u (quarter units) of (I - M) (u/4) = rhs with u congruent to
/// a valid residue of B modulo 4: returns particular solutions and the
/// translation lattice 4*ker(I - M).
fn solve_family(m_lin: &QMat, rhs: &QVec, residues: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let im = i_minus(m_lin);
    // (I - M) u = 4 rhs, u = r + 4k
    let rhs4: Vec<i64> = rhs
        .iter()
        .map(|x| {
            let q = x.clone() * rat(4);
            assert!(is_int(&q), "right-hand side must lie in (1/4)Z^3");
            to_i64(&q)
        })
        .collect();
    let mut particulars = Vec::new();
    let mut kernel4: Vec<Vec<i64>> = Vec::new();
    for r in residues {
        let shifted: Vec<i64> = (0..3)
            .map(|row| rhs4[row] - im.row(row).iter().zip(r).map(|(a, b)| a * b).sum::<i64>())
            .collect();
        if shifted.iter().any(|c| c.rem_euclid(4) != 0) {
            continue;
        }
        let reduced: Vec<i64> = shifted.iter().map(|c| c / 4).collect();
        if let Some((part, kernel)) = solve_integer(&im, &reduced) {
            let u: Vec<i64> = (0..3).map(|c| r[c] + 4 * part[c]).collect();
            particulars.push(u);
            if kernel4.is_empty() {
                kernel4 = kernel
                    .iter()
                    .map(|k| k.iter().map(|&c| 4 * c).collect())
                    .collect();
            }
        }
    }
    (particulars, kernel4)
}

fn assemble_subgroup(
    families: Vec<(QMat, Vec<Vec<i64>>, Vec<Vec<i64>>)>,
) -> AffSubgroup {
    // translation lattice: identity-linear-part solutions plus all kernels
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for (b, parts, kernel) in &families {
        gens.extend(kernel.iter().cloned());
        if b.is_identity() {
            gens.extend(parts.iter().cloned());
        }
    }
    let lattice = IntegerLattice::from_generators(3, &gens);
    let mut reps = BTreeMap::new();
    for (b, parts, _) in &families {
        if parts.is_empty() {
            continue;
        }
        let key = bkey(b);
        let first = lattice.reduce(&parts[0]);
        for p in parts {
            assert_eq!(
                lattice.reduce(p),
                first,
                "solution family is not a single coset of the translation lattice"
            );
        }
        reps.insert(key, first);
    }
    AffSubgroup { lattice, reps }
}

/// Exhaustive centralizer of phi = (v, A) in N: per commuting linear part B,
/// solve (I - A) w = (I - B) v over the valid residues.
pub fn centralizer(phi: &AffineIso) -> AffSubgroup {
    let a = &phi.a;
    let mut families = Vec::new();
    for b in signed_permutations() {
        if b.mul(a) != a.mul(&b) {
            continue;
        }
        let rhs = qvec_sub(&phi.v, &b.mul_vec(&phi.v));
        let (parts, kernel) = solve_family(a, &rhs, &residues_for(&b));
        families.push((b, parts, kernel));
    }
    assemble_subgroup(families)
}

/// Exhaustive normalizer of the cyclic subgroup generated by phi: elements
/// conjugating phi to phi^k with <phi^k> = <phi> (k = +-1 when phi has
/// infinite order).
pub fn normalizer_cyclic(phi: &AffineIso) -> AffSubgroup {
    let targets: Vec<AffineIso> = match element_order(phi) {
        Some(n) => (1..=n as i64)
            .filter(|k| num_integer::gcd(*k, n as i64) == 1)
            .map(|k| phi.pow(k))
            .collect(),
        None => vec![phi.clone(), phi.inverse()],
    };
    let a = &phi.a;
    let mut families: Vec<(QMat, Vec<Vec<i64>>, Vec<Vec<i64>>)> = Vec::new();
    for b in signed_permutations() {
        let conj_lin = b.mul(a).mul(&b.inverse().unwrap());
        let mut parts_all = Vec::new();
        let mut kernel_all: Vec<Vec<i64>> = Vec::new();
        for t in &targets {
            if conj_lin != t.a {
                continue;
            }
            // (w, B) phi (w, B)^{-1} = t  <=>  (I - t.a) w = t.v - B v_phi
            let rhs = qvec_sub(&t.v, &b.mul_vec(&phi.v));
            let (parts, kernel) = solve_family(&t.a, &rhs, &residues_for(&b));
            parts_all.extend(parts);
            if kernel_all.is_empty() {
                kernel_all = kernel;
            }
        }
        if !parts_all.is_empty() {
            families.push((b, parts_all, kernel_all));
        }
    }
    assemble_subgroup(families)
}

/// One comparison line of the centralizer/normalizer lemmas.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupComparison {
    pub description: String,
    pub solver_matches_claimed: bool,
    pub solver_finite_part: usize,
    pub solver_lattice_rank: usize,
    pub acts_orientably: bool,
}

fn compare(desc: &str, solved: &AffSubgroup, claimed_words: &[&str]) -> SubgroupComparison {
    let gens: Vec<AffineIso> = claimed_words.iter().map(|w| aut_word(w).unwrap()).collect();
    let claimed = subgroup_closure(&gens).expect("claimed generators close");
    SubgroupComparison {
        description: desc.to_string(),
        solver_matches_claimed: *solved == claimed,
        solver_finite_part: solved.finite_part_size(),
        solver_lattice_rank: solved.lattice.rank(),
        acts_orientably: solved.is_orientation_preserving(),
    }
}

/// The centralizer/normalizer comparisons for the two flat families, for
/// n in {0..3}. Deviations between the solver output and a claimed
/// generating set are reported as recorded facts, never patched over.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralizerReport {
    pub lines: Vec<SubgroupComparison>,
    /// <ja, ice> versus the orientation-preserving part of N(<ja>): the
    /// solver's verdict on whether these agree (ice reverses orientation, so
    /// agreement would force det = 1 on ice; recorded honestly).
    pub ja_ice_is_orientation_preserving_part: bool,
    pub ja_ice_subgroup_of_normalizer: bool,
    pub ice_inverts_ja_exactly: bool,
    pub ice_squared_is_def_inv: bool,
    pub abce_is_j_cubed: bool,
    /// Witnesses that the cyclic normalizers for n != 0 are strictly larger
    /// than the centralizers: iab inverts d^{2n}ja and i inverts d^{2n}jb,
    /// exactly, for n in {1,2,3}. Both witnesses preserve orientation.
    pub iab_inverts_d2n_ja: bool,
    pub i_inverts_d2n_jb: bool,
}

pub fn centralizer_report() -> CentralizerReport {
    let ja = aut_word("ja").unwrap();
    let jb = aut_word("jb").unwrap();

    let mut lines = Vec::new();

    let c_ja = centralizer(&ja);
    lines.push(compare("C(ja) = <ja, def^-1, abce>", &c_ja, &["ja", "def^-1", "abce"]));
    let n_ja = normalizer_cyclic(&ja);
    lines.push(compare("N(<ja>) = <ja, ice, abce>", &n_ja, &["ja", "ice", "abce"]));

    let c_jb = centralizer(&jb);
    lines.push(compare("C(jb) = <jb>", &c_jb, &["jb"]));
    let n_jb = normalizer_cyclic(&jb);
    lines.push(compare("N(<jb>) = <jb, i>", &n_jb, &["jb", "i"]));

    for n in 1..=3i64 {
        let da = aut_word(&format!("d^{}ja", 2 * n)).unwrap();
        let c = centralizer(&da);
        let nn = normalizer_cyclic(&da);
        let claimed = [format!("d^{}ja", 2 * n), "def^-1".to_string()];
        let claimed_refs: Vec<&str> = claimed.iter().map(|s| s.as_str()).collect();
        lines.push(compare(
            &format!("C(d^{}ja) = <d^{}ja, def^-1>", 2 * n, 2 * n),
            &c,
            &claimed_refs,
        ));
        let mut line = compare(
            &format!("N(<d^{}ja>) = C(d^{}ja)", 2 * n, 2 * n),
            &nn,
            &claimed_refs,
        );
        line.solver_matches_claimed &= nn == c;
        lines.push(line);

        let db = aut_word(&format!("d^{}jb", 2 * n)).unwrap();
        let cb = centralizer(&db);
        let nb = normalizer_cyclic(&db);
        let claimed_b = [format!("d^{}jb", 2 * n), "de^-1f".to_string()];
        let claimed_b_refs: Vec<&str> = claimed_b.iter().map(|s| s.as_str()).collect();
        lines.push(compare(
            &format!("C(d^{}jb) = <d^{}jb, de^-1f>", 2 * n, 2 * n),
            &cb,
            &claimed_b_refs,
        ));
        let mut line_b = compare(
            &format!("N(<d^{}jb>) = C(d^{}jb)", 2 * n, 2 * n),
            &nb,
            &claimed_b_refs,
        );
        line_b.solver_matches_claimed &= nb == cb;
        lines.push(line_b);
    }

    let ja_ice = subgroup_closure(&[ja.clone(), aut_word("ice").unwrap()]).unwrap();
    let n_ja_or = n_ja.orientation_preserving_part();
    let ice = aut_word("ice").unwrap();

    CentralizerReport {
        lines,
        ja_ice_is_orientation_preserving_part: ja_ice == n_ja_or,
        ja_ice_subgroup_of_normalizer: ja_ice
            .reps
            .iter()
            .all(|(k, u)| n_ja.contains(&AffineIso::new(from_quarter(u), bmat(k)))),
        ice_inverts_ja_exactly: ice.compose(&ja).compose(&ice.inverse()) == ja.inverse(),
        ice_squared_is_def_inv: ice.pow(2) == aut_word("def^-1").unwrap(),
        abce_is_j_cubed: aut_word("abce").unwrap() == aut_word("j^3").unwrap(),
        iab_inverts_d2n_ja: {
            let iab = aut_word("iab").unwrap();
            (1..=3i64).all(|n| {
                let phi = aut_word(&format!("d^{}ja", 2 * n)).unwrap();
                phi.conjugate(&iab) == phi.inverse()
            })
        },
        i_inverts_d2n_jb: {
            let i = aut_word("i").unwrap();
            (1..=3i64).all(|n| {
                let phi = aut_word(&format!("d^{}jb", 2 * n)).unwrap();
                phi.conjugate(&i) == phi.inverse()
            })
        },
    }
}

// ---------------------------------------------------------------------------
// Weight-orbit normal forms (flat families)
// ---------------------------------------------------------------------------

/// The two flat knot-group families: Plus twists by ja, Minus by jb.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Family {
    Plus,
    Minus,
}

impl Family {
    pub fn meridian(self) -> AffineIso {
        match self {
            Family::Plus => aut_word("ja").unwrap(),
            Family::Minus => aut_word("jb").unwrap(),
        }
    }

    /// Rotation axis of the meridian's linear part; the weight functional is
    /// the dot product with this vector.
    pub fn axis(self) -> [i64; 3] {
        match self {
            Family::Plus => [1, 1, -1],
            Family::Minus => [1, -1, 1],
        }
    }

    pub fn lambda(self, g: &[i64; 3]) -> i64 {
        let ax = self.axis();
        g[0] * ax[0] + g[1] * ax[1] + g[2] * ax[2]
    }
}

/// Certificate that x^{2m}y^{2n}z^{2p} t reduces to x^{2 lambda} t by an
/// explicit conjugation inside the commutator subgroup.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitCertificate {
    pub exponents: [i64; 3],
    pub lambda: i64,
    /// T-coordinates of the conjugator w (a pure translation in G6')
    pub conjugator: [i64; 3],
    pub identity_holds: bool,
    /// whether the shorthand conjugator x^{2n}y^{2p} (indices read off the
    /// element) also satisfies the identity
    pub shorthand_conjugator_works: Option<bool>,
}

/// Normal form of g t for g = x^{2m}y^{2n}z^{2p} in G6'.
pub fn weight_orbit_normal_form(g: &[i64; 3], family: Family) -> Result<OrbitCertificate, SubError> {
    if !commutator_lattice().contains(g) {
        return Err(SubError::NotInCommutator);
    }
    let m = family.meridian();
    let lam = family.lambda(g);
    let im = i_minus(&m.a);
    let rhs = [g[0] - lam, g[1], g[2]];
    let (w, _) = solve_integer(&im, &rhs).ok_or(SubError::NoConjugator)?;
    let w_aff = AffineIso::translation(crate::qmat::qvec_from_i64(&w));
    let g_aff = AffineIso::translation(crate::qmat::qvec_from_i64(g));
    let lhs = w_aff
        .inverse()
        .compose(&g_aff)
        .compose(&m)
        .compose(&w_aff);
    let target = AffineIso::translation(crate::qmat::qvec_from_i64(&[lam, 0, 0])).compose(&m);
    let identity_holds = lhs == target;

    // the shorthand w = x^{2n} y^{2p} for g = x^{2m} y^{2n} z^{2p}
    let shorthand = match family {
        Family::Plus => {
            let ws = AffineIso::translation(crate::qmat::qvec_from_i64(&[g[1], g[2], 0]));
            Some(
                ws.inverse().compose(&g_aff).compose(&m).compose(&ws) == target,
            )
        }
        Family::Minus => None,
    };

    Ok(OrbitCertificate {
        exponents: *g,
        lambda: lam,
        conjugator: [w[0], w[1], w[2]],
        identity_holds,
        shorthand_conjugator_works: shorthand,
    })
}

/// Labels n such that some element of G6 conjugates r to x^{2n} * meridian.
/// For r in the G6-coset of the meridian this is the orbit label under inner
/// automorphisms of the knot group restricted to G6.
pub fn g6_orbit_labels(r: &AffineIso, family: Family) -> BTreeSet<i64> {
    let m = family.meridian();
    let tau = &m.v;
    let ax = family.axis();
    let axis_dot = |v: &QVec| -> Rat {
        v.iter()
            .zip(ax.iter())
            .map(|(x, &a)| x.clone() * rat(a))
            .fold(rat(0), |s, t| s + t)
    };
    let mut labels = BTreeSet::new();
    for hol in HOLS {
        let b = hol.matrix();
        if b.mul(&r.a).mul(&b.inverse().unwrap()) != m.a {
            continue;
        }
        // (I - A) w = n e1 + tau - B v_r, with w in offset(hol) + Z^3
        let bv = b.mul_vec(&r.v);
        let n_rat = axis_dot(&bv) - axis_dot(tau);
        if !is_int(&n_rat) {
            continue;
        }
        let n = to_i64(&n_rat);
        let mut rhs = qvec_sub(tau, &bv);
        rhs[0] += rat(n);
        let off = quarter_units(&hol.offset()).unwrap();
        let residues = vec![off.iter().map(|&c| c.rem_euclid(4)).collect::<Vec<i64>>()];
        let (parts, _) = solve_family(&m.a, &rhs, &residues);
        if !parts.is_empty() {
            labels.insert(n);
        }
    }
    labels
}

/// The induced orbit label of psi(g t) for an automorphism psi commuting
/// with the meridian class in Out(G6). None when psi does not commute.
pub fn induced_label(psi: &AffineIso, g: &[i64; 3], family: Family) -> Option<i64> {
    let m = family.meridian();
    let g_aff = AffineIso::translation(crate::qmat::qvec_from_i64(g));
    let r = psi.compose(&g_aff).compose(&m).compose(&psi.inverse());
    // the image must stay in the G6-coset of the meridian
    if crate::flat_group::g6_membership(&r.compose(&m.inverse())).is_err() {
        return None;
    }
    let labels = g6_orbit_labels(&r, family);
    assert!(labels.len() <= 1, "orbit label must be unique under G6-conjugation");
    labels.into_iter().next()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvarianceLine {
    pub generator: String,
    pub commutes_with_meridian_mod_inner: bool,
    pub determinant: i64,
    /// the induced orbit label is sign * lambda(g) + offset for every g;
    /// sign +1 with offset 0 means the weight functional is preserved
    pub sign: Option<i64>,
    pub offset: Option<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub family: Family,
    pub listed_generators: Vec<InvarianceLine>,
    /// over the full finite quotient N/T: every class commuting with the
    /// meridian modulo inner automorphisms transforms the label affinely as
    /// det(psi) * lambda(g) + offset(psi)
    pub full_scan_label_is_det_lambda_plus_offset: bool,
    pub full_scan_commuting_count: usize,
    /// classes with sign +1 and offset 0 genuinely preserve the label; their
    /// count over N/T
    pub full_scan_preserving_count: usize,
}

fn sample_g6prime_box(radius: i64) -> Vec<[i64; 3]> {
    let lat = commutator_lattice();
    let mut v = Vec::new();
    for m in -radius..=radius {
        for n in -radius..=radius {
            for p in -radius..=radius {
                if lat.contains(&[m, n, p]) {
                    v.push([m, n, p]);
                }
            }
        }
    }
    v
}

/// Fit the induced label as n = sign * lambda(g) + offset over the samples.
fn behavior_affine(psi: &AffineIso, family: Family, samples: &[[i64; 3]]) -> Option<(i64, i64)> {
    let offset = induced_label(psi, &[0, 0, 0], family)?;
    let mut sign: Option<i64> = None;
    for g in samples {
        let lam = family.lambda(g);
        let n = induced_label(psi, g, family)?;
        if lam != 0 {
            let diff = n - offset;
            let s = if diff == lam {
                1
            } else if diff == -lam {
                -1
            } else {
                return None;
            };
            match sign {
                None => sign = Some(s),
                Some(prev) if prev != s => return None,
                _ => {}
            }
        } else if n != offset {
            return None;
        }
    }
    // all-zero samples determine no sign; treat as preserving
    Some((sign.unwrap_or(1), offset))
}

/// The weight-functional invariance check for a family: the listed
/// commuting-subgroup generators, plus an exhaustive scan of N/T.
pub fn weight_orbit_invariance_check(family: Family) -> InvarianceReport {
    let m = family.meridian();
    let samples = sample_g6prime_box(2);
    let listed: Vec<&str> = match family {
        Family::Plus => vec!["def^-1", "jb", "ce"],
        Family::Minus => vec!["de^-1f", "ja", "ce"],
    };
    let mut lines = Vec::new();
    for w in listed {
        let psi = aut_word(w).unwrap();
        let comm = psi
            .compose(&m)
            .compose(&psi.inverse())
            .compose(&m.inverse());
        let commutes = crate::flat_group::g6_membership(&comm).is_ok();
        let fit = behavior_affine(&psi, family, &samples);
        lines.push(InvarianceLine {
            generator: w.to_string(),
            commutes_with_meridian_mod_inner: commutes,
            determinant: to_i64(&psi.a.det()),
            sign: fit.map(|(s, _)| s),
            offset: fit.map(|(_, c)| c),
        });
    }

    // full scan over N/T representatives
    let mut all_match = true;
    let mut commuting = 0usize;
    let mut preserving = 0usize;
    for (b, residues) in crate::flat_aut::n_mod_t() {
        for w4 in residues {
            let psi = AffineIso::new(from_quarter(&w4.to_vec()), b.clone());
            let comm = psi
                .compose(&m)
                .compose(&psi.inverse())
                .compose(&m.inverse());
            if crate::flat_group::g6_membership(&comm).is_err() {
                continue;
            }
            commuting += 1;
            let det = to_i64(&psi.a.det());
            match behavior_affine(&psi, family, &samples) {
                Some((s, c)) => {
                    if s != det {
                        all_match = false;
                    }
                    if s == 1 && c == 0 {
                        preserving += 1;
                    }
                }
                None => all_match = false,
            }
        }
    }

    InvarianceReport {
        family,
        listed_generators: lines,
        full_scan_label_is_det_lambda_plus_offset: all_match,
        full_scan_commuting_count: commuting,
        full_scan_preserving_count: preserving,
    }
}

// ---------------------------------------------------------------------------
// Symmetry certificates
// ---------------------------------------------------------------------------

fn lambda_line(s: Rat) -> QVec {
    // s (e1 + e2 - e3) - e2/4
    vec![s.clone(), s.clone() - ratio(1, 4), -s]
}

fn gamma_curve(s: Rat) -> QVec {
    // (2s-1)/8 (e1 - e2) - e3/8
    let c = (rat(2) * s - rat(1)) / rat(8);
    vec![c.clone(), -c, ratio(-1, 8)]
}

pub fn symmetry_certificates() -> Vec<(String, bool)> {
    let mut out: Vec<(String, bool)> = Vec::new();
    let mut check = |name: &str, ok: bool| out.push((name.to_string(), ok));

    let ja = aut_word("ja").unwrap();
    let jb = aut_word("jb").unwrap();
    let omega = aut_word("abcd^-1f").unwrap();
    let p = vec![ratio(1, 4), rat(0), ratio(-1, 4)];

    // omega = (2p, -I)
    let two_p: QVec = p.iter().map(|x| x.clone() * rat(2)).collect();
    check(
        "omega = (2p, -I)",
        omega == AffineIso::new(two_p, QMat::identity(3).neg()),
    );
    check("omega = abce (ice)^-2", {
        let alt = aut_word("abce").unwrap().compose(&aut_word("ice").unwrap().pow(-2));
        omega == alt
    });
    check("omega^2 = 1", omega.pow(2).is_identity());
    check("omega ja = ja omega", omega.compose(&ja) == ja.compose(&omega));
    check("omega(p) = p", omega.apply(&p) == p);
    check("ja(p) = p", ja.apply(&p) == p);
    check("p = lambda(1/4)", p == lambda_line(ratio(1, 4)));

    // fixed line of ja is {lambda(s)}
    check("fixed set of ja is the line lambda", {
        match ja.fixed_set() {
            Some(fs) => {
                fs.dim() == 1
                    && fs.contains(&lambda_line(rat(0)))
                    && fs.contains(&lambda_line(rat(1)))
            }
            None => false,
        }
    });

    let iab = aut_word("iab").unwrap();
    check("(iab)^2 = 1", iab.pow(2).is_identity());
    check(
        "(iab) ja (iab)^-1 = ja^-1",
        iab.compose(&ja).compose(&iab.inverse()) == ja.inverse(),
    );
    check(
        "iab fixes lambda(1/8)",
        iab.apply(&lambda_line(ratio(1, 8))) == lambda_line(ratio(1, 8)),
    );

    let ice = aut_word("ice").unwrap();
    check("(ice)^2 = def^-1", ice.pow(2) == aut_word("def^-1").unwrap());
    check("def^-1 has infinite order", element_order(&aut_word("def^-1").unwrap()).is_none());
    check(
        "ice ja ice^-1 = ja^-1",
        ice.compose(&ja).compose(&ice.inverse()) == ja.inverse(),
    );

    // Minus family: the section curve gamma
    let i_aut = aut_word("i").unwrap();
    // i(gamma(s)) = gamma(1-s): affine identity in s, checked at two points
    check("i gamma(0) = gamma(1)", i_aut.apply(&gamma_curve(rat(0))) == gamma_curve(rat(1)));
    check("i gamma(1) = gamma(0)", i_aut.apply(&gamma_curve(rat(1))) == gamma_curve(rat(0)));
    check(
        "i gamma(1/3) = gamma(2/3)",
        i_aut.apply(&gamma_curve(ratio(1, 3))) == gamma_curve(ratio(2, 3)),
    );
    check("gamma(1) = jb(gamma(0))", gamma_curve(rat(1)) == jb.apply(&gamma_curve(rat(0))));
    check("jb has no fixed points", jb.fixed_set().is_none());
    check(
        "jb linear part fixes its axis",
        jb.a.mul_vec(&crate::qmat::qvec_from_i64(&[1, -1, 1]))
            == crate::qmat::qvec_from_i64(&[1, -1, 1]),
    );

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::qvec_from_i64;

    #[test]
    fn closure_of_g6_itself() {
        let s = subgroup_closure(&[crate::flat_group::gen_x(), crate::flat_group::gen_y()]).unwrap();
        // linear parts I, X, Y, Z; translations Z^3 (quarter units: 4Z^3)
        assert_eq!(s.finite_part_size(), 4);
        assert_eq!(s.lattice, IntegerLattice::from_generators(3, &[
            vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4]]));
        assert!(s.contains(&crate::flat_group::gen_z()));
        assert!(!s.contains(&aut_word("d").unwrap()));
    }

    #[test]
    fn closure_of_cyclic_jb() {
        let s = subgroup_closure(&[aut_word("jb").unwrap()]).unwrap();
        // linear parts: I, -JY, (-JY)^2 (the linear part is a rotation of
        // order 3); translations generated by (jb)^3 = de^-1f, quarter units
        // (2,-2,2)
        assert_eq!(s.finite_part_size(), 3);
        assert_eq!(s.lattice, IntegerLattice::from_generators(3, &[vec![2, -2, 2]]));
    }

    #[test]
    fn centralizer_and_normalizer_lemmas() {
        let rep = centralizer_report();
        // n = 0: all four comparisons hold as stated.
        for line in rep.lines.iter().take(4) {
            assert!(line.solver_matches_claimed, "mismatch: {}", line.description);
        }
        // n != 0: the centralizer descriptions hold, but the cyclic
        // normalizers are strictly larger (an orientation-preserving
        // element inverts the generator: iab for d^{2n}ja, i for d^{2n}jb).
        for pair in rep.lines[4..].chunks(2) {
            let (c_line, n_line) = (&pair[0], &pair[1]);
            assert!(c_line.solver_matches_claimed, "mismatch: {}", c_line.description);
            assert_eq!(c_line.solver_finite_part, 3, "{}", c_line.description);
            assert!(
                !n_line.solver_matches_claimed,
                "normalizer unexpectedly equals centralizer: {}",
                n_line.description
            );
            assert_eq!(n_line.solver_finite_part, 6, "{}", n_line.description);
        }
        // the n != 0 subgroups (and their doubled normalizers) act orientably
        for line in rep.lines.iter().skip(4) {
            assert!(line.acts_orientably, "not orientable: {}", line.description);
        }
        assert!(rep.iab_inverts_d2n_ja);
        assert!(rep.i_inverts_d2n_jb);
        assert!(rep.ja_ice_subgroup_of_normalizer);
        assert!(!rep.ja_ice_is_orientation_preserving_part);
        assert!(rep.ice_inverts_ja_exactly);
        assert!(rep.ice_squared_is_def_inv);
        assert!(rep.abce_is_j_cubed);
    }

    #[test]
    fn orbit_certificates_on_box() {
        for family in [Family::Plus, Family::Minus] {
            for g in sample_g6prime_box(2) {
                let cert = weight_orbit_normal_form(&g, family).unwrap();
                assert!(cert.identity_holds, "certificate failed for {:?} {:?}", g, family);
                assert_eq!(cert.lambda, family.lambda(&g));
            }
        }
    }

    #[test]
    fn orbit_example_values() {
        let cert = weight_orbit_normal_form(&[1, 1, -1], Family::Plus).unwrap();
        assert_eq!(cert.lambda, 3);
        let cert0 = weight_orbit_normal_form(&[0, 0, 0], Family::Plus).unwrap();
        assert_eq!(cert0.lambda, 0);
        assert!(weight_orbit_normal_form(&[1, 0, 0], Family::Plus).is_err());
        // lambda is the dot product with the axis
        assert_eq!(Family::Plus.lambda(&[2, 0, 2]), 0);
        assert_eq!(Family::Minus.lambda(&[1, 1, -1]), -1);
    }

    #[test]
    fn orbit_labels_unique_under_g6() {
        let m = Family::Plus.meridian();
        for g in [[2, 0, 0], [1, 1, -1], [0, 2, 2]] {
            let r = AffineIso::translation(qvec_from_i64(&g)).compose(&m);
            let labels = g6_orbit_labels(&r, Family::Plus);
            assert_eq!(labels.len(), 1);
            assert!(labels.contains(&Family::Plus.lambda(&g)));
        }
    }

    #[test]
    fn invariance_reports() {
        for family in [Family::Plus, Family::Minus] {
            let rep = weight_orbit_invariance_check(family);
            assert!(rep.full_scan_label_is_det_lambda_plus_offset, "{:?}", family);
            assert_eq!(rep.full_scan_commuting_count, 48, "{:?}", family);
            for line in &rep.listed_generators {
                assert!(line.commutes_with_meridian_mod_inner, "{}", line.generator);
                assert_eq!(
                    line.sign,
                    Some(line.determinant),
                    "induced sign of {} should equal its determinant",
                    line.generator
                );
            }
        }
        // For the plus family every commuting class preserves the label up
        // to sign with no shift; for the minus family ce shifts the base
        // label by -1 in addition to flipping its sign.
        let plus = weight_orbit_invariance_check(Family::Plus);
        for line in &plus.listed_generators {
            assert_eq!(line.offset, Some(0), "{}", line.generator);
        }
        let minus = weight_orbit_invariance_check(Family::Minus);
        for line in &minus.listed_generators {
            let expected = if line.generator == "ce" { Some(-1) } else { Some(0) };
            assert_eq!(line.offset, expected, "{}", line.generator);
        }
    }

    #[test]
    fn symmetry_certificates_all_pass() {
        for (name, ok) in symmetry_certificates() {
            assert!(ok, "certificate failed: {}", name);
        }
    }
}
