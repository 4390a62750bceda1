//! Knot-group-level invariants spanning both families: the commutator
//! quotient with its meridian action, the direct-double and
//! Lambda-cyclicity tests, and the doubly-slice verdict table.
//!
//! The knot groups are mapping tori: G(+) and G(-) are G6 twisted by the
//! outer classes [ja] and [jb], and pi(e, eta) is Gamma(e, eta) twisted by
//! [r]. In each case the meridianal condition makes the commutator
//! subgroup of the knot group equal to the fibre group, so the commutator
//! quotient is the fibre abelianization carried together with the induced
//! meridian action t. The Fox example (a^2 conjugated to a by t) is
//! carried along as a verdict-table row with an infinite commutator
//! quotient.

use crate::flat_aut::{self, aut_word, normalizer_membership, AutError};
use crate::flat_group::h1_g6;
use crate::imat::{smith_normal_form, IMat};
use crate::lattice::IntegerLattice;
use crate::nil_aut::{h1_matrix as gamma_h1_matrix, named_auts};
use crate::nil_group::{gamma_build, h1_gamma, NilError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("flat automorphism layer: {0}")]
    Flat(#[from] AutError),
    #[error("nil automorphism layer: {0}")]
    Nil(#[from] NilError),
    #[error("the commutator quotient is infinite; no finite-group test applies")]
    InfiniteQuotient,
    #[error("finite-group enumeration would exceed {0} elements")]
    EnumerationBound(u64),
    #[error("meridian action is not invertible modulo the invariant factors")]
    ActionNotInvertible,
}

/// The knot-group families under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KnotFamily {
    GPlus,
    GMinus,
    PiEEta { e: i64, eta: i64 },
    Fox,
}

impl KnotFamily {
    /// The name of the meridianal automorphism of the fibre group, when
    /// the family is a mapping torus of one.
    pub fn meridian_name(&self) -> Option<&'static str> {
        match self {
            KnotFamily::GPlus => Some("ja"),
            KnotFamily::GMinus => Some("jb"),
            KnotFamily::PiEEta { .. } => Some("r"),
            KnotFamily::Fox => None,
        }
    }

    pub fn display(&self) -> String {
        match self {
            KnotFamily::GPlus => "G(+)".into(),
            KnotFamily::GMinus => "G(-)".into(),
            KnotFamily::PiEEta { e, eta } => format!("pi({},{})", e, eta),
            KnotFamily::Fox => "Fox Z*_2".into(),
        }
    }
}

/// A finite abelian group in invariant-factor form together with an
/// endomorphism (the induced meridian action t). Row i of the action
/// matrix is reduced modulo the i-th invariant factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinAbGroupWithAction {
    pub invariant_factors: Vec<i64>,
    pub action: Vec<Vec<i64>>,
}

impl FinAbGroupWithAction {
    pub fn new(factors: Vec<i64>, action: Vec<Vec<i64>>) -> Result<Self, InvariantError> {
        let reduced: Vec<Vec<i64>> = action
            .iter()
            .zip(&factors)
            .map(|(row, &d)| row.iter().map(|&x| x.rem_euclid(d)).collect())
            .collect();
        let a = FinAbGroupWithAction {
            invariant_factors: factors,
            action: reduced,
        };
        if !a.action_invertible() {
            return Err(InvariantError::ActionNotInvertible);
        }
        Ok(a)
    }

    pub fn order(&self) -> i64 {
        self.invariant_factors.iter().product()
    }

    /// The action is invertible exactly when its columns together with the
    /// factor relations span the full integer lattice.
    pub fn action_invertible(&self) -> bool {
        let n = self.invariant_factors.len();
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for j in 0..n {
            gens.push((0..n).map(|i| self.action[i][j]).collect());
        }
        for (i, &d) in self.invariant_factors.iter().enumerate() {
            let mut v = vec![0; n];
            v[i] = d;
            gens.push(v);
        }
        let lat = IntegerLattice::from_generators(n, &gens);
        (0..n).all(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            lat.contains(&e)
        })
    }

    fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.invariant_factors.len())
            .map(|i| {
                let s: i64 = self.action[i]
                    .iter()
                    .zip(v)
                    .map(|(&a, &x)| a * x)
                    .sum();
                s.rem_euclid(self.invariant_factors[i])
            })
            .collect()
    }
}

/// The commutator quotient of a knot group: the finite form with meridian
/// action, or the infinite marker for the Fox example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CommutatorQuotient {
    Finite(FinAbGroupWithAction),
    /// Z[1/2] with t acting by multiplication by 2 (from t a t^-1 = a^2)
    InfiniteZHalf,
}

pub fn commutator_quotient(family: KnotFamily) -> Result<CommutatorQuotient, InvariantError> {
    match family {
        KnotFamily::GPlus | KnotFamily::GMinus => {
            let word = if family == KnotFamily::GPlus { "ja" } else { "jb" };
            let phi = normalizer_membership(&aut_word(word)?)?;
            let m = flat_aut::h1_matrix(&phi);
            let factors = h1_g6().invariant_factors;
            FinAbGroupWithAction::new(
                factors,
                vec![vec![m[0][0], m[0][1]], vec![m[1][0], m[1][1]]],
            )
            .map(CommutatorQuotient::Finite)
        }
        KnotFamily::PiEEta { e, eta } => {
            let g = gamma_build(e, eta)?;
            let factors = h1_gamma(&g);
            let na = named_auts(&g)?;
            let m = gamma_h1_matrix(&g, &na.r)?;
            // r is -1 on the abelianization, so its matrix is -I in the
            // original (u, z) coordinates and stays -I in the Smith basis
            assert_eq!(m.row(0), &[-1, 0]);
            assert_eq!(m.row(1), &[0, -1]);
            FinAbGroupWithAction::new(factors, vec![vec![-1, 0], vec![0, -1]])
                .map(CommutatorQuotient::Finite)
        }
        KnotFamily::Fox => Ok(CommutatorQuotient::InfiniteZHalf),
    }
}

/// Multiset of prime powers appearing in the invariant factors.
fn prime_power_multiset(factors: &[i64]) -> Vec<i64> {
    let mut out = Vec::new();
    for &f in factors {
        let mut f = f.abs();
        let mut p = 2;
        while p * p <= f {
            if f % p == 0 {
                let mut pk = 1;
                while f % p == 0 {
                    pk *= p;
                    f /= p;
                }
                out.push(pk);
            }
            p += 1;
        }
        if f > 1 {
            out.push(f);
        }
    }
    out.sort_unstable();
    out
}

/// Group-level direct-double test: the group is B + B for some B exactly
/// when every prime power occurs an even number of times in the refined
/// invariant-factor multiset.
pub fn is_direct_double(a: &CommutatorQuotient) -> Result<bool, InvariantError> {
    let fin = match a {
        CommutatorQuotient::Finite(f) => f,
        CommutatorQuotient::InfiniteZHalf => return Err(InvariantError::InfiniteQuotient),
    };
    let ms = prime_power_multiset(&fin.invariant_factors);
    let mut i = 0;
    while i < ms.len() {
        if i + 1 >= ms.len() || ms[i] != ms[i + 1] {
            return Ok(false);
        }
        i += 2;
    }
    Ok(true)
}

/// Direct-double verdict computed from an arbitrary integer presentation
/// matrix (rows are relations); used by the presentation-invariance
/// property test.
pub fn direct_double_of_presentation(rel: &IMat) -> bool {
    let factors: Vec<i64> = smith_normal_form(rel)
        .elementary_divisors()
        .into_iter()
        .filter(|&d| d != 1 && d != 0)
        .map(|d| d.abs())
        .collect();
    let ms = prime_power_multiset(&factors);
    ms.chunks(2).all(|c| c.len() == 2 && c[0] == c[1])
}

const ENUM_BOUND: u64 = 1_000_000;

/// Exhaustive Lambda-cyclicity: true when some v has its t-orbit
/// generating the whole group.
pub fn lambda_cyclic(a: &CommutatorQuotient) -> Result<bool, InvariantError> {
    let fin = match a {
        CommutatorQuotient::Finite(f) => f,
        CommutatorQuotient::InfiniteZHalf => return Err(InvariantError::InfiniteQuotient),
    };
    let order = fin.order() as u64;
    if order > ENUM_BOUND {
        return Err(InvariantError::EnumerationBound(ENUM_BOUND));
    }
    let n = fin.invariant_factors.len();
    // enumerate all elements as mixed-radix tuples
    let mut elements: Vec<Vec<i64>> = vec![vec![]];
    for &d in &fin.invariant_factors {
        let mut next = Vec::new();
        for v in &elements {
            for x in 0..d {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        elements = next;
    }
    let add = |x: &[i64], y: &[i64]| -> Vec<i64> {
        (0..n)
            .map(|i| (x[i] + y[i]).rem_euclid(fin.invariant_factors[i]))
            .collect()
    };
    for v in &elements {
        // subgroup generated by the t-orbit of v, grown by closure
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        seen.insert(vec![0; n]);
        let mut orbit = Vec::new();
        let mut w = v.clone();
        for _ in 0..order {
            if orbit.contains(&w) {
                break;
            }
            orbit.push(w.clone());
            w = fin.apply(&w);
        }
        let mut frontier: Vec<Vec<i64>> = vec![vec![0; n]];
        while let Some(x) = frontier.pop() {
            for gen in &orbit {
                let y = add(&x, gen);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        if seen.len() as u64 == order {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All (e, eta) with |q| = 1 for even |e| <= bound: exactly (0, -1).
pub fn q_solver(bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for e in -bound..=bound {
        if e.rem_euclid(2) == 0 {
            for eta in [1i64, -1] {
                if (3 * e - eta - 2).abs() == 1 {
                    out.push((e, eta));
                }
            }
        }
    }
    out
}

/// Reason codes for the doubly-slice verdicts, separating verified
/// obstructions from cited external arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictReason {
    /// |q| = 1: the commutator quotient is a direct double and the model
    /// knot for this group is known to be doubly slice (external citation)
    KnownDoublySliceModel,
    /// the commutator quotient fails the direct-double test (verified)
    NotDirectDouble,
    /// torsion is Lambda-cyclic, so the mod-2 cohomology ring of the
    /// 2-fold branched cover argument applies (ring step external)
    LambdaCyclicRingObstruction,
    /// nontrivial Alexander polynomial t - 2 (verified from the relator)
    AlexanderPolynomial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoublySliceVerdict {
    pub family: KnotFamily,
    pub doubly_slice: bool,
    pub reason: VerdictReason,
    /// true when the decisive step is cited rather than verified here
    pub external: bool,
}

pub fn doubly_slice_verdict(family: KnotFamily) -> Result<DoublySliceVerdict, InvariantError> {
    match family {
        KnotFamily::PiEEta { e, eta } => {
            let q = 3 * e - eta - 2;
            let cq = commutator_quotient(family)?;
            let dd = is_direct_double(&cq)?;
            if q.abs() == 1 {
                assert!(dd, "|q| = 1 must give a direct double (3, 3)");
                Ok(DoublySliceVerdict {
                    family,
                    doubly_slice: true,
                    reason: VerdictReason::KnownDoublySliceModel,
                    external: true,
                })
            } else {
                assert!(!dd, "|q| != 1 must fail the direct-double test");
                Ok(DoublySliceVerdict {
                    family,
                    doubly_slice: false,
                    reason: VerdictReason::NotDirectDouble,
                    external: false,
                })
            }
        }
        KnotFamily::GPlus | KnotFamily::GMinus => {
            let cq = commutator_quotient(family)?;
            // the group-level test passes; the obstruction needs the finer
            // Lambda-module structure
            assert!(is_direct_double(&cq)?);
            assert!(lambda_cyclic(&cq)?);
            Ok(DoublySliceVerdict {
                family,
                doubly_slice: false,
                reason: VerdictReason::LambdaCyclicRingObstruction,
                external: true,
            })
        }
        KnotFamily::Fox => Ok(DoublySliceVerdict {
            family,
            doubly_slice: false,
            reason: VerdictReason::AlexanderPolynomial,
            external: false,
        }),
    }
}
