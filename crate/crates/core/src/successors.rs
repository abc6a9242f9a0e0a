//! Immediate successors by doubling, unimodal selection, and
//! period-doubling cascades with their certified polynomial products.
//!
//! A cycle θ of length n has 2^n doubling candidates `θ* ∘ ρ_S`, one per
//! swap set S ⊆ {1..n}; the 2^{n−1} with odd |S| are cycles of length 2n
//! (the immediate successors), the rest are not cycles. The cascade walks
//! the unique successor with modality +1 at each level and checks the
//! characteristic-polynomial product identity exactly as it goes.

use serde::Serialize;
use thiserror::Error;

use crate::markov::build_digraph;
use crate::perm::{Cycle, PermError, Permutation};
use crate::poly::{charpoly, cyclotomic_like, IntPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuccessorError {
    #[error("length {n} exceeds the cap {cap}: enumeration would visit 2^{n} candidates")]
    CapExceeded { n: usize, cap: usize },
    #[error("period {period} exceeds the cascade period cap {cap}")]
    PeriodCapExceeded { period: usize, cap: usize },
    #[error("no cyclic successor of {base} has modality +1")]
    NoUnimodalSuccessor { base: String },
    #[error("{candidates:?}: several cyclic successors of {base} have modality +1")]
    MultipleUnimodalSuccessors { base: String, candidates: Vec<String> },
    #[error("swaps must have odd cardinality, got {count}")]
    EvenSwapCount { count: usize },
    #[error(
        "product formula failed at level {level}: charpoly is {got} but the product gives {expected}"
    )]
    FormulaViolation { level: usize, got: String, expected: String },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Enumeration caps. Successor enumeration materializes 2^n permutations;
/// the unimodal filter only scans, so it tolerates a larger base; cascades
/// stop at a total period.
#[derive(Debug, Clone, Copy)]
pub struct SuccessorCaps {
    /// Max base length for `enumerate_successors` (2^n candidates stored).
    pub enumerate_max_base: usize,
    /// Max base length for `unimodal_double` (2^{n−1} candidates scanned).
    pub double_max_base: usize,
    /// Max total period `k·2^levels` reachable by `cascade`.
    pub cascade_max_period: usize,
}

impl Default for SuccessorCaps {
    fn default() -> Self {
        SuccessorCaps {
            enumerate_max_base: 20,
            double_max_base: 24,
            cascade_max_period: 64,
        }
    }
}

/// All 2^n doubling candidates of a cycle, split by parity of the swap
/// set: odd sets give cycles, even sets give non-cyclic permutations,
/// 2^{n−1} of each.
#[derive(Debug, Clone)]
pub struct SuccessorSet {
    pub base: Cycle,
    pub cyclic: Vec<(Vec<usize>, Cycle)>,
    pub non_cyclic: Vec<(Vec<usize>, Permutation)>,
}

fn swaps_of_mask(mask: u64, n: usize) -> Vec<usize> {
    (1..=n).filter(|s| mask & (1 << (s - 1)) != 0).collect()
}

/// Enumerates every doubling candidate, in binary-counter order of the
/// swap set.
pub fn enumerate_successors(
    theta: &Cycle,
    caps: &SuccessorCaps,
) -> Result<SuccessorSet, SuccessorError> {
    let n = theta.len();
    if n > caps.enumerate_max_base {
        return Err(SuccessorError::CapExceeded {
            n,
            cap: caps.enumerate_max_base,
        });
    }
    let mut cyclic = Vec::with_capacity(1 << (n - 1));
    let mut non_cyclic = Vec::with_capacity(1 << (n - 1));
    for mask in 0..(1u64 << n) {
        let swaps = swaps_of_mask(mask, n);
        let eta = theta.successor_candidate(&swaps)?;
        if swaps.len() % 2 == 1 {
            let c = Cycle::from_permutation(eta).expect("odd swap sets give cycles");
            cyclic.push((swaps, c));
        } else {
            non_cyclic.push((swaps, eta));
        }
    }
    Ok(SuccessorSet {
        base: theta.clone(),
        cyclic,
        non_cyclic,
    })
}

/// True when the image sequence rises once and then falls: the +1-modal
/// pattern. Bails at the first violation, which keeps the doubling filter
/// cheap.
fn images_are_unimodal(images: &[usize]) -> bool {
    let n = images.len();
    if n < 3 || images[0] > images[1] {
        return false;
    }
    let mut i = 1;
    while i < n && images[i - 1] < images[i] {
        i += 1;
    }
    if i == n {
        return false; // monotone increasing: no extremum
    }
    while i < n && images[i - 1] > images[i] {
        i += 1;
    }
    i == n
}

/// The unique cyclic successor with modality +1. `(1)` steps to `(12)` by
/// convention since modality is undefined below length 3. A missing or
/// ambiguous unimodal successor is reported, not guessed around.
pub fn unimodal_double(theta: &Cycle, caps: &SuccessorCaps) -> Result<Cycle, SuccessorError> {
    let n = theta.len();
    if n == 1 {
        return Ok(Cycle::from_images(vec![2, 1]).expect("(12)"));
    }
    if n > caps.double_max_base {
        return Err(SuccessorError::CapExceeded {
            n,
            cap: caps.double_max_base,
        });
    }
    let mut matches: Vec<(u64, Cycle)> = Vec::new();
    // Masks with odd popcount, in binary-counter order.
    for mask in 0..(1u64 << n) {
        if mask.count_ones() % 2 == 0 {
            continue;
        }
        let swaps = swaps_of_mask(mask, n);
        let eta = theta.successor_candidate(&swaps)?;
        if images_are_unimodal(eta.images()) {
            matches.push((mask, Cycle::from_permutation(eta).expect("odd swaps")));
        }
    }
    match matches.len() {
        0 => Err(SuccessorError::NoUnimodalSuccessor {
            base: theta.to_string(),
        }),
        1 => Ok(matches.pop().expect("one element").1),
        _ => Err(SuccessorError::MultipleUnimodalSuccessors {
            base: theta.to_string(),
            candidates: matches.iter().map(|(_, c)| c.to_string()).collect(),
        }),
    }
}

/// A period-doubling cascade: the seed θ0, the levels θ1..θℓ, and the
/// characteristic polynomial of every level including the seed.
#[derive(Debug, Clone)]
pub struct Cascade {
    pub seed: Cycle,
    pub levels: Vec<Cycle>,
    pub polynomials: Vec<IntPolynomial>,
}

impl Cascade {
    /// Cycle at level `i`: the seed for 0, otherwise `levels[i-1]`.
    pub fn level(&self, i: usize) -> &Cycle {
        if i == 0 {
            &self.seed
        } else {
            &self.levels[i - 1]
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

/// Runs `levels` unimodal doublings from the seed and certifies
/// `P_{θ_i} = P_{θ_{i-1}}·(λ^{k·2^{i-1}} − 1)` exactly at every level.
/// A certification failure means a bug and is surfaced loudly.
pub fn cascade(
    seed: &Cycle,
    levels: usize,
    caps: &SuccessorCaps,
) -> Result<Cascade, SuccessorError> {
    let final_period = seed
        .len()
        .checked_shl(levels as u32)
        .unwrap_or(usize::MAX);
    if final_period > caps.cascade_max_period {
        return Err(SuccessorError::PeriodCapExceeded {
            period: final_period,
            cap: caps.cascade_max_period,
        });
    }
    let mut polynomials =
        vec![charpoly(build_digraph(seed).adjacency()).expect("adjacency is square")];
    let mut cascade_levels: Vec<Cycle> = Vec::with_capacity(levels);
    let mut current = seed.clone();
    for level in 1..=levels {
        let base_len = current.len();
        let next = unimodal_double(&current, caps)?;
        let p = charpoly(build_digraph(&next).adjacency()).expect("adjacency is square");
        let expected = polynomials.last().expect("nonempty").mul(&cyclotomic_like(base_len));
        if p != expected {
            return Err(SuccessorError::FormulaViolation {
                level,
                got: p.to_string(),
                expected: expected.to_string(),
            });
        }
        polynomials.push(p);
        cascade_levels.push(next.clone());
        current = next;
    }
    Ok(Cascade {
        seed: seed.clone(),
        levels: cascade_levels,
        polynomials,
    })
}

/// Checks `P_η = P_θ·(λ^n − 1)` for the successor picked by `eta_swaps`.
pub fn verify_factorization(
    theta: &Cycle,
    eta_swaps: &[usize],
) -> Result<bool, SuccessorError> {
    if eta_swaps.len() % 2 == 0 {
        return Err(SuccessorError::EvenSwapCount {
            count: eta_swaps.len(),
        });
    }
    let eta = Cycle::from_permutation(theta.successor_candidate(eta_swaps)?)
        .expect("odd swap sets give cycles");
    let p_eta = charpoly(build_digraph(&eta).adjacency()).expect("square");
    let p_theta = charpoly(build_digraph(theta).adjacency()).expect("square");
    Ok(p_eta == p_theta.mul(&cyclotomic_like(theta.len())))
}

/// JSON shape of a cascade report: the seed images, then one entry per
/// level with its images, polynomial, and verification flag.
#[derive(Debug, Clone, Serialize)]
pub struct CascadeJson {
    pub seed: Vec<usize>,
    pub levels: Vec<CascadeLevelJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CascadeLevelJson {
    pub period: usize,
    pub cycle: Vec<usize>,
    pub polynomial: IntPolynomial,
    pub verified: bool,
}

pub fn cascade_to_json(c: &Cascade) -> CascadeJson {
    let mut levels = Vec::with_capacity(c.depth() + 1);
    for i in 0..=c.depth() {
        let cyc = c.level(i);
        levels.push(CascadeLevelJson {
            period: cyc.len(),
            cycle: cyc.images().to_vec(),
            // Every returned cascade was certified level by level.
            polynomial: c.polynomials[i].clone(),
            verified: true,
        });
    }
    CascadeJson {
        seed: c.seed.images().to_vec(),
        levels,
    }
}
