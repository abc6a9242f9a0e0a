//! Deciding the forcing relation: β forces α exactly when the
//! connect-the-dots map `L_β` has a periodic orbit of type α, and such
//! orbits are found by composing the affine pieces of `L_β` along closed
//! walks of `G(β)` and solving for exact rational fixed points.
//!
//! All arithmetic is over arbitrary-precision rationals. Slopes and
//! intercepts of the pieces are integers, so every periodic point found
//! here is rational and equality tests are exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::markov::{build_digraph, connect_the_dots, SignedDigraph};
use crate::perm::Cycle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("loop length {q} exceeds the cap {cap}")]
    LengthCapExceeded { q: usize, cap: usize },
    #[error("more than {cap} closed walks; raise the loop count cap to continue")]
    CountCapExceeded { cap: usize },
    #[error("vertex sequence is not a loop of the digraph")]
    NotALoop,
}

/// Enumeration caps: the walk length and the number of closed walks
/// visited. Both are surfaced as CLI flags.
#[derive(Debug, Clone, Copy)]
pub struct ForcingCaps {
    pub max_loop_len: usize,
    pub max_loops: usize,
}

impl Default for ForcingCaps {
    fn default() -> Self {
        ForcingCaps {
            max_loop_len: 16,
            max_loops: 1_000_000,
        }
    }
}

/// A closed walk in a signed digraph, stored in its lexicographically
/// least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Loop {
    vertices: Vec<usize>,
}

impl Loop {
    /// Validates every consecutive pair (including the wrap-around) as an
    /// edge of `g` and canonicalizes the rotation.
    pub fn new(vertices: Vec<usize>, g: &SignedDigraph) -> Result<Self, ForcingError> {
        if vertices.is_empty() {
            return Err(ForcingError::NotALoop);
        }
        let n = g.n_vertices();
        let q = vertices.len();
        for t in 0..q {
            let (a, b) = (vertices[t], vertices[(t + 1) % q]);
            if a < 1 || a > n || b < 1 || b > n || !g.has_edge(a, b) {
                return Err(ForcingError::NotALoop);
            }
        }
        Ok(Loop {
            vertices: least_rotation(&vertices),
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Loops are never empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }
}

fn least_rotation(seq: &[usize]) -> Vec<usize> {
    let q = seq.len();
    let mut best = 0;
    for start in 1..q {
        for k in 0..q {
            let a = seq[(start + k) % q];
            let b = seq[(best + k) % q];
            if a != b {
                if a < b {
                    best = start;
                }
                break;
            }
        }
    }
    (0..q).map(|k| seq[(best + k) % q]).collect()
}

/// All closed walks of length `q`, one representative per rotation class,
/// in lexicographic order.
pub fn loops_of_length(
    g: &SignedDigraph,
    q: usize,
    caps: &ForcingCaps,
) -> Result<Vec<Loop>, ForcingError> {
    if q > caps.max_loop_len {
        return Err(ForcingError::LengthCapExceeded {
            q,
            cap: caps.max_loop_len,
        });
    }
    assert!(q >= 1, "loops have positive length");
    let n = g.n_vertices();
    let mut out = Vec::new();
    let mut walk = Vec::with_capacity(q);
    let mut visited = 0usize;
    // A canonical walk starts at its minimal vertex, so a DFS from each
    // start over vertices >= start sees every class; the filter keeps the
    // least rotation only.
    for start in 1..=n {
        walk.push(start);
        extend_walks(g, start, q, &mut walk, &mut out, &mut visited, caps)?;
        walk.pop();
    }
    Ok(out)
}

fn extend_walks(
    g: &SignedDigraph,
    start: usize,
    q: usize,
    walk: &mut Vec<usize>,
    out: &mut Vec<Loop>,
    visited: &mut usize,
    caps: &ForcingCaps,
) -> Result<(), ForcingError> {
    if walk.len() == q {
        if g.has_edge(walk[q - 1], start) {
            *visited += 1;
            if *visited > caps.max_loops {
                return Err(ForcingError::CountCapExceeded { cap: caps.max_loops });
            }
            if least_rotation(walk) == *walk {
                out.push(Loop {
                    vertices: walk.clone(),
                });
            }
        }
        return Ok(());
    }
    let last = walk[walk.len() - 1];
    for next in g.successors_of(last) {
        if next < start {
            continue;
        }
        walk.push(next);
        extend_walks(g, start, q, walk, out, visited, caps)?;
        walk.pop();
    }
    Ok(())
}

/// An exact periodic orbit of `L_β`: the points in orbit order, the least
/// period, and the cycle induced by sorting the points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub points: Vec<BigRational>,
    pub least_period: usize,
    pub orbit_type: Cycle,
}

fn int_ratio(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Solves for the periodic orbit whose itinerary is the given loop.
///
/// The composition of the pieces along the loop is affine, `x ↦ s·x + c`.
/// For `s ≠ 1` the unique fixed point is `c/(1−s)` and the orbit is kept
/// only if every iterate stays in its prescribed interval. For `s = 1`
/// with `c = 0` the composition is the identity and the midpoint of the
/// admissible subinterval serves as the witness; `s = 1` with `c ≠ 0` has
/// no periodic point at all.
pub fn orbit_from_loop(beta: &Cycle, lp: &Loop) -> Result<Option<OrbitReport>, ForcingError> {
    let g = build_digraph(beta);
    let lp = Loop::new(lp.vertices().to_vec(), &g)?;
    let l = connect_the_dots(beta);
    let q = lp.len();
    let route = lp.vertices();

    let mut slope = BigInt::one();
    let mut shift = BigInt::zero();
    for &j in route {
        let piece = l.piece(j);
        shift = BigInt::from(piece.slope) * shift + BigInt::from(piece.intercept);
        slope *= BigInt::from(piece.slope);
    }

    let start: BigRational;
    if slope.is_one() {
        if !shift.is_zero() {
            return Ok(None);
        }
        // Identity composition: pull the interval constraints back through
        // the loop to find the admissible subinterval.
        let mut lo = int_ratio(route[0] as i64);
        let mut hi = int_ratio(route[0] as i64 + 1);
        for t in (0..q).rev() {
            let j = route[t];
            let piece = l.piece(j);
            let (ql, qh) = {
                let s = int_ratio(piece.slope);
                let c = int_ratio(piece.intercept);
                let a = (&lo - &c) / &s;
                let b = (&hi - &c) / &s;
                if piece.slope > 0 {
                    (a, b)
                } else {
                    (b, a)
                }
            };
            lo = ql.max(int_ratio(j as i64));
            hi = qh.min(int_ratio(j as i64 + 1));
        }
        assert!(lo <= hi, "loop itineraries always admit a point");
        start = (lo + hi) / int_ratio(2);
    } else {
        let denom = BigInt::one() - &slope;
        start = BigRational::new(shift, denom);
    }

    // Walk the loop from the fixed point, checking the prescribed
    // intervals along the way.
    let mut points = Vec::with_capacity(q);
    let mut x = start.clone();
    for &j in route {
        if x < int_ratio(j as i64) || x > int_ratio(j as i64 + 1) {
            return Ok(None);
        }
        points.push(x.clone());
        x = l.piece(j).apply(&x);
    }
    debug_assert_eq!(x, start, "fixed point of the composition");

    let least_period = (1..=q)
        .find(|&p| q % p == 0 && (p == q || points[p] == points[0]))
        .expect("q itself always qualifies");
    points.truncate(least_period);

    let orbit_type = type_of_orbit(&points);
    Ok(Some(OrbitReport {
        points,
        least_period,
        orbit_type,
    }))
}

/// The cycle induced by a periodic orbit: sort the points and record the
/// index each one maps to.
fn type_of_orbit(points: &[BigRational]) -> Cycle {
    let p = points.len();
    let mut by_value: Vec<usize> = (0..p).collect();
    by_value.sort_by(|&a, &b| points[a].cmp(&points[b]));
    let mut rank = vec![0usize; p];
    for (r, &t) in by_value.iter().enumerate() {
        rank[t] = r;
    }
    let mut images = vec![0usize; p];
    for (i, &t) in by_value.iter().enumerate() {
        images[i] = rank[(t + 1) % p] + 1;
    }
    Cycle::from_images(images).expect("a periodic orbit induces a single cycle")
}

/// A forcing witness: the loop and the orbit it produces.
#[derive(Debug, Clone)]
pub struct Witness {
    pub found_loop: Loop,
    pub orbit: OrbitReport,
}

/// Decides β ⇒ α and keeps the first witness in loop order. Reflexive
/// forcing carries no loop witness.
pub fn forces_with_witness(
    beta: &Cycle,
    alpha: &Cycle,
    caps: &ForcingCaps,
) -> Result<(bool, Option<Witness>), ForcingError> {
    if beta == alpha {
        return Ok((true, None));
    }
    let q = alpha.len();
    if q > caps.max_loop_len {
        return Err(ForcingError::LengthCapExceeded {
            q,
            cap: caps.max_loop_len,
        });
    }
    let g = build_digraph(beta);
    for lp in loops_of_length(&g, q, caps)? {
        if let Some(orbit) = orbit_from_loop(beta, &lp)? {
            if orbit.least_period == q && &orbit.orbit_type == alpha {
                return Ok((true, Some(Witness { found_loop: lp, orbit })));
            }
        }
    }
    Ok((false, None))
}

/// True iff β forces α.
pub fn forces(beta: &Cycle, alpha: &Cycle, caps: &ForcingCaps) -> Result<bool, ForcingError> {
    forces_with_witness(beta, alpha, caps).map(|(f, _)| f)
}

/// Every orbit type of length ≤ `max_period` realized by loops of `G(β)`,
/// plus β itself, sorted by length then image table.
pub fn forced_types(
    beta: &Cycle,
    max_period: usize,
    caps: &ForcingCaps,
) -> Result<Vec<Cycle>, ForcingError> {
    if max_period > caps.max_loop_len {
        return Err(ForcingError::LengthCapExceeded {
            q: max_period,
            cap: caps.max_loop_len,
        });
    }
    let g = build_digraph(beta);
    let mut found: BTreeSet<Cycle> = BTreeSet::new();
    found.insert(beta.clone());
    for q in 1..=max_period {
        for lp in loops_of_length(&g, q, caps)? {
            if let Some(orbit) = orbit_from_loop(beta, &lp)? {
                found.insert(orbit.orbit_type);
            }
        }
    }
    let mut out: Vec<Cycle> = found.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a.images()).cmp(&(b.len(), b.images())));
    Ok(out)
}

pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// JSON shape of a forcing query.
#[derive(Debug, Clone, Serialize)]
pub struct ForcesJson {
    pub beta: Vec<usize>,
    pub alpha: Vec<usize>,
    pub forces: bool,
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    #[serde(rename = "loop")]
    pub loop_vertices: Vec<usize>,
    pub points: Vec<String>,
    pub orbit_type: Vec<usize>,
}

pub fn forces_to_json(beta: &Cycle, alpha: &Cycle, result: bool, witness: &Option<Witness>) -> ForcesJson {
    ForcesJson {
        beta: beta.images().to_vec(),
        alpha: alpha.images().to_vec(),
        forces: result,
        witness: witness.as_ref().map(|w| WitnessJson {
            loop_vertices: w.found_loop.vertices().to_vec(),
            points: w.orbit.points.iter().map(rational_string).collect(),
            orbit_type: w.orbit.orbit_type.images().to_vec(),
        }),
    }
}
