//! The connect-the-dots map `L_θ`, its signed Markov digraph `G(θ)`, and
//! conversions between the two.
//!
//! Vertices of `G(θ)` are the unit intervals `I_1..I_{n-1}`; vertex `i`
//! carries `+` when `L_θ` rises on `I_i` and `-` when it falls, and an
//! edge `i → j` exists exactly when `L_θ(I_i)` covers `I_j`. A graph built
//! this way determines its cycle uniquely, which is what `recover_cycle`
//! inverts and `double_graph` exploits.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{Cycle, PermError, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkovError {
    #[error("signs/adjacency shape mismatch")]
    ShapeMismatch,
    #[error("row {row} is not a nonempty contiguous block")]
    BadRowBlock { row: usize },
    #[error("no cycle produces this digraph (row {row} disagrees)")]
    Inconsistent { row: usize },
    #[error("recovered map is a permutation but not a single cycle")]
    NotACycle,
    #[error("doubling requires an odd number of swaps, got {count}")]
    EvenSwapCount { count: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// One affine piece `x ↦ slope·x + intercept` of `L_θ` on `I_i = [i, i+1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffinePiece {
    pub slope: i64,
    pub intercept: i64,
}

impl AffinePiece {
    pub fn apply(&self, x: &BigRational) -> BigRational {
        x * BigRational::from_integer(BigInt::from(self.slope))
            + BigRational::from_integer(BigInt::from(self.intercept))
    }
}

/// The canonical θ-linear map on `[1, n]`: equal to θ on integers, affine
/// in between. All slopes and intercepts are integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinearMap {
    n: usize,
    pieces: Vec<AffinePiece>,
}

impl PiecewiseLinearMap {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The piece on `I_i = [i, i+1]`, 1-indexed, `1 <= i <= n-1`.
    pub fn piece(&self, i: usize) -> AffinePiece {
        self.pieces[i - 1]
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    /// Evaluates `L_θ(x)` for `1 <= x <= n`.
    pub fn apply(&self, x: &BigRational) -> BigRational {
        if self.pieces.is_empty() {
            // n = 1: the domain is the single point 1.
            return x.clone();
        }
        let floor = x.floor().to_integer();
        let mut i: usize = if floor < BigInt::one() {
            1
        } else {
            floor.try_into().unwrap_or(usize::MAX)
        };
        i = i.clamp(1, self.pieces.len());
        self.piece(i).apply(x)
    }
}

/// Builds `L_θ` from a cycle: the affine interpolation between
/// `(i, θ(i))` and `(i+1, θ(i+1))` on each unit interval.
pub fn connect_the_dots(theta: &Cycle) -> PiecewiseLinearMap {
    let n = theta.len();
    let im = theta.images();
    let pieces = (1..n)
        .map(|i| {
            let slope = im[i] as i64 - im[i - 1] as i64;
            let intercept = im[i - 1] as i64 - slope * i as i64;
            AffinePiece { slope, intercept }
        })
        .collect();
    PiecewiseLinearMap { n, pieces }
}

/// Signed Markov digraph: `n_vertices = n − 1` signed vertices and a dense
/// 0/1 adjacency matrix whose rows are contiguous blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedDigraph {
    signs: Vec<Sign>,
    adjacency: Vec<Vec<u8>>,
}

impl SignedDigraph {
    /// Validates shape, 0/1 entries, and the nonempty-contiguous-block
    /// invariant of every row.
    pub fn new(signs: Vec<Sign>, adjacency: Vec<Vec<u8>>) -> Result<Self, MarkovError> {
        let n = signs.len();
        if adjacency.len() != n || adjacency.iter().any(|r| r.len() != n) {
            return Err(MarkovError::ShapeMismatch);
        }
        let g = SignedDigraph { signs, adjacency };
        for i in 1..=n {
            g.row_block(i).ok_or(MarkovError::BadRowBlock { row: i })?;
        }
        Ok(g)
    }

    pub fn empty() -> Self {
        SignedDigraph {
            signs: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.signs.len()
    }

    pub fn sign(&self, i: usize) -> Sign {
        self.signs[i - 1]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i - 1][j - 1] != 0
    }

    pub fn adjacency(&self) -> &[Vec<u8>] {
        &self.adjacency
    }

    /// Out-neighbours of vertex `i` in ascending order.
    pub fn successors_of(&self, i: usize) -> Vec<usize> {
        (1..=self.n_vertices()).filter(|&j| self.has_edge(i, j)).collect()
    }

    /// The contiguous block `[l, r]` of 1-entries in row `i`, or `None`
    /// when the row is empty or not contiguous.
    fn row_block(&self, i: usize) -> Option<(usize, usize)> {
        let row = &self.adjacency[i - 1];
        let l = row.iter().position(|&e| e != 0)? + 1;
        if row[l - 1] != 1 {
            return None;
        }
        let mut r = l;
        while r < row.len() && row[r] == 1 {
            r += 1;
        }
        if row[r..].iter().any(|&e| e != 0) {
            return None;
        }
        Some((l, r))
    }

    /// Edges `(i, j)` in row-major (lexicographic) order, 1-indexed.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n_vertices();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Builds `G(θ)`: vertex `i` is `+` iff `θ(i) < θ(i+1)`, and `i → j` iff
/// `min(θ(i), θ(i+1)) <= j` and `j+1 <= max(θ(i), θ(i+1))`.
/// A 1-cycle has no vertices and yields the empty graph.
pub fn build_digraph(theta: &Cycle) -> SignedDigraph {
    let n = theta.len();
    if n < 2 {
        return SignedDigraph::empty();
    }
    let im = theta.images();
    let mut signs = Vec::with_capacity(n - 1);
    let mut adjacency = Vec::with_capacity(n - 1);
    for i in 1..n {
        let (a, b) = (im[i - 1], im[i]);
        signs.push(if a < b { Sign::Plus } else { Sign::Minus });
        let (lo, hi) = (a.min(b), a.max(b));
        let row = (1..n).map(|j| u8::from(lo <= j && j + 1 <= hi)).collect();
        adjacency.push(row);
    }
    SignedDigraph { signs, adjacency }
}

/// Inverts `build_digraph`: row `i`'s block `[l, r]` pins
/// `{θ(i), θ(i+1)} = {l, r+1}`, the sign of `v_i` orders the pair, and
/// consecutive rows must agree on the shared value.
pub fn recover_cycle(g: &SignedDigraph) -> Result<Cycle, MarkovError> {
    let n = g.n_vertices() + 1;
    if n == 1 {
        return Ok(Cycle::from_images(vec![1]).expect("the 1-cycle"));
    }
    let mut images = vec![0usize; n];
    let mut seen = vec![false; n + 1];
    for i in 1..n {
        let (l, r) = g.row_block(i).ok_or(MarkovError::BadRowBlock { row: i })?;
        let (from, to) = match g.sign(i) {
            Sign::Plus => (l, r + 1),
            Sign::Minus => (r + 1, l),
        };
        if i == 1 {
            images[0] = from;
            seen[from] = true;
        } else if images[i - 1] != from {
            return Err(MarkovError::Inconsistent { row: i });
        }
        if seen[to] {
            return Err(MarkovError::Inconsistent { row: i });
        }
        seen[to] = true;
        images[i] = to;
    }
    let perm = crate::perm::Permutation::new(images)
        .expect("n distinct values in 1..=n form a bijection");
    Cycle::from_permutation(perm).map_err(|_| MarkovError::NotACycle)
}

/// Doubles the graph along an odd swap set: recover θ, form the successor
/// `η = θ* ∘ ρ_S`, and rebuild. Even swap sets are rejected because the
/// result would not be the graph of any cycle.
pub fn double_graph(g: &SignedDigraph, swaps: &[usize]) -> Result<SignedDigraph, MarkovError> {
    if swaps.len() % 2 == 0 {
        return Err(MarkovError::EvenSwapCount { count: swaps.len() });
    }
    let theta = recover_cycle(g)?;
    let eta = theta.successor_candidate(swaps)?;
    let eta = Cycle::from_permutation(eta).expect("odd swap sets give cycles");
    Ok(build_digraph(&eta))
}

/// Deterministic DOT text: vertex lines in order with `v<i><sign>` labels,
/// then edge lines in row-major order.
pub fn to_dot(g: &SignedDigraph) -> String {
    let mut out = String::from("digraph G {\n");
    for i in 1..=g.n_vertices() {
        let _ = writeln!(out, "  v{i} [label=\"v{i}{}\"];", g.sign(i).as_char());
    }
    for (i, j) in g.edges() {
        let _ = writeln!(out, "  v{i} -> v{j};");
    }
    out.push_str("}\n");
    out
}

/// JSON shape of a digraph: vertex count, signs, and 1-indexed edges in
/// lexicographic order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DigraphJson {
    pub n: usize,
    pub signs: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

pub fn to_json(g: &SignedDigraph) -> DigraphJson {
    DigraphJson {
        n: g.n_vertices(),
        signs: g.signs().iter().map(|s| s.to_string()).collect(),
        edges: g.edges(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_cycles;

    fn cyc(text: &str) -> Cycle {
        Cycle::parse(text).unwrap()
    }

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn connect_the_dots_examples() {
        // (12): single piece x ↦ 3 − x.
        let l = connect_the_dots(&cyc("(12)"));
        assert_eq!(l.pieces(), &[AffinePiece { slope: -1, intercept: 3 }]);

        // (123): x ↦ x + 1 on I1, x ↦ 7 − 2x on I2.
        let l = connect_the_dots(&cyc("(123)"));
        assert_eq!(
            l.pieces(),
            &[
                AffinePiece { slope: 1, intercept: 1 },
                AffinePiece { slope: -2, intercept: 7 }
            ]
        );

        // (1): no pieces; the domain is a point.
        let l = connect_the_dots(&cyc("(1)"));
        assert!(l.pieces().is_empty());
        assert_eq!(l.apply(&rational(1, 1)), rational(1, 1));
    }

    #[test]
    fn apply_matches_theta_on_integers() {
        for n in 1..=6 {
            for theta in all_cycles(n) {
                let l = connect_the_dots(&theta);
                for x in 1..=n {
                    let vx = l.apply(&rational(x as i64, 1));
                    assert_eq!(vx, rational(theta.apply(x) as i64, 1));
                }
            }
        }
    }

    #[test]
    fn build_digraph_examples() {
        let g = build_digraph(&cyc("(12)"));
        assert_eq!(g.signs(), &[Sign::Minus]);
        assert_eq!(g.adjacency(), &[vec![1]]);

        let g = build_digraph(&cyc("(123)"));
        assert_eq!(g.signs(), &[Sign::Plus, Sign::Minus]);
        assert_eq!(g.adjacency(), &[vec![0, 1], vec![1, 1]]);

        let g = build_digraph(&cyc("(1324)"));
        assert_eq!(g.signs(), &[Sign::Plus, Sign::Minus, Sign::Minus]);
        assert_eq!(g.adjacency(), &[vec![0, 0, 1], vec![0, 1, 1], vec![1, 0, 0]]);

        assert_eq!(build_digraph(&cyc("(1)")).n_vertices(), 0);
    }

    #[test]
    fn row_blocks_have_slope_width() {
        for n in 2..=7 {
            for theta in all_cycles(n) {
                let g = build_digraph(&theta);
                let im = theta.images();
                for i in 1..n {
                    let (l, r) = g.row_block(i).expect("contiguous");
                    let width = (im[i] as i64 - im[i - 1] as i64).unsigned_abs() as usize;
                    assert_eq!(r - l + 1, width);
                }
            }
        }
    }

    #[test]
    fn recover_cycle_examples() {
        let g = SignedDigraph::new(vec![Sign::Minus], vec![vec![1]]).unwrap();
        assert_eq!(recover_cycle(&g).unwrap(), cyc("(12)"));

        let g = SignedDigraph::new(
            vec![Sign::Plus, Sign::Minus],
            vec![vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        assert_eq!(recover_cycle(&g).unwrap(), cyc("(123)"));

        let g = SignedDigraph::new(vec![Sign::Plus, Sign::Plus], vec![vec![0, 1], vec![1, 1]])
            .unwrap();
        assert_eq!(
            recover_cycle(&g).unwrap_err(),
            MarkovError::Inconsistent { row: 2 }
        );

        // A + self-loop recovers the identity, which is not a cycle.
        let g = SignedDigraph::new(vec![Sign::Plus], vec![vec![1]]).unwrap();
        assert_eq!(recover_cycle(&g).unwrap_err(), MarkovError::NotACycle);

        assert_eq!(recover_cycle(&SignedDigraph::empty()).unwrap(), cyc("(1)"));
    }

    #[test]
    fn round_trip_all_cycles_up_to_7() {
        for n in 1..=7 {
            for theta in all_cycles(n) {
                let g = build_digraph(&theta);
                assert_eq!(recover_cycle(&g).unwrap(), theta, "round trip for {theta}");
            }
        }
    }

    #[test]
    fn digraph_validation() {
        assert_eq!(
            SignedDigraph::new(vec![Sign::Plus], vec![vec![0]]).unwrap_err(),
            MarkovError::BadRowBlock { row: 1 }
        );
        assert_eq!(
            SignedDigraph::new(vec![Sign::Plus, Sign::Minus], vec![vec![1], vec![1, 1]])
                .unwrap_err(),
            MarkovError::ShapeMismatch
        );
        // 1 0 1 is not contiguous.
        assert_eq!(
            SignedDigraph::new(
                vec![Sign::Plus; 3],
                vec![vec![1, 0, 1], vec![1, 1, 1], vec![1, 1, 1]],
            )
            .unwrap_err(),
            MarkovError::BadRowBlock { row: 1 }
        );
    }

    #[test]
    fn double_graph_examples() {
        let g = build_digraph(&cyc("(12)"));
        assert_eq!(double_graph(&g, &[2]).unwrap(), build_digraph(&cyc("(1324)")));

        // swaps = {3} sends (123) to (135246).
        let g = build_digraph(&cyc("(123)"));
        assert_eq!(
            double_graph(&g, &[3]).unwrap(),
            build_digraph(&cyc("(135246)"))
        );

        // swaps = {2,3,4} sends (1324) to (15472638).
        let g = build_digraph(&cyc("(1324)"));
        assert_eq!(
            double_graph(&g, &[2, 3, 4]).unwrap(),
            build_digraph(&cyc("(15472638)"))
        );

        assert_eq!(
            double_graph(&build_digraph(&cyc("(12)")), &[1, 2]).unwrap_err(),
            MarkovError::EvenSwapCount { count: 2 }
        );
    }

    #[test]
    fn dot_golden() {
        assert_eq!(
            to_dot(&build_digraph(&cyc("(12)"))),
            "digraph G {\n  v1 [label=\"v1-\"];\n  v1 -> v1;\n}\n"
        );
        assert_eq!(
            to_dot(&build_digraph(&cyc("(123)"))),
            "digraph G {\n  v1 [label=\"v1+\"];\n  v2 [label=\"v2-\"];\n  v1 -> v2;\n  v2 -> v1;\n  v2 -> v2;\n}\n"
        );
        assert_eq!(to_dot(&SignedDigraph::empty()), "digraph G {\n}\n");
    }

    #[test]
    fn json_shape() {
        let g = build_digraph(&cyc("(123)"));
        let j = serde_json::to_string(&to_json(&g)).unwrap();
        assert_eq!(j, r#"{"n":2,"signs":["+","-"],"edges":[[1,2],[2,1],[2,2]]}"#);
    }
}
