//! Permutations and cycles of `{1..n}`.
//!
//! Everything here is 1-indexed: a permutation is stored as its image
//! table, and `apply(i)` expects `1 <= i <= n`. A [`Cycle`] is a
//! permutation whose orbit of 1 has full length n, the central object of
//! the doubling construction.

use std::fmt;

use serde::ser::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("images are not a bijection of {{1..n}}")]
    NotABijection,
    #[error("permutation is not a single cycle")]
    NotASingleCycle,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("modality is undefined for length {len} (need n >= 3)")]
    TooShort { len: usize },
    #[error("transposition index {s} out of range for length {n2}")]
    OutOfRange { s: usize, n2: usize },
    #[error("swap index {index} outside 1..={n}")]
    SwapOutOfRange { index: usize, n: usize },
    #[error("swap indices must be strictly increasing")]
    SwapsNotIncreasing,
}

/// Direction label: `Plus` when the map rises, `Minus` when it falls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A permutation of `{1..n}` stored as its image table:
/// `images()[i-1]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection of `{1..n}`.
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v < 1 || v > n || seen[v - 1] {
                return Err(PermError::NotABijection);
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 1-indexed point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition `(self ∘ g)(x) = self(g(x))`.
    pub fn compose(&self, g: &Permutation) -> Result<Permutation, PermError> {
        if self.len() != g.len() {
            return Err(PermError::LengthMismatch {
                left: self.len(),
                right: g.len(),
            });
        }
        let images = g.images.iter().map(|&y| self.images[y - 1]).collect();
        Ok(Permutation { images })
    }

    /// Parity: `+1` for even permutations, `-1` for odd.
    pub fn sign(&self) -> i8 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] - 1;
            }
        }
        if (n - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// True iff the orbit of 1 has full length n.
    pub fn is_cycle(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let mut x = 1;
        for _ in 0..n - 1 {
            x = self.apply(x);
            if x == 1 {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Permutation {
    /// Image-list form, e.g. `2,3,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl Serialize for Permutation {
    /// JSON form is the 1-indexed image table.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

/// A cyclic permutation: the orbit of 1 visits all n points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Permutation);

impl Cycle {
    pub fn from_permutation(p: Permutation) -> Result<Self, PermError> {
        if !p.is_cycle() {
            return Err(PermError::NotASingleCycle);
        }
        Ok(Cycle(p))
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        Cycle::from_permutation(Permutation::new(images)?)
    }

    /// Parses either the image-list form `2,3,1` or cycle notation:
    /// `(123)` with juxtaposed digits, or `(1 3 2 4)` / `(1,3,2,4)`.
    /// Cycle notation must start at 1.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let t = text.trim();
        if t.is_empty() {
            return Err(PermError::Syntax("empty input".into()));
        }
        if let Some(inner) = t.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| PermError::Syntax("unclosed '('".into()))?
                .trim();
            return Cycle::from_cycle_order(&parse_points(inner)?);
        }
        let mut images = Vec::new();
        for tok in t.split(',') {
            let tok = tok.trim();
            let v: usize = tok
                .parse()
                .map_err(|_| PermError::Syntax(format!("bad image value {tok:?}")))?;
            if v == 0 {
                return Err(PermError::Syntax("points are 1-indexed; 0 is invalid".into()));
            }
            images.push(v);
        }
        Cycle::from_images(images)
    }

    /// Builds the cycle `(k_1 k_2 ... k_m)` with `θ(k_i) = k_{i+1}` and
    /// `θ(k_m) = k_1`. Requires `k_1 = 1` and that the points cover `{1..m}`.
    pub fn from_cycle_order(points: &[usize]) -> Result<Self, PermError> {
        let m = points.len();
        if m == 0 {
            return Err(PermError::Syntax("empty cycle".into()));
        }
        if points[0] != 1 {
            return Err(PermError::Syntax("cycle notation must start at 1".into()));
        }
        let mut seen = vec![false; m];
        for &k in points {
            if k == 0 {
                return Err(PermError::Syntax("points are 1-indexed; 0 is invalid".into()));
            }
            if k > m {
                // A point beyond m means some smaller point is missing,
                // i.e. fixed, so the result cannot be a single m-cycle.
                return Err(PermError::NotASingleCycle);
            }
            if seen[k - 1] {
                return Err(PermError::NotABijection);
            }
            seen[k - 1] = true;
        }
        let mut images = vec![0; m];
        for (i, &k) in points.iter().enumerate() {
            images[k - 1] = points[(i + 1) % m];
        }
        Ok(Cycle(Permutation { images }))
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn into_permutation(self) -> Permutation {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0.apply(x)
    }

    pub fn images(&self) -> &[usize] {
        self.0.images()
    }

    /// The orbit of 1 in cycle order: `1, θ(1), θ²(1), ...`.
    pub fn cycle_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut x = 1;
        for _ in 0..self.len() {
            out.push(x);
            x = self.apply(x);
        }
        out
    }

    /// Doubled permutation on 2n points: `2k ↦ 2θ(k)`, `2k−1 ↦ 2θ(k)−1`.
    pub fn star(&self) -> Permutation {
        let n = self.len();
        let mut images = vec![0; 2 * n];
        for k in 1..=n {
            let t = self.apply(k);
            images[2 * k - 2] = 2 * t - 1;
            images[2 * k - 1] = 2 * t;
        }
        Permutation { images }
    }

    /// Number of local extrema of the connect-the-dots map plus the initial
    /// direction. Defined only for n ≥ 3.
    pub fn modality(&self) -> Result<Modality, PermError> {
        let n = self.len();
        if n < 3 {
            return Err(PermError::TooShort { len: n });
        }
        let im = self.images();
        let leading_sign = if im[0] < im[1] { Sign::Plus } else { Sign::Minus };
        let mut extrema_count = 0;
        for i in 1..n - 1 {
            let d0 = im[i] as i64 - im[i - 1] as i64;
            let d1 = im[i + 1] as i64 - im[i] as i64;
            if d0 * d1 < 0 {
                extrema_count += 1;
            }
        }
        Ok(Modality {
            extrema_count,
            leading_sign,
        })
    }

    pub fn is_unimodal(&self) -> bool {
        self.modality()
            .map(|m| m == Modality::UNIMODAL)
            .unwrap_or(false)
    }

    /// `θ* ∘ ρ_{i_1} ∘ ... ∘ ρ_{i_m}` for the strictly increasing swap set.
    /// The result lives in S_{2n} and is a single cycle iff `swaps` has odd
    /// cardinality.
    pub fn successor_candidate(&self, swaps: &[usize]) -> Result<Permutation, PermError> {
        let n = self.len();
        for (i, &s) in swaps.iter().enumerate() {
            if s < 1 || s > n {
                return Err(PermError::SwapOutOfRange { index: s, n });
            }
            if i > 0 && swaps[i - 1] >= s {
                return Err(PermError::SwapsNotIncreasing);
            }
        }
        let mut swapped = vec![false; n];
        for &s in swaps {
            swapped[s - 1] = true;
        }
        let mut images = vec![0; 2 * n];
        for k in 1..=n {
            let t = self.apply(k);
            let (lo, hi) = (2 * t - 1, 2 * t);
            if swapped[k - 1] {
                // ρ_k exchanges positions 2k−1 and 2k before θ* acts.
                images[2 * k - 2] = hi;
                images[2 * k - 1] = lo;
            } else {
                images[2 * k - 2] = lo;
                images[2 * k - 1] = hi;
            }
        }
        Ok(Permutation { images })
    }
}

impl Serialize for Cycle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl fmt::Display for Cycle {
    /// Cycle notation: `(123)` for n ≤ 9, `(1 10 2 ...)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = self.cycle_order();
        if self.len() <= 9 {
            let body: String = order.iter().map(|k| k.to_string()).collect();
            write!(f, "({body})")
        } else {
            let strs: Vec<String> = order.iter().map(|k| k.to_string()).collect();
            write!(f, "({})", strs.join(" "))
        }
    }
}

/// Modality of a cycle: extrema count of `L_θ` with the initial direction.
/// `(+, 1)` is the unimodal case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modality {
    pub extrema_count: usize,
    pub leading_sign: Sign,
}

impl Modality {
    pub const UNIMODAL: Modality = Modality {
        extrema_count: 1,
        leading_sign: Sign::Plus,
    };
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.leading_sign, self.extrema_count)
    }
}

/// The transposition `(2s−1, 2s)` in `S_{n2}`.
pub fn rho(s: usize, n2: usize) -> Result<Permutation, PermError> {
    if s < 1 || 2 * s > n2 {
        return Err(PermError::OutOfRange { s, n2 });
    }
    let mut images: Vec<usize> = (1..=n2).collect();
    images.swap(2 * s - 2, 2 * s - 1);
    Ok(Permutation { images })
}

/// All cycles of length n, ordered by the lexicographic order of their
/// cycle notation tail. There are (n−1)! of them.
pub fn all_cycles(n: usize) -> Vec<Cycle> {
    assert!(n >= 1, "cycles need at least one point");
    let mut out = Vec::new();
    let mut tail: Vec<usize> = (2..=n).collect();
    loop {
        let mut images = vec![0; n];
        let mut prev = 1;
        for &k in &tail {
            images[prev - 1] = k;
            prev = k;
        }
        images[prev - 1] = 1;
        out.push(Cycle(Permutation { images }));
        if !next_permutation(&mut tail) {
            break;
        }
    }
    out
}

fn next_permutation(xs: &mut [usize]) -> bool {
    let n = xs.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

fn parse_points(inner: &str) -> Result<Vec<usize>, PermError> {
    if inner.is_empty() {
        return Err(PermError::Syntax("empty cycle".into()));
    }
    let mut points = Vec::new();
    if inner.contains(|c: char| c == ',' || c.is_whitespace()) {
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok
                .parse()
                .map_err(|_| PermError::Syntax(format!("bad point {tok:?}")))?;
            points.push(v);
        }
    } else {
        for c in inner.chars() {
            let d = c
                .to_digit(10)
                .ok_or_else(|| PermError::Syntax(format!("bad digit {c:?}")))?;
            points.push(d as usize);
        }
    }
    Ok(points)
}
