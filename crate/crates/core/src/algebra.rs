//! Table algebras given by exact structure constants.
//!
//! A [`TableAlgebra`] is a basis `b_0 = 1, b_1, ..., b_{d-1}` together with
//! nonnegative rational constants `lambda(a, b, c)` such that
//! `b_a * b_b = sum_c lambda(a, b, c) b_c`, an involution on basis indices and
//! a degree map. Values are only constructed through [`validate`], so every
//! `TableAlgebra` in circulation satisfies the table-algebra axioms.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest dimension for which associativity is checked exhaustively by default.
pub const EXHAUSTIVE_ASSOCIATIVITY_DIM: usize = 12;

/// Number of sampled `(a, b, c)` triples above [`EXHAUSTIVE_ASSOCIATIVITY_DIM`].
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 1000;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Unvalidated table-algebra data as read from a file or built by hand.
#[derive(Debug, Clone, PartialEq)]
pub struct RawAlgebra {
    pub dim: usize,
    /// Sparse structure constants `(a, b, c, lambda_abc)`; omitted triples are zero.
    pub entries: Vec<(usize, usize, usize, Rational)>,
    pub star: Vec<usize>,
    pub degrees: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Nonnegative structure constants.
    I,
    /// Involutory anti-automorphism fixing the identity.
    II,
    /// `lambda(a, b, 0) = delta(b, a*) |a|` with `|a| > 0`.
    III,
    /// The degree map is a one-dimensional representation.
    IV,
    /// `b_0` is a two-sided unit.
    Unit,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::I => "I",
            Axiom::II => "II",
            Axiom::III => "III",
            Axiom::IV => "IV",
            Axiom::Unit => "unit",
            Axiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

/// A single failed axiom instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub found: String,
    pub expected: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(
            f,
            "axiom {} at ({}): found {}, expected {}",
            self.axiom,
            idx.join(","),
            self.found,
            self.expected
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ValidateOptions {
    /// Check associativity exhaustively regardless of dimension.
    pub strict: bool,
    /// Seed for the sampled associativity check.
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableAlgebra {
    dim: usize,
    /// Nonzero constants sorted by `(a, b, c)`.
    entries: Vec<(usize, usize, usize, Rational)>,
    /// `rows[a * dim + b]` holds the nonzero `(c, lambda_abc)` in increasing `c`.
    rows: Vec<Vec<(usize, Rational)>>,
    star: Vec<usize>,
    degrees: Vec<Rational>,
}

/// An element `sum_b x_b b` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub coeffs: Vec<Rational>,
}

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); dim],
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[index] = Rational::one();
        e
    }

    /// Sum of the basis elements in `indices`, i.e. `S+`.
    pub fn sum_of(dim: usize, indices: &[usize]) -> Self {
        let mut e = Self::zero(dim);
        for &i in indices {
            e.coeffs[i] += Rational::one();
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(self, other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same(self, other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

fn check_same(x: &AlgebraElement, y: &AlgebraElement) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::AlgebraMismatch(x.dim(), y.dim()));
    }
    Ok(())
}

/// Validate raw data against the table-algebra axioms.
///
/// Every violation found is reported, not just the first. The supplied
/// degrees are compared against `lambda(a, a*, 0)` rather than trusted.
pub fn validate(raw: RawAlgebra, opts: ValidateOptions) -> Result<TableAlgebra> {
    let RawAlgebra {
        dim,
        entries,
        star,
        degrees,
    } = raw;
    if dim == 0 {
        return Err(Error::ShapeMismatch("dimension must be positive".into()));
    }
    if star.len() != dim {
        return Err(Error::ShapeMismatch(format!(
            "involution has {} entries, expected {dim}",
            star.len()
        )));
    }
    if degrees.len() != dim {
        return Err(Error::ShapeMismatch(format!(
            "degree vector has {} entries, expected {dim}",
            degrees.len()
        )));
    }
    if let Some(&s) = star.iter().find(|&&s| s >= dim) {
        return Err(Error::ShapeMismatch(format!(
            "involution image {s} out of range for dimension {dim}"
        )));
    }

    let mut map: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
    for (a, b, c, v) in entries {
        if a >= dim || b >= dim || c >= dim {
            return Err(Error::ShapeMismatch(format!(
                "index ({a},{b},{c}) out of range for dimension {dim}"
            )));
        }
        if map.insert((a, b, c), v).is_some() {
            return Err(Error::ShapeMismatch(format!(
                "structure constant ({a},{b},{c}) given twice"
            )));
        }
    }
    map.retain(|_, v| !v.is_zero());

    let algebra = TableAlgebra::from_parts(dim, map, star, degrees);
    let violations = algebra.violations(opts);
    if violations.is_empty() {
        Ok(algebra)
    } else {
        Err(Error::AxiomViolation(violations))
    }
}

impl TableAlgebra {
    fn from_parts(
        dim: usize,
        map: BTreeMap<(usize, usize, usize), Rational>,
        star: Vec<usize>,
        degrees: Vec<Rational>,
    ) -> Self {
        let mut rows = vec![Vec::new(); dim * dim];
        let mut entries = Vec::with_capacity(map.len());
        for ((a, b, c), v) in map {
            rows[a * dim + b].push((c, v.clone()));
            entries.push((a, b, c, v));
        }
        Self {
            dim,
            entries,
            rows,
            star,
            degrees,
        }
    }

    fn violations(&self, opts: ValidateOptions) -> Vec<Violation> {
        let d = self.dim;
        let mut out = Vec::new();
        let v = |axiom, indices: Vec<usize>, found: String, expected: String| Violation {
            axiom,
            indices,
            found,
            expected,
        };

        for (a, b, c, x) in &self.entries {
            if x.is_negative() {
                out.push(v(Axiom::I, vec![*a, *b, *c], x.to_string(), ">= 0".into()));
            }
        }

        // II: the involution itself, then the anti-automorphism identity.
        let mut star_ok = self.star[0] == 0;
        if !star_ok {
            out.push(v(Axiom::II, vec![0], self.star[0].to_string(), "0".into()));
        }
        for i in 0..d {
            if self.star[self.star[i]] != i {
                star_ok = false;
                out.push(v(
                    Axiom::II,
                    vec![i],
                    format!("star(star({i})) = {}", self.star[self.star[i]]),
                    i.to_string(),
                ));
            }
        }
        if star_ok {
            for (a, b, c, x) in &self.entries {
                let (sa, sb, sc) = (self.star[*a], self.star[*b], self.star[*c]);
                let y = self.lambda(sb, sa, sc);
                if *x != y {
                    out.push(v(
                        Axiom::II,
                        vec![*a, *b, *c],
                        format!("lambda({sb},{sa},{sc}) = {y}"),
                        x.to_string(),
                    ));
                }
            }
        }

        for b in 0..d {
            for c in 0..d {
                let expect = if b == c {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                for (l, r) in [(0, b), (b, 0)] {
                    let x = self.lambda(l, r, c);
                    if x != expect {
                        out.push(v(
                            Axiom::Unit,
                            vec![l, r, c],
                            x.to_string(),
                            expect.to_string(),
                        ));
                    }
                }
            }
        }

        // III, with the supplied degrees as the expected diagonal.
        if !self.degrees[0].is_one() {
            out.push(v(
                Axiom::III,
                vec![0],
                self.degrees[0].to_string(),
                "1".into(),
            ));
        }
        for a in 0..d {
            if !self.degrees[a].is_positive() {
                out.push(v(
                    Axiom::III,
                    vec![a],
                    format!("|b_{a}| = {}", self.degrees[a]),
                    "> 0".into(),
                ));
            }
            for b in 0..d {
                let x = self.lambda(a, b, 0);
                let expect = if star_ok && b == self.star[a] {
                    self.degrees[a].clone()
                } else if star_ok {
                    Rational::zero()
                } else {
                    continue;
                };
                if x != expect {
                    out.push(v(
                        Axiom::III,
                        vec![a, b, 0],
                        x.to_string(),
                        expect.to_string(),
                    ));
                }
            }
        }

        // IV
        for a in 0..d {
            if star_ok && self.degrees[a] != self.degrees[self.star[a]] {
                out.push(v(
                    Axiom::IV,
                    vec![a],
                    format!("|b_{}| = {}", self.star[a], self.degrees[self.star[a]]),
                    self.degrees[a].to_string(),
                ));
            }
            for b in 0..d {
                let lhs = &self.degrees[a] * &self.degrees[b];
                let rhs: Rational = self
                    .row(a, b)
                    .iter()
                    .map(|(c, x)| x * &self.degrees[*c])
                    .sum();
                if lhs != rhs {
                    out.push(v(Axiom::IV, vec![a, b], rhs.to_string(), lhs.to_string()));
                }
            }
        }

        if opts.strict || d <= EXHAUSTIVE_ASSOCIATIVITY_DIM {
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        self.check_assoc(a, b, c, &mut out);
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let a = rng.random_range(0..d);
                let b = rng.random_range(0..d);
                let c = rng.random_range(0..d);
                self.check_assoc(a, b, c, &mut out);
            }
        }
        out
    }

    fn check_assoc(&self, a: usize, b: usize, c: usize, out: &mut Vec<Violation>) {
        let d = self.dim;
        let mut left = vec![Rational::zero(); d];
        for (e, x) in self.row(a, b) {
            for (t, y) in self.row(*e, c) {
                left[*t] += x * y;
            }
        }
        let mut right = vec![Rational::zero(); d];
        for (f, x) in self.row(b, c) {
            for (t, y) in self.row(a, *f) {
                right[*t] += x * y;
            }
        }
        for t in 0..d {
            if left[t] != right[t] {
                out.push(Violation {
                    axiom: Axiom::Associativity,
                    indices: vec![a, b, c, t],
                    found: left[t].to_string(),
                    expected: right[t].to_string(),
                });
            }
        }
    }

    /// Skips validation so tests can feed corrupt data to downstream checks.
    #[cfg(test)]
    pub(crate) fn unchecked_for_tests(raw: RawAlgebra) -> Self {
        let map = raw
            .entries
            .into_iter()
            .map(|(a, b, c, v)| ((a, b, c), v))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Self::from_parts(raw.dim, map, raw.star, raw.degrees)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero structure constants sorted by `(a, b, c)`.
    pub fn entries(&self) -> &[(usize, usize, usize, Rational)] {
        &self.entries
    }

    /// Nonzero `(c, lambda_abc)` pairs of `b_a * b_b`.
    pub fn row(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.rows[a * self.dim + b]
    }

    pub fn lambda(&self, a: usize, b: usize, c: usize) -> Rational {
        self.row(a, b)
            .iter()
            .find(|(k, _)| *k == c)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn star(&self, i: usize) -> usize {
        self.star[i]
    }

    pub fn involution(&self) -> &[usize] {
        &self.star
    }

    pub fn degree(&self, i: usize) -> &Rational {
        &self.degrees[i]
    }

    pub fn degrees(&self) -> &[Rational] {
        &self.degrees
    }

    /// `|B+|`, the sum of all basis degrees.
    pub fn total_degree(&self) -> Rational {
        self.degrees.iter().sum()
    }

    pub fn degrees_f64(&self) -> Vec<f64> {
        self.degrees.iter().map(to_f64).collect()
    }

    pub fn to_raw(&self) -> RawAlgebra {
        RawAlgebra {
            dim: self.dim,
            entries: self.entries.clone(),
            star: self.star.clone(),
            degrees: self.degrees.clone(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|a| (0..a).all(|b| self.row(a, b) == self.row(b, a)))
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::basis(self.dim, 0)
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim, i)
    }

    fn check_element(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::AlgebraMismatch(x.dim(), self.dim));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut out = AlgebraElement::zero(self.dim);
        for (a, xa) in x.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let s = xa * yb;
                for (c, l) in self.row(a, b) {
                    out.coeffs[*c] += &s * l;
                }
            }
        }
        Ok(out)
    }

    /// `x* = sum conj(x_b) b*`; conjugation is trivial on rational coefficients.
    pub fn star_element(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.dim);
        for (b, xb) in x.coeffs.iter().enumerate() {
            out.coeffs[self.star[b]] = xb.clone();
        }
        out
    }

    pub fn degree_of(&self, x: &AlgebraElement) -> Rational {
        x.coeffs.iter().zip(&self.degrees).map(|(c, d)| c * d).sum()
    }

    /// Indices with nonzero coefficient, ascending.
    pub fn support(&self, x: &AlgebraElement) -> Vec<usize> {
        x.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Left-multiplication matrix: `m[c][b]` is the coefficient of `b_c` in `x * b_b`.
    pub fn regular_matrix(&self, x: &AlgebraElement) -> Vec<Vec<Rational>> {
        let d = self.dim;
        let mut m = vec![vec![Rational::zero(); d]; d];
        for (a, xa) in x.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for b in 0..d {
                for (c, l) in self.row(a, b) {
                    m[*c][b] += xa * l;
                }
            }
        }
        m
    }

    /// Trace of left multiplication by `b_c`, i.e. `sum_a lambda(c, a, a)`.
    pub fn regular_trace(&self, c: usize) -> Rational {
        (0..self.dim).map(|a| self.lambda(c, a, a)).sum()
    }
}

pub(crate) fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
