//! Irreducible characters of a table algebra.
//!
//! The center `Z(A)` is computed exactly. A random rational central element
//! `z` acts on `Z(A)` with distinct eigenvalues (for generic `z`), and each
//! eigenvector spans one primitive central idempotent `e_i`. With
//! `tau(x) = trace(L_x)` the regular trace, `n_i^2 = tau(e_i)` and
//! `chi_i(b) = tau(b e_i) / n_i`.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{to_f64, AlgebraElement, Rational, TableAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{least_squares, nullspace, Nullspace};
use crate::quotient::{quotient, QuotientPresentation};
use crate::subsets::{is_strongly_normal, ClosedSubset};

/// Eigenvalue clustering and Gram checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Distance to the nearest integer accepted when rounding coefficients.
pub const INTEGER_TOLERANCE: f64 = 1e-6;
/// Max-norm distance at which a lifted character is matched to an irreducible.
pub const MATCH_TOLERANCE: f64 = 1e-6;
/// Random central elements tried before giving up.
pub const MAX_ATTEMPTS: usize = 8;
/// Coefficients of the random central element are drawn from `1..=1000`.
const COEFF_RANGE: std::ops::RangeInclusive<i64> = 1..=1000;

#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    pub values: Vec<Complex64>,
    /// `chi(1)`.
    pub block_degree: f64,
    pub irreducible: bool,
}

impl Character {
    /// The degree map `b -> |b|`.
    pub fn degree_map(alg: &TableAlgebra) -> Self {
        Self {
            values: alg
                .degrees()
                .iter()
                .map(|d| Complex64::new(to_f64(d), 0.0))
                .collect(),
            block_degree: 1.0,
            irreducible: true,
        }
    }

    /// A class function carried as a (possibly composite) character.
    pub fn from_values(values: Vec<Complex64>) -> Self {
        let block_degree = values.first().map(|v| v.re).unwrap_or(0.0);
        Self {
            values,
            block_degree,
            irreducible: false,
        }
    }

    pub fn sum(&self, other: &Character) -> Character {
        Character::from_values(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableOptions {
    pub tol: f64,
    pub seed: u64,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOLERANCE,
            seed: 0,
        }
    }
}

/// Largest deviations observed while building a table.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Residuals {
    /// `max_i |e_i^2 - e_i|` after polishing.
    pub idempotent: f64,
    /// `max_{i != j} |[chi_i, chi_j]|`.
    pub gram_off_diagonal: f64,
    /// `max_b |tau(b) - sum_i n_i chi_i(b)|`.
    pub regular_trace: f64,
    /// `max_{i,b} |chi_i(b*) - conj(chi_i(b))|`.
    pub conjugation: f64,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub irreducibles: Vec<Character>,
    /// `n_i`, the matrix block sizes.
    pub block_dims: Vec<usize>,
    /// `m_i = [chi_i, chi_i]`.
    pub multiplicities: Vec<f64>,
    pub tolerance: f64,
    pub center_dim: usize,
    /// Random central elements drawn, including the successful one.
    pub attempts: usize,
    pub residuals: Residuals,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// Index of the irreducible equal to `values` within `tol` in max norm.
    pub fn position(&self, values: &[Complex64], tol: f64) -> Option<usize> {
        self.irreducibles
            .iter()
            .position(|chi| max_distance(&chi.values, values) < tol)
    }

    /// Index of the degree map.
    pub fn degree_map_index(&self, alg: &TableAlgebra) -> Option<usize> {
        self.position(&Character::degree_map(alg).values, MATCH_TOLERANCE)
    }
}

pub fn max_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Structure constants as floats, for complex element arithmetic.
struct FloatAlgebra {
    dim: usize,
    rows: Vec<Vec<(usize, f64)>>,
    /// `tau(b_c) = trace(L_{b_c})`.
    traces: Vec<f64>,
}

impl FloatAlgebra {
    fn new(alg: &TableAlgebra) -> Self {
        let d = alg.dim();
        let rows = (0..d * d)
            .map(|ab| {
                alg.row(ab / d, ab % d)
                    .iter()
                    .map(|(c, x)| (*c, to_f64(x)))
                    .collect()
            })
            .collect();
        let traces = (0..d).map(|c| to_f64(&alg.regular_trace(c))).collect();
        Self {
            dim: d,
            rows,
            traces,
        }
    }

    fn mul(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![Complex64::zero(); d];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let s = xa * yb;
                for (c, l) in &self.rows[a * d + b] {
                    out[*c] += s * l;
                }
            }
        }
        out
    }

    /// `x b_b`.
    fn mul_basis(&self, x: &[Complex64], b: usize) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![Complex64::zero(); d];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (c, l) in &self.rows[a * d + b] {
                out[*c] += xa * l;
            }
        }
        out
    }

    fn trace(&self, x: &[Complex64]) -> Complex64 {
        x.iter().zip(&self.traces).map(|(v, t)| v * t).sum()
    }
}

fn max_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn idempotent_residual(fa: &FloatAlgebra, e: &[Complex64]) -> f64 {
    let sq = fa.mul(e, e);
    sq.iter()
        .zip(e)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// `e <- 3e^2 - 2e^3` until the idempotent residual stops improving.
fn polish_idempotent(fa: &FloatAlgebra, mut e: Vec<Complex64>) -> (Vec<Complex64>, f64) {
    let mut res = idempotent_residual(fa, &e);
    for _ in 0..20 {
        let sq = fa.mul(&e, &e);
        let cube = fa.mul(&sq, &e);
        let next: Vec<Complex64> = sq
            .iter()
            .zip(&cube)
            .map(|(s, c)| s * 3.0 - c * 2.0)
            .collect();
        let next_res = idempotent_residual(fa, &next);
        if next_res >= res {
            break;
        }
        e = next;
        res = next_res;
    }
    (e, res)
}

/// Exact basis of the center `{x : x b = b x for all basis b}`.
pub fn center(alg: &TableAlgebra) -> Nullspace {
    let d = alg.dim();
    let mut rows = Vec::new();
    for i in 0..d {
        let mut block = vec![vec![Rational::zero(); d]; d];
        for a in 0..d {
            for (c, x) in alg.row(a, i) {
                block[*c][a] += x;
            }
            for (c, x) in alg.row(i, a) {
                block[*c][a] -= x;
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
    nullspace(rows, d)
}

struct Split {
    idempotents: Vec<Vec<Complex64>>,
    block_dims: Vec<usize>,
    idempotent_residual: f64,
}

/// One splitting attempt with central element `z`; `Err` carries the reason to retry.
fn split_with(
    alg: &TableAlgebra,
    fa: &FloatAlgebra,
    centre: &Nullspace,
    z: &AlgebraElement,
    tol: f64,
) -> std::result::Result<Split, String> {
    let d = alg.dim();
    let r = centre.basis.len();
    // Matrix of multiplication by z on the center, in the nullspace coordinates.
    let mut m = DMatrix::<f64>::zeros(r, r);
    for (l, w) in centre.basis.iter().enumerate() {
        let zw = alg
            .multiply(z, &AlgebraElement { coeffs: w.clone() })
            .expect("center vectors live in the algebra");
        for (k, &f) in centre.free.iter().enumerate() {
            m[(k, l)] = to_f64(&zw.coeffs[f]);
        }
    }
    let eigenvalues: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
    let scale = eigenvalues.iter().map(|v| v.norm()).fold(1.0, f64::max);
    for i in 0..r {
        for j in 0..i {
            if (eigenvalues[i] - eigenvalues[j]).norm() < tol * scale {
                return Err(format!(
                    "eigenvalues {} and {} of the central element coincide within tolerance",
                    eigenvalues[i], eigenvalues[j]
                ));
            }
        }
    }

    let mc: DMatrix<Complex64> = m.map(|x| Complex64::new(x, 0.0));
    let basis_c: Vec<Vec<Complex64>> = centre
        .basis
        .iter()
        .map(|w| w.iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect())
        .collect();

    let mut idempotents = Vec::with_capacity(r);
    let mut block_dims = Vec::with_capacity(r);
    let mut worst = 0.0f64;
    let mut total = 0usize;
    for (i, lambda) in eigenvalues.iter().enumerate() {
        // Inverse iteration on the center's coordinates.
        let shift = lambda + Complex64::new(scale * 1e-11, scale * 1e-11);
        let shifted = &mc - DMatrix::<Complex64>::identity(r, r) * shift;
        let lu = shifted.lu();
        let mut v = DVector::<Complex64>::from_fn(r, |k, _| {
            Complex64::new(1.0 + k as f64 * 0.37, 0.11 * (i + 1) as f64)
        });
        for _ in 0..3 {
            let Some(next) = lu.solve(&v) else {
                return Err("singular shifted matrix during inverse iteration".into());
            };
            let n = next.norm();
            if !n.is_finite() || n == 0.0 {
                return Err("inverse iteration diverged".into());
            }
            v = next / Complex64::new(n, 0.0);
        }
        let mut x = vec![Complex64::zero(); d];
        for (k, w) in basis_c.iter().enumerate() {
            for (xc, wc) in x.iter_mut().zip(w) {
                *xc += v[k] * wc;
            }
        }
        // x spans C e_i, so x^2 = s x with e_i = x / s.
        let sq = fa.mul(&x, &x);
        let pivot = (0..d)
            .max_by(|&a, &b| x[a].norm().total_cmp(&x[b].norm()))
            .unwrap_or(0);
        let s = sq[pivot] / x[pivot];
        if s.norm() < f64::MIN_POSITIVE {
            return Err("eigenvector is nilpotent".into());
        }
        let e: Vec<Complex64> = x.iter().map(|v| v / s).collect();
        let (e, res) = polish_idempotent(fa, e);
        let res = res / max_norm(&e).max(1.0);
        if res > tol {
            return Err(format!("idempotent residual {res:e} exceeds tolerance"));
        }
        worst = worst.max(res);

        let rank = fa.trace(&e);
        let n = rank.re.max(0.0).sqrt().round();
        if n < 1.0
            || (rank.re - n * n).abs() > tol * (d as f64).max(1.0)
            || rank.im.abs() > tol * (d as f64).max(1.0)
        {
            return Err(format!(
                "block rank {rank} is not a positive square integer"
            ));
        }
        total += (n as usize) * (n as usize);
        idempotents.push(e);
        block_dims.push(n as usize);
    }
    if total != d {
        return Err(format!(
            "block sizes give sum n_i^2 = {total}, expected {d}"
        ));
    }
    Ok(Split {
        idempotents,
        block_dims,
        idempotent_residual: worst,
    })
}

fn value_key(values: &[Complex64]) -> Vec<(i64, i64)> {
    values
        .iter()
        .map(|v| ((v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64))
        .collect()
}

fn canonical_order(a: &Character, b: &Character) -> Ordering {
    a.block_degree
        .round()
        .total_cmp(&b.block_degree.round())
        .then_with(|| value_key(&b.values).cmp(&value_key(&a.values)))
}

/// Irreducible characters of `alg`.
///
/// Irreducibles are ordered by block degree and then by values rounded to six
/// decimals, lexicographically descending, so the degree map comes first and the
/// output does not depend on the seed.
pub fn character_table(alg: &TableAlgebra, opts: TableOptions) -> Result<CharacterTable> {
    let d = alg.dim();
    let fa = FloatAlgebra::new(alg);
    let centre = center(alg);
    let r = centre.basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut last_reason = String::new();
    for attempt in 1..=MAX_ATTEMPTS {
        let mut z = AlgebraElement::zero(d);
        for w in &centre.basis {
            let k = Rational::from_integer(rng.random_range(COEFF_RANGE).into());
            for (zc, wc) in z.coeffs.iter_mut().zip(w) {
                *zc += &k * wc;
            }
        }
        let split = match split_with(alg, &fa, &centre, &z, opts.tol) {
            Ok(s) => s,
            Err(reason) => {
                last_reason = reason;
                continue;
            }
        };
        if r == d && split.block_dims.iter().any(|&n| n != 1) {
            last_reason = "commutative algebra produced a block of size > 1".into();
            continue;
        }

        let mut chars: Vec<(Character, usize)> = split
            .idempotents
            .iter()
            .zip(&split.block_dims)
            .map(|(e, &n)| {
                let values = (0..d)
                    .map(|b| fa.trace(&fa.mul_basis(e, b)) / n as f64)
                    .collect();
                (
                    Character {
                        values,
                        block_degree: n as f64,
                        irreducible: true,
                    },
                    n,
                )
            })
            .collect();
        chars.sort_by(|a, b| canonical_order(&a.0, &b.0));
        let (irreducibles, block_dims): (Vec<Character>, Vec<usize>) = chars.into_iter().unzip();

        let table = finish_table(
            alg,
            &fa,
            irreducibles,
            block_dims,
            opts.tol,
            attempt,
            split.idempotent_residual,
        )?;
        return Ok(table);
    }
    Err(Error::SplittingFailed {
        attempts: MAX_ATTEMPTS,
        reason: last_reason,
    })
}

fn finish_table(
    alg: &TableAlgebra,
    fa: &FloatAlgebra,
    irreducibles: Vec<Character>,
    block_dims: Vec<usize>,
    tol: f64,
    attempts: usize,
    idempotent: f64,
) -> Result<CharacterTable> {
    let d = alg.dim();
    let k = irreducibles.len();
    let mut gram_off = 0.0f64;
    let mut multiplicities = Vec::with_capacity(k);
    for i in 0..k {
        for j in 0..k {
            let g = dual_form(alg, &irreducibles[i].values, &irreducibles[j].values);
            if i == j {
                if g.re <= tol || g.im.abs() > tol {
                    return Err(Error::ToleranceBreach {
                        what: format!("multiplicity [chi_{i}, chi_{i}] = {g}"),
                        residual: g.re,
                    });
                }
                multiplicities.push(g.re);
            } else {
                gram_off = gram_off.max(g.norm());
            }
        }
    }
    if gram_off > tol {
        return Err(Error::ToleranceBreach {
            what: "Gram off-diagonal".into(),
            residual: gram_off,
        });
    }

    let mut regular = 0.0f64;
    let mut conjugation = 0.0f64;
    for b in 0..d {
        let sum: Complex64 = irreducibles
            .iter()
            .zip(&block_dims)
            .map(|(chi, &n)| chi.values[b] * n as f64)
            .sum();
        regular = regular.max((sum - fa.traces[b]).norm());
        for chi in &irreducibles {
            conjugation = conjugation.max((chi.values[alg.star(b)] - chi.values[b].conj()).norm());
        }
    }
    if regular > INTEGER_TOLERANCE {
        return Err(Error::ToleranceBreach {
            what: "regular trace identity".into(),
            residual: regular,
        });
    }

    Ok(CharacterTable {
        irreducibles,
        block_dims,
        multiplicities,
        tolerance: tol,
        center_dim: k,
        attempts,
        residuals: Residuals {
            idempotent,
            gram_off_diagonal: gram_off,
            regular_trace: regular,
            conjugation,
        },
    })
}

/// `[chi, phi] = |B+|^-1 sum_b chi(b) phi(b*) / |b|`.
pub fn dual_form(alg: &TableAlgebra, chi: &[Complex64], phi: &[Complex64]) -> Complex64 {
    let total = to_f64(&alg.total_degree());
    let s: Complex64 = (0..alg.dim())
        .map(|b| chi[b] * phi[alg.star(b)] / to_f64(alg.degree(b)))
        .sum();
    s / total
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// `[phi, chi_i] / m_i`.
    pub raw: Vec<Complex64>,
    /// Nearest integers to the real parts of `raw`.
    pub rounded: Vec<i64>,
    /// Whether `phi` lies in the span of the irreducible characters.
    pub in_span: bool,
    /// Residual of the least-squares solve `phi = sum a_i chi_i`.
    pub residual: f64,
    pub is_character: bool,
}

impl Decomposition {
    /// Indices with a positive coefficient.
    pub fn constituents(&self) -> Vec<usize> {
        self.raw
            .iter()
            .enumerate()
            .filter(|(_, a)| a.re > INTEGER_TOLERANCE)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Coefficients of `phi` over the irreducibles.
///
/// The dual-form coefficients are cross-checked against a least-squares solve
/// on the values. A class function outside the span of the irreducibles is
/// reported with `in_span = false` rather than as a mismatch.
pub fn decompose(
    alg: &TableAlgebra,
    table: &CharacterTable,
    phi: &[Complex64],
) -> Result<Decomposition> {
    let d = alg.dim();
    let k = table.len();
    let raw: Vec<Complex64> = table
        .irreducibles
        .iter()
        .zip(&table.multiplicities)
        .map(|(chi, m)| dual_form(alg, phi, &chi.values) / m)
        .collect();

    let a = DMatrix::<Complex64>::from_fn(d, k, |b, i| table.irreducibles[i].values[b]);
    let rhs = DVector::<Complex64>::from_column_slice(phi);
    let (solved, residual) = least_squares(&a, &rhs);
    let scale = max_norm(phi).max(1.0);
    let in_span = residual <= table.tolerance * scale * (d as f64).sqrt().max(1.0);
    if in_span {
        for i in 0..k {
            if (raw[i] - solved[i]).norm() > table.tolerance * scale.max(raw[i].norm()) {
                return Err(Error::CrossCheckMismatch {
                    index: i,
                    via_form: raw[i].to_string(),
                    via_solve: solved[i].to_string(),
                });
            }
        }
    }
    let rounded: Vec<i64> = raw.iter().map(|a| a.re.round() as i64).collect();
    let integral = raw.iter().zip(&rounded).all(|(a, &n)| {
        n >= 0 && (a.re - n as f64).abs() < INTEGER_TOLERANCE && a.im.abs() < INTEGER_TOLERANCE
    });
    let is_character = in_span && integral && rounded.iter().any(|&n| n > 0);
    Ok(Decomposition {
        raw,
        rounded,
        in_span,
        residual,
        is_character,
    })
}

/// `K(chi) = {b : chi(b) = |b| chi(1)}`, which must be closed.
pub fn kernel(alg: &TableAlgebra, chi: &[Complex64], tol: f64) -> Result<ClosedSubset> {
    let deg1 = chi[0];
    let members: Vec<usize> = (0..alg.dim())
        .filter(|&b| {
            let target = deg1 * to_f64(alg.degree(b));
            (chi[b] - target).norm() < tol * target.norm().max(1.0)
        })
        .collect();
    ClosedSubset::new(alg, &members).map_err(|_| Error::KernelNotClosed(members))
}

/// `chi(e)` for `e = |C+|^-1 C+`.
pub fn value_at_idempotent(alg: &TableAlgebra, chi: &[Complex64], c: &ClosedSubset) -> Complex64 {
    let s: Complex64 = c.indices().iter().map(|&i| chi[i]).sum();
    s / to_f64(&c.plus_degree(alg))
}

/// Lift a character of `A // C` to `A` by `b -> alpha_b psi(b / C)`.
///
/// For strongly normal `C` the scalars must equal the degrees; anything else
/// is reported as an internal inconsistency.
pub fn lift_character(
    alg: &TableAlgebra,
    pres: &QuotientPresentation,
    psi: &Character,
) -> Result<Character> {
    let Some(alphas) = &pres.alphas else {
        return Err(Error::NotNormal(pres.closed.indices().to_vec()));
    };
    if is_strongly_normal(alg, &pres.closed) {
        if let Some(b) = (0..alg.dim()).find(|&b| alphas[b] != *alg.degree(b)) {
            return Err(Error::InternalInconsistency(format!(
                "strongly normal subset with alpha_{b} = {} != |b| = {}",
                alphas[b],
                alg.degree(b)
            )));
        }
    }
    let values = (0..alg.dim())
        .map(|b| psi.values[pres.coset_of[b]] * to_f64(&alphas[b]))
        .collect();
    Ok(Character {
        values,
        block_degree: psi.block_degree,
        irreducible: psi.irreducible,
    })
}

#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    pub quotient_table: CharacterTable,
    pub lifts: Vec<Character>,
    /// `mapping[j]` is the irreducible of `A` matching the lift of the quotient's `j`-th.
    pub mapping: Vec<usize>,
    /// Irreducibles of `A` with `chi(e) = 0`.
    pub excluded: Vec<usize>,
    /// `chi_i(e)` for every irreducible of `A`.
    pub values_at_e: Vec<Complex64>,
}

/// Lift every irreducible of `A // C` and match it against `Irr(A)`.
///
/// The matching must be injective with image `{chi : chi(e) != 0}`.
pub fn embedding_check(
    alg: &TableAlgebra,
    table: &CharacterTable,
    c: &ClosedSubset,
    opts: TableOptions,
) -> Result<EmbeddingReport> {
    let pres = quotient(alg, c)?;
    if pres.alphas.is_none() {
        return Err(Error::NotNormal(c.indices().to_vec()));
    }
    let quotient_table = character_table(&pres.quotient, opts)?;
    let mut lifts = Vec::new();
    let mut mapping = Vec::new();
    for psi in &quotient_table.irreducibles {
        let lift = lift_character(alg, &pres, psi)?;
        let Some(i) = table.position(&lift.values, MATCH_TOLERANCE) else {
            return Err(Error::EmbeddingMismatch(format!(
                "lift {:?} matches no irreducible character",
                lift.values
            )));
        };
        if mapping.contains(&i) {
            return Err(Error::EmbeddingMismatch(format!(
                "two lifts match irreducible {i}"
            )));
        }
        mapping.push(i);
        lifts.push(lift);
    }
    let values_at_e: Vec<Complex64> = table
        .irreducibles
        .iter()
        .map(|chi| value_at_idempotent(alg, &chi.values, c))
        .collect();
    let mut excluded = Vec::new();
    for (i, v) in values_at_e.iter().enumerate() {
        let nonzero = v.norm() > opts.tol;
        if nonzero != mapping.contains(&i) {
            return Err(Error::EmbeddingMismatch(format!(
                "irreducible {i} has chi(e) = {v} but is {} the image",
                if nonzero { "outside" } else { "inside" }
            )));
        }
        if !nonzero {
            excluded.push(i);
        }
    }
    Ok(EmbeddingReport {
        quotient_table,
        lifts,
        mapping,
        excluded,
        values_at_e,
    })
}
