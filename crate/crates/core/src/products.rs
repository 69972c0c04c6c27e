//! Character products `(chi psi)(b) = chi(b) psi(b) / |b|`, powers, and the
//! Burnside-Brauer constituent check.

use num_complex::Complex64;

use crate::algebra::{to_f64, TableAlgebra};
use crate::characters::{
    decompose, dual_form, kernel, Character, CharacterTable, Decomposition, INTEGER_TOLERANCE,
};
use crate::error::{Error, Result};

/// Absolute tolerance used to cluster the values `chi(b) / |b|`.
pub const VALUE_TOLERANCE: f64 = 1e-6;

/// Recorded in every report: the zeroth power is the product identity.
pub const ZERO_POWER_CONVENTION: &str =
    "chi^0 is the degree map b -> |b|, the identity of the character product";

pub fn product(alg: &TableAlgebra, chi: &[Complex64], psi: &[Complex64]) -> Vec<Complex64> {
    (0..alg.dim())
        .map(|b| chi[b] * psi[b] / to_f64(alg.degree(b)))
        .collect()
}

/// `chi^i(b) = chi(b)^i / |b|^(i-1)`, with `chi^0` the degree map.
pub fn power(alg: &TableAlgebra, chi: &[Complex64], i: u32) -> Vec<Complex64> {
    (0..alg.dim())
        .map(|b| {
            let deg = to_f64(alg.degree(b));
            if i == 0 {
                Complex64::new(deg, 0.0)
            } else {
                chi[b].powu(i) / deg.powi(i as i32 - 1)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistinctValues {
    /// `alpha_1 = chi(1)` first, the rest by real then imaginary part.
    pub values: Vec<Complex64>,
    /// `classes[t]` lists the basis indices with `chi(b) / |b| = values[t]`.
    pub classes: Vec<Vec<usize>>,
}

impl DistinctValues {
    pub fn k(&self) -> usize {
        self.values.len()
    }
}

pub fn distinct_values(alg: &TableAlgebra, chi: &[Complex64]) -> DistinctValues {
    let mut values: Vec<Complex64> = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for b in 0..alg.dim() {
        let v = chi[b] / to_f64(alg.degree(b));
        match values.iter().position(|w| (w - v).norm() < VALUE_TOLERANCE) {
            Some(t) => classes[t].push(b),
            None => {
                values.push(v);
                classes.push(vec![b]);
            }
        }
    }
    let mut rest: Vec<(Complex64, Vec<usize>)> = values.into_iter().zip(classes).skip(1).collect();
    rest.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    let first = chi[0];
    let mut values = vec![first];
    let mut classes = vec![(0..alg.dim())
        .filter(|&b| (chi[b] / to_f64(alg.degree(b)) - first).norm() < VALUE_TOLERANCE)
        .collect::<Vec<_>>()];
    for (v, c) in rest {
        values.push(v);
        classes.push(c);
    }
    DistinctValues { values, classes }
}

#[derive(Debug, Clone)]
pub struct BbReport {
    pub k: usize,
    pub distinct: DistinctValues,
    pub kernel: Vec<usize>,
    /// `K(chi) = {1}`.
    pub hypothesis_kernel_ok: bool,
    /// `chi^i` is a character for `1 <= i <= k - 1`.
    pub hypothesis_powers_ok: bool,
    /// Powers `i >= 1` whose decomposition is not a character.
    pub failed_powers: Vec<usize>,
    /// Decomposition of `chi^i` for `0 <= i <= k - 1`.
    pub power_decompositions: Vec<Decomposition>,
    /// Smallest power containing each irreducible, if any.
    pub coverage: Vec<Option<usize>>,
    pub verdict: bool,
    /// `betas[psi][t] = sum_{b in B_t} psi(b*)`.
    pub betas: Vec<Vec<Complex64>>,
    /// `prod_{i<j} (alpha_i - alpha_j)`.
    pub vandermonde: Complex64,
    pub vandermonde_near_zero: bool,
    /// `max |[chi^j, psi] - |B+|^-1 sum_t alpha_t^j beta_t|` over `j` and `psi`.
    pub beta_identity_residual: f64,
    /// Decomposition of the regular character, the other reading of `chi^0`.
    pub regular_zero_power: Decomposition,
    pub convention: &'static str,
}

impl BbReport {
    pub fn failed_hypotheses(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.hypothesis_kernel_ok {
            out.push(format!("kernel {:?} is not {{0}}", self.kernel));
        }
        if !self.hypothesis_powers_ok {
            out.push(format!(
                "powers {:?} are not characters",
                self.failed_powers
            ));
        }
        out
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_kernel_ok && self.hypothesis_powers_ok
    }
}

/// Check that every irreducible is a constituent of some `chi^i`, `0 <= i <= k - 1`.
///
/// Fails with [`Error::HypothesisFailed`] when `K(chi) != {1}` or a power is not
/// a character; the boxed report still carries all decompositions and coverage.
pub fn burnside_brauer(
    alg: &TableAlgebra,
    table: &CharacterTable,
    chi: &[Complex64],
) -> Result<BbReport> {
    let distinct = distinct_values(alg, chi);
    let k = distinct.k();
    let kernel = match kernel(alg, chi, table.tolerance) {
        Ok(c) => c.indices().to_vec(),
        Err(Error::KernelNotClosed(members)) => members,
        Err(e) => return Err(e),
    };
    let hypothesis_kernel_ok = kernel == [0];

    let mut power_decompositions = Vec::with_capacity(k);
    let mut failed_powers = Vec::new();
    for i in 0..k {
        let dec = decompose(alg, table, &power(alg, chi, i as u32))?;
        if i >= 1 && !dec.is_character {
            failed_powers.push(i);
        }
        power_decompositions.push(dec);
    }
    let hypothesis_powers_ok = failed_powers.is_empty();

    let coverage: Vec<Option<usize>> = (0..table.len())
        .map(|j| {
            power_decompositions
                .iter()
                .position(|dec| dec.raw[j].re > INTEGER_TOLERANCE)
        })
        .collect();
    let verdict = coverage.iter().all(Option::is_some);

    let total = to_f64(&alg.total_degree());
    let betas: Vec<Vec<Complex64>> = table
        .irreducibles
        .iter()
        .map(|psi| {
            distinct
                .classes
                .iter()
                .map(|class| class.iter().map(|&b| psi.values[alg.star(b)]).sum())
                .collect()
        })
        .collect();
    let mut beta_identity_residual = 0.0f64;
    for (psi, beta) in table.irreducibles.iter().zip(&betas) {
        for j in 0..k {
            let direct = dual_form(alg, &power(alg, chi, j as u32), &psi.values);
            let via: Complex64 = distinct
                .values
                .iter()
                .zip(beta)
                .map(|(a, b)| a.powu(j as u32) * b)
                .sum::<Complex64>()
                / total;
            beta_identity_residual = beta_identity_residual.max((direct - via).norm());
        }
    }
    let mut vandermonde = Complex64::new(1.0, 0.0);
    for i in 0..k {
        for j in i + 1..k {
            vandermonde *= distinct.values[i] - distinct.values[j];
        }
    }
    let vandermonde_near_zero = vandermonde.norm() < VALUE_TOLERANCE;

    let regular: Vec<Complex64> = (0..alg.dim())
        .map(|b| Complex64::new(to_f64(&alg.regular_trace(b)), 0.0))
        .collect();
    let regular_zero_power = decompose(alg, table, &regular)?;

    let report = BbReport {
        k,
        distinct,
        kernel,
        hypothesis_kernel_ok,
        hypothesis_powers_ok,
        failed_powers,
        power_decompositions,
        coverage,
        verdict,
        betas,
        vandermonde,
        vandermonde_near_zero,
        beta_identity_residual,
        regular_zero_power,
        convention: ZERO_POWER_CONVENTION,
    };
    if report.hypotheses_hold() {
        Ok(report)
    } else {
        Err(Error::HypothesisFailed(Box::new(report)))
    }
}

/// Characters with trivial kernel among the irreducibles and the sums
/// `a chi_i + b chi_j` with coefficients at most 2.
pub fn faithful_candidates(alg: &TableAlgebra, table: &CharacterTable) -> Vec<(String, Character)> {
    let irr = &table.irreducibles;
    let mut candidates: Vec<(String, Character)> = Vec::new();
    for (i, chi) in irr.iter().enumerate() {
        candidates.push((format!("chi{i}"), chi.clone()));
        candidates.push((format!("2*chi{i}"), chi.sum(chi)));
        for (j, psi) in irr.iter().enumerate().skip(i + 1) {
            for a in 1..=2u32 {
                for b in 1..=2u32 {
                    let values = chi
                        .values
                        .iter()
                        .zip(&psi.values)
                        .map(|(x, y)| x * a as f64 + y * b as f64)
                        .collect();
                    let label = match (a, b) {
                        (1, 1) => format!("chi{i}+chi{j}"),
                        _ => format!("{a}*chi{i}+{b}*chi{j}"),
                    };
                    candidates.push((label, Character::from_values(values)));
                }
            }
        }
    }
    candidates
        .into_iter()
        .filter(
            |(_, c)| matches!(kernel(alg, &c.values, table.tolerance), Ok(k) if k.indices() == [0]),
        )
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{character_table, max_distance, TableOptions};
    use crate::corpus;

    fn reals(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn degree_map_is_product_identity() {
        for (_, alg) in corpus::all() {
            let t = character_table(&alg, TableOptions::default()).unwrap();
            let deg = Character::degree_map(&alg);
            for chi in &t.irreducibles {
                assert!(
                    max_distance(&product(&alg, &chi.values, &deg.values), &chi.values) < 1e-12
                );
            }
        }
    }

    #[test]
    fn s3_standard_square() {
        let alg = corpus::s3();
        let t = character_table(&alg, TableOptions::default()).unwrap();
        let std = &t.irreducibles[2].values;
        let sq = product(&alg, std, std);
        assert!(max_distance(&sq, &reals(&[4.0, 0.0, 0.0, 0.0, 1.0, 1.0])) < 1e-9);
        assert_eq!(power(&alg, std, 2), sq);
        let dec = decompose(&alg, &t, &sq).unwrap();
        assert_eq!(dec.rounded, vec![1, 1, 1]);
        assert!(dec.is_character);
    }

    #[test]
    fn rank_two_square_is_not_a_character() {
        let alg = corpus::rank_two();
        let t = character_table(&alg, TableOptions::default()).unwrap();
        let chi2 = &t.irreducibles[1].values;
        let sq = power(&alg, chi2, 2);
        assert!(max_distance(&sq, &reals(&[1.0, 0.5])) < 1e-12);
        assert!(!decompose(&alg, &t, &sq).unwrap().is_character);
    }

    #[test]
    fn zeroth_and_first_power() {
        let alg = corpus::q_example(4);
        let t = character_table(&alg, TableOptions::default()).unwrap();
        let chi = &t.irreducibles[3].values;
        assert_eq!(power(&alg, chi, 0), Character::degree_map(&alg).values);
        assert!(max_distance(&power(&alg, chi, 1), chi) < 1e-15);
    }

    #[test]
    fn distinct_value_examples() {
        let s3 = corpus::s3();
        let deg = Character::degree_map(&s3);
        assert_eq!(distinct_values(&s3, &deg.values).k(), 1);
        let t = character_table(&s3, TableOptions::default()).unwrap();
        let dv = distinct_values(&s3, &t.irreducibles[2].values);
        assert_eq!(dv.k(), 3);
        assert!(max_distance(&dv.values, &reals(&[2.0, -1.0, 0.0])) < 1e-9);
        assert_eq!(dv.classes, vec![vec![0], vec![4, 5], vec![1, 2, 3]]);

        let k4 = corpus::klein_four();
        let t = character_table(&k4, TableOptions::default()).unwrap();
        let chi = t.irreducibles[1].sum(&t.irreducibles[2]);
        let dv = distinct_values(&k4, &chi.values);
        assert!(max_distance(&dv.values, &reals(&[2.0, -2.0, 0.0])) < 1e-9);
    }

    #[test]
    fn bb_s3_standard() {
        let alg = corpus::s3();
        let t = character_table(&alg, TableOptions::default()).unwrap();
        let rep = burnside_brauer(&alg, &t, &t.irreducibles[2].values).unwrap();
        assert_eq!(rep.k, 3);
        assert_eq!(rep.coverage, vec![Some(0), Some(2), Some(1)]);
        assert!(rep.verdict);
        assert!(!rep.vandermonde_near_zero);
        assert!(rep.beta_identity_residual < 1e-9);
        assert_eq!(rep.regular_zero_power.rounded, vec![1, 1, 2]);
    }

    #[test]
    fn bb_degree_map_fails_kernel() {
        let alg = corpus::q_example(3);
        let t = character_table(&alg, TableOptions::default()).unwrap();
        let deg = Character::degree_map(&alg);
        match burnside_brauer(&alg, &t, &deg.values) {
            Err(Error::HypothesisFailed(rep)) => {
                assert!(!rep.hypothesis_kernel_ok);
                assert_eq!(rep.kernel.len(), alg.dim());
                assert_eq!(rep.k, 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn faithful_search_finds_standard() {
        let alg = corpus::s3();
        let t = character_table(&alg, TableOptions::default()).unwrap();
        let found = faithful_candidates(&alg, &t);
        assert!(found.iter().any(|(l, _)| l == "chi2"));
        assert!(found.iter().all(|(l, _)| l != "chi0" && l != "chi1"));
    }
}
