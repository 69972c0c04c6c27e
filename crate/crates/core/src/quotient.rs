//! Double cosets, the `alpha_b` scalars and quotient table algebras.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{
    validate, AlgebraElement, Rational, RawAlgebra, TableAlgebra, ValidateOptions,
};
use crate::error::{Error, Result};
use crate::subsets::{conjugate_inside, is_normal, ClosedSubset};

/// Blocks `Supp(C+ b C+)`, ordered by smallest member; the first block is `C`.
pub fn double_cosets(alg: &TableAlgebra, c: &ClosedSubset) -> Vec<Vec<usize>> {
    let plus = c.plus(alg);
    let mut assigned = vec![false; alg.dim()];
    let mut out = Vec::new();
    for b in 0..alg.dim() {
        if assigned[b] {
            continue;
        }
        let x = alg
            .multiply(&plus, &alg.basis(b))
            .and_then(|x| alg.multiply(&x, &plus))
            .expect("elements share the algebra");
        let block = alg.support(&x);
        for &i in &block {
            assigned[i] = true;
        }
        out.push(block);
    }
    out
}

/// The scalar with `C+ b = alpha_b (Cb)+`, where `Cb = Supp(C+ b)`.
///
/// Computed as `|C+| |b| / |(Cb)+|` and then checked against the full vector identity.
pub fn alpha(alg: &TableAlgebra, c: &ClosedSubset, b: usize) -> Result<Rational> {
    let left = alg.multiply(&c.plus(alg), &alg.basis(b))?;
    let coset = alg.support(&left);
    let coset_plus = AlgebraElement::sum_of(alg.dim(), &coset);
    let value = c.plus_degree(alg) * alg.degree(b) / alg.degree_of(&coset_plus);
    if coset_plus.scale(&value) != left {
        return Err(Error::AlphaIdentityFailed { b });
    }
    Ok(value)
}

#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    pub closed: ClosedSubset,
    pub cosets: Vec<Vec<usize>>,
    /// Smallest index of each coset; `reps[0] = 0`.
    pub reps: Vec<usize>,
    /// Coset number of every basis index.
    pub coset_of: Vec<usize>,
    /// `alpha_b` for every basis index, present when the closed subset is normal.
    pub alphas: Option<Vec<Rational>>,
    pub quotient: TableAlgebra,
}

/// Quotient `A // C` on the basis `b_i / C = |C+|^-1 (C b_i C)+`.
///
/// `gamma(i, j, k) = |C+|^-1 sum_{r in C b_i C, s in C b_j C} lambda(r, s, t)` with `t`
/// the representative of coset `k`; every other choice of `t` is recomputed and
/// must agree.
pub fn quotient(alg: &TableAlgebra, c: &ClosedSubset) -> Result<QuotientPresentation> {
    let cosets = double_cosets(alg, c);
    let k = cosets.len();
    let mut coset_of = vec![0; alg.dim()];
    for (n, block) in cosets.iter().enumerate() {
        for &i in block {
            coset_of[i] = n;
        }
    }
    let reps: Vec<usize> = cosets.iter().map(|b| b[0]).collect();
    let plus_degree = c.plus_degree(alg);
    let inv = Rational::one() / &plus_degree;

    // sums[(i, j)][t] = sum over r in coset i, s in coset j of lambda(r, s, t)
    let mut sums: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
    for (a, b, t, x) in alg.entries() {
        let entry = sums
            .entry((coset_of[*a], coset_of[*b]))
            .or_insert_with(|| vec![Rational::zero(); alg.dim()]);
        entry[*t] += x;
    }

    let mut entries = Vec::new();
    for ((i, j), per_t) in &sums {
        for (kk, block) in cosets.iter().enumerate() {
            let at_rep = &per_t[reps[kk]];
            for &t in &block[1..] {
                if per_t[t] != *at_rep {
                    return Err(Error::RepresentativeDependence {
                        i: *i,
                        j: *j,
                        k: kk,
                        t_rep: reps[kk],
                        t,
                        at_rep: (at_rep * &inv).to_string(),
                        at_t: (&per_t[t] * &inv).to_string(),
                    });
                }
            }
            if !at_rep.is_zero() {
                entries.push((*i, *j, kk, at_rep * &inv));
            }
        }
    }

    let degrees: Vec<Rational> = cosets
        .iter()
        .map(|block| block.iter().map(|&x| alg.degree(x)).sum::<Rational>() * &inv)
        .collect();
    let star: Vec<usize> = reps.iter().map(|&r| coset_of[alg.star(r)]).collect();
    let quotient = validate(
        RawAlgebra {
            dim: k,
            entries,
            star,
            degrees,
        },
        ValidateOptions {
            strict: true,
            seed: 0,
        },
    )?;

    let alphas = if is_normal(alg, c)? {
        Some(
            (0..alg.dim())
                .map(|b| alpha(alg, c, b))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };

    Ok(QuotientPresentation {
        closed: c.clone(),
        cosets,
        reps,
        coset_of,
        alphas,
        quotient,
    })
}

/// Basis elements whose coset has degree one.
///
/// Computed from quotient degrees and again as `{b : b* C b ⊆ C}`; the two
/// sets must coincide.
pub fn quotient_degree_one_set(alg: &TableAlgebra, c: &ClosedSubset) -> Result<Vec<usize>> {
    let pres = quotient(alg, c)?;
    let by_degree: Vec<usize> = (0..alg.dim())
        .filter(|&b| pres.quotient.degree(pres.coset_of[b]).is_one())
        .collect();
    let by_support: Vec<usize> = (0..alg.dim())
        .filter(|&b| conjugate_inside(alg, c, b))
        .collect();
    if by_degree != by_support {
        return Err(Error::DegreeOneMismatch {
            by_degree,
            by_support,
        });
    }
    Ok(by_degree)
}

/// Whether the algebra is a group algebra in its distinguished basis: all
/// degrees are one and each basis product is a single basis element.
pub fn is_group_table(alg: &TableAlgebra) -> bool {
    alg.degrees().iter().all(One::is_one)
        && (0..alg.dim())
            .all(|a| (0..alg.dim()).all(|b| matches!(alg.row(a, b), [(_, x)] if x.is_one())))
}
