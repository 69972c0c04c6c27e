//! Closed subsets and the normality tests.

use std::collections::{BTreeSet, HashSet};

use crate::algebra::{AlgebraElement, Rational, TableAlgebra};
use crate::error::{Error, Result};

/// Default cap on the number of candidate subsets examined by
/// [`enumerate_closed_subsets`].
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A set of basis indices `C` containing 0 with `Supp(a* b) ⊆ C` for all `a, b ∈ C`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedSubset {
    indices: Vec<usize>,
}

impl ClosedSubset {
    /// Checks closedness; the indices may be given in any order.
    pub fn new(alg: &TableAlgebra, indices: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = indices.iter().copied().collect();
        if set.iter().any(|&i| i >= alg.dim()) {
            return Err(Error::NotClosed(set.into_iter().collect()));
        }
        let indices: Vec<usize> = set.into_iter().collect();
        if indices.first() != Some(&0) || !is_closed(alg, &indices) {
            return Err(Error::NotClosed(indices));
        }
        Ok(Self { indices })
    }

    pub fn whole(alg: &TableAlgebra) -> Self {
        Self {
            indices: (0..alg.dim()).collect(),
        }
    }

    pub fn trivial() -> Self {
        Self { indices: vec![0] }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// `C+`, the sum of the members.
    pub fn plus(&self, alg: &TableAlgebra) -> AlgebraElement {
        AlgebraElement::sum_of(alg.dim(), &self.indices)
    }

    /// `|C+|`.
    pub fn plus_degree(&self, alg: &TableAlgebra) -> Rational {
        self.indices.iter().map(|&i| alg.degree(i)).sum()
    }

    /// The idempotent `e = |C+|^-1 C+`.
    pub fn idempotent(&self, alg: &TableAlgebra) -> AlgebraElement {
        let inv = Rational::from_integer(1.into()) / self.plus_degree(alg);
        self.plus(alg).scale(&inv)
    }
}

/// Support of `b_a * b_b`.
fn product_support(alg: &TableAlgebra, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
    alg.row(a, b).iter().map(|(c, _)| *c)
}

fn is_closed(alg: &TableAlgebra, indices: &[usize]) -> bool {
    let set: HashSet<usize> = indices.iter().copied().collect();
    indices.iter().all(|&a| {
        indices
            .iter()
            .all(|&b| product_support(alg, alg.star(a), b).all(|c| set.contains(&c)))
    })
}

/// Smallest closed subset containing `seed`.
pub fn closure(alg: &TableAlgebra, seed: &[usize]) -> ClosedSubset {
    let mut set: BTreeSet<usize> = seed.iter().copied().filter(|&i| i < alg.dim()).collect();
    set.insert(0);
    loop {
        let current: Vec<usize> = set.iter().copied().collect();
        let before = set.len();
        for &a in &current {
            for &b in &current {
                set.extend(product_support(alg, alg.star(a), b));
            }
        }
        if set.len() == before {
            return ClosedSubset { indices: current };
        }
    }
}

/// All closed subsets, ordered by size and then lexicographically.
///
/// Starts from the closures of singletons and closes unions of pairs of known
/// subsets until nothing new appears.
pub fn enumerate_closed_subsets(alg: &TableAlgebra, cap: usize) -> Result<Vec<ClosedSubset>> {
    let mut found: BTreeSet<ClosedSubset> = BTreeSet::new();
    let mut frontier: Vec<ClosedSubset> = Vec::new();
    for i in 0..alg.dim() {
        let c = closure(alg, &[i]);
        if found.insert(c.clone()) {
            frontier.push(c);
        }
    }
    let mut examined = 0usize;
    while !frontier.is_empty() {
        let known: Vec<ClosedSubset> = found.iter().cloned().collect();
        let mut next = Vec::new();
        for f in &frontier {
            for k in &known {
                examined += 1;
                if examined > cap {
                    return Err(Error::SizeLimitExceeded { cap });
                }
                if k.indices.iter().all(|i| f.contains(*i))
                    || f.indices.iter().all(|i| k.contains(*i))
                {
                    continue;
                }
                let union: Vec<usize> = f.indices.iter().chain(&k.indices).copied().collect();
                let c = closure(alg, &union);
                if found.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<ClosedSubset> = found.into_iter().collect();
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.indices.cmp(&b.indices))
    });
    Ok(out)
}

/// `bC = Cb` for every basis element `b`.
///
/// Also decides whether `e = |C+|^-1 C+` is central, and fails with
/// [`Error::InternalInconsistency`] if the two answers differ.
pub fn is_normal(alg: &TableAlgebra, c: &ClosedSubset) -> Result<bool> {
    let plus = c.plus(alg);
    let mut by_support = true;
    let mut central = true;
    for b in 0..alg.dim() {
        let bb = alg.basis(b);
        let left = alg.multiply(&plus, &bb)?;
        let right = alg.multiply(&bb, &plus)?;
        if alg.support(&left) != alg.support(&right) {
            by_support = false;
        }
        if left != right {
            central = false;
        }
    }
    if by_support != central {
        return Err(Error::InternalInconsistency(format!(
            "closed subset {:?}: bC = Cb is {by_support} but centrality of e is {central}",
            c.indices
        )));
    }
    Ok(by_support)
}

/// `Supp(b* C+ b) ⊆ C` for every basis element `b`.
pub fn is_strongly_normal(alg: &TableAlgebra, c: &ClosedSubset) -> bool {
    (0..alg.dim()).all(|b| conjugate_inside(alg, c, b))
}

/// Whether `b* C b ⊆ C` for a single `b`.
pub fn conjugate_inside(alg: &TableAlgebra, c: &ClosedSubset, b: usize) -> bool {
    let plus = c.plus(alg);
    let left = alg
        .multiply(&alg.basis(alg.star(b)), &plus)
        .and_then(|x| alg.multiply(&x, &alg.basis(b)))
        .expect("elements share the algebra");
    alg.support(&left).into_iter().all(|i| c.contains(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn idx(c: &ClosedSubset) -> Vec<usize> {
        c.indices().to_vec()
    }

    #[test]
    fn closure_examples() {
        let alg = corpus::q_example(3);
        assert_eq!(idx(&closure(&alg, &[0])), vec![0]);
        assert_eq!(idx(&closure(&alg, &[1])), vec![0, 1]);
        assert_eq!(idx(&closure(&alg, &[1, 2])), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn enumeration_counts() {
        let one = crate::corpus::rank_two();
        assert_eq!(
            enumerate_closed_subsets(&one, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .len(),
            2
        );
        let k4 = enumerate_closed_subsets(&corpus::klein_four(), DEFAULT_ENUMERATION_CAP).unwrap();
        let got: Vec<Vec<usize>> = k4.iter().map(idx).collect();
        assert_eq!(
            got,
            vec![
                vec![0],
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![0, 1, 2, 3]
            ]
        );
        let s3 = enumerate_closed_subsets(&corpus::s3(), DEFAULT_ENUMERATION_CAP).unwrap();
        let got: Vec<Vec<usize>> = s3.iter().map(idx).collect();
        assert_eq!(
            got,
            vec![
                vec![0],
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![0, 4, 5],
                (0..6).collect()
            ]
        );
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_closed_subsets(&corpus::s3(), 3),
            Err(Error::SizeLimitExceeded { cap: 3 })
        ));
    }

    #[test]
    fn identity_only_algebra_has_one_subset() {
        let raw = crate::algebra::RawAlgebra {
            dim: 1,
            entries: vec![(0, 0, 0, crate::algebra::rational(1))],
            star: vec![0],
            degrees: vec![crate::algebra::rational(1)],
        };
        let alg = crate::algebra::validate(raw, Default::default()).unwrap();
        let all = enumerate_closed_subsets(&alg, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(all, vec![ClosedSubset::trivial()]);
    }

    #[test]
    fn new_rejects_open_sets() {
        let alg = corpus::s3();
        assert!(matches!(
            ClosedSubset::new(&alg, &[0, 4]),
            Err(Error::NotClosed(_))
        ));
        assert!(matches!(
            ClosedSubset::new(&alg, &[1]),
            Err(Error::NotClosed(_))
        ));
        assert!(ClosedSubset::new(&alg, &[5, 4, 0]).is_ok());
    }

    #[test]
    fn normality_examples() {
        let q3 = corpus::q_example(3);
        let c = ClosedSubset::new(&q3, &[0, 1]).unwrap();
        assert!(is_normal(&q3, &c).unwrap());
        assert!(!is_strongly_normal(&q3, &c));
        assert!(is_normal(&q3, &ClosedSubset::trivial()).unwrap());
        assert!(is_strongly_normal(&q3, &ClosedSubset::whole(&q3)));

        let s3 = corpus::s3();
        let h = ClosedSubset::new(&s3, &[0, 1]).unwrap();
        assert!(!is_normal(&s3, &h).unwrap());
        let a3 = ClosedSubset::new(&s3, &[0, 4, 5]).unwrap();
        assert!(is_normal(&s3, &a3).unwrap());
        assert!(is_strongly_normal(&s3, &a3));
    }

    #[test]
    fn q2_subsets_are_strongly_normal() {
        // At q = 2 the example degenerates to the Klein four-group.
        let q2 = corpus::q_example(2);
        for c in enumerate_closed_subsets(&q2, DEFAULT_ENUMERATION_CAP).unwrap() {
            assert!(is_strongly_normal(&q2, &c));
        }
    }

    #[test]
    fn q_example_pairs_normal_not_strongly_normal() {
        for q in 3..=5 {
            let alg = corpus::q_example(q);
            for i in 1..alg.dim() {
                let c = ClosedSubset::new(&alg, &[0, i]).unwrap();
                assert!(is_normal(&alg, &c).unwrap());
                assert!(!is_strongly_normal(&alg, &c), "q={q} i={i}");
            }
        }
    }
}
