//! Small named table algebras used by tests, the acceptance suite and the CLI.

use num_traits::One;

use crate::algebra::{rational, validate, Rational, RawAlgebra, TableAlgebra, ValidateOptions};
use crate::io::{group_algebra, scheme_algebra};

/// The commutative algebra on `r_0, ..., r_{q+1}` with
/// `r_i r_i = (q-1) r_0 + (q-2) r_i` and `r_i r_j = sum_{k != 0,i,j} r_k` for `i != j`.
///
/// Every `r_i` is symmetric of degree `q - 1`; `q = 2` is the Klein four-group.
pub fn q_example(q: usize) -> TableAlgebra {
    assert!(q >= 2, "q must be at least 2");
    let d = q + 2;
    let q_i = q as i64;
    let mut entries = Vec::new();
    for i in 0..d {
        entries.push((0, i, i, Rational::one()));
        if i > 0 {
            entries.push((i, 0, i, Rational::one()));
        }
    }
    for i in 1..d {
        for j in 1..d {
            if i == j {
                entries.push((i, i, 0, rational(q_i - 1)));
                if q > 2 {
                    entries.push((i, i, i, rational(q_i - 2)));
                }
            } else {
                for k in (1..d).filter(|&k| k != i && k != j) {
                    entries.push((i, j, k, Rational::one()));
                }
            }
        }
    }
    let mut degrees = vec![rational(q_i - 1); d];
    degrees[0] = Rational::one();
    validate(
        RawAlgebra {
            dim: d,
            entries,
            star: (0..d).collect(),
            degrees,
        },
        ValidateOptions::default(),
    )
    .expect("q-example satisfies the axioms")
}

pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|g| (0..n).map(|h| (g + h) % n).collect())
        .collect()
}

pub fn klein_four_table() -> Vec<Vec<usize>> {
    (0..4).map(|g| (0..4).map(|h| g ^ h).collect()).collect()
}

/// Elements of S3 as images of `(0, 1, 2)`, in the order
/// `e, (12), (13), (23), (123), (132)`; `A3 = {0, 4, 5}`.
pub const S3_ELEMENTS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
];

/// Cayley table of S3 with `(g h)(x) = g(h(x))`.
pub fn s3_table() -> Vec<Vec<usize>> {
    let index = |p: [usize; 3]| S3_ELEMENTS.iter().position(|&q| q == p).unwrap();
    S3_ELEMENTS
        .iter()
        .map(|g| {
            S3_ELEMENTS
                .iter()
                .map(|h| index([g[h[0]], g[h[1]], g[h[2]]]))
                .collect()
        })
        .collect()
}

/// Relation matrix of the pentagon: color 1 for adjacent points, 2 for distance two.
pub fn pentagon_colors() -> Vec<Vec<usize>> {
    (0..5)
        .map(|x: usize| {
            (0..5)
                .map(|y: usize| {
                    let dist = (x + 5 - y) % 5;
                    dist.min(5 - dist)
                })
                .collect()
        })
        .collect()
}

fn group(table: Vec<Vec<usize>>) -> TableAlgebra {
    group_algebra(&table, ValidateOptions::default()).expect("valid group table")
}

pub fn cyclic_group(n: usize) -> TableAlgebra {
    group(cyclic_table(n))
}

pub fn klein_four() -> TableAlgebra {
    group(klein_four_table())
}

pub fn s3() -> TableAlgebra {
    group(s3_table())
}

pub fn pentagon() -> TableAlgebra {
    scheme_algebra(&pentagon_colors(), ValidateOptions::default()).expect("pentagon is a scheme")
}

/// `{1, b}` with `b^2 = 2 + b` and `|b| = 2`, the quotient of `q_example(3)` by `{r_0, r_1}`.
pub fn rank_two() -> TableAlgebra {
    validate(
        RawAlgebra {
            dim: 2,
            entries: vec![
                (0, 0, 0, rational(1)),
                (0, 1, 1, rational(1)),
                (1, 0, 1, rational(1)),
                (1, 1, 0, rational(2)),
                (1, 1, 1, rational(1)),
            ],
            star: vec![0, 1],
            degrees: vec![rational(1), rational(2)],
        },
        ValidateOptions::default(),
    )
    .expect("rank-two algebra satisfies the axioms")
}

/// The named algebras every corpus-wide check runs over.
pub fn all() -> Vec<(String, TableAlgebra)> {
    let mut out = vec![
        ("Z2".to_string(), cyclic_group(2)),
        ("Klein4".to_string(), klein_four()),
        ("S3".to_string(), s3()),
        ("Z4".to_string(), cyclic_group(4)),
        ("pentagon".to_string(), pentagon()),
    ];
    for q in 2..=5 {
        out.push((format!("q{q}"), q_example(q)));
    }
    out
}
