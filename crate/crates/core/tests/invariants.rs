//! Corpus-wide structural checks against independently computed values.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use tba::algebra::{Rational, TableAlgebra};
use tba::characters::{
    character_table, decompose, dual_form, embedding_check, kernel, max_distance,
    value_at_idempotent, TableOptions,
};
use tba::products::{burnside_brauer, faithful_candidates, power, product};
use tba::quotient::{is_group_table, quotient, quotient_degree_one_set};
use tba::subsets::{
    enumerate_closed_subsets, is_normal, is_strongly_normal, ClosedSubset, DEFAULT_ENUMERATION_CAP,
};
use tba::{corpus, Character};

const EPS: f64 = 1e-8;

/// Dense `lambda[a][b][c]`.
fn dense(alg: &TableAlgebra) -> Vec<Vec<Vec<Rational>>> {
    let d = alg.dim();
    let mut t = vec![vec![vec![Rational::zero(); d]; d]; d];
    for (a, b, c, x) in alg.entries() {
        t[*a][*b][*c] = x.clone();
    }
    t
}

fn closed_pairs() -> Vec<(String, TableAlgebra, ClosedSubset)> {
    let mut out = Vec::new();
    for (name, alg) in corpus::all() {
        for c in enumerate_closed_subsets(&alg, DEFAULT_ENUMERATION_CAP).unwrap() {
            out.push((name.clone(), alg.clone(), c));
        }
    }
    out
}

#[test]
fn associativity_from_dense_tensor() {
    for (name, alg) in corpus::all() {
        let t = dense(&alg);
        let d = alg.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        let mut left = Rational::zero();
                        let mut right = Rational::zero();
                        for r in 0..d {
                            left += &t[a][b][r] * &t[r][c][e];
                            right += &t[b][c][r] * &t[a][r][e];
                        }
                        assert_eq!(left, right, "{name} ({a},{b},{c}) at {e}");
                    }
                }
            }
        }
    }
}

#[test]
fn degree_map_is_multiplicative() {
    for (name, alg) in corpus::all() {
        let t = dense(&alg);
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let s: Rational = (0..alg.dim()).map(|c| &t[a][b][c] * alg.degree(c)).sum();
                assert_eq!(s, alg.degree(a) * alg.degree(b), "{name}");
                assert!(t[a][b].iter().all(|x| *x >= Rational::zero()));
            }
        }
    }
}

#[test]
fn normality_is_centrality_of_the_idempotent() {
    for (name, alg, c) in closed_pairs() {
        let e = c.idempotent(&alg);
        let central = (0..alg.dim()).all(|b| {
            let x = alg.basis(b);
            alg.multiply(&e, &x).unwrap() == alg.multiply(&x, &e).unwrap()
        });
        assert_eq!(
            is_normal(&alg, &c).unwrap(),
            central,
            "{name} {:?}",
            c.indices()
        );
    }
}

#[test]
fn degree_one_cosets_are_conjugation_stable() {
    for (name, alg, c) in closed_pairs() {
        let pres = quotient(&alg, &c).unwrap();
        let expected: Vec<usize> = (0..alg.dim())
            .filter(|&b| {
                let bs = alg.basis(alg.star(b));
                let x = alg
                    .multiply(&alg.multiply(&bs, &c.plus(&alg)).unwrap(), &alg.basis(b))
                    .unwrap();
                alg.support(&x).iter().all(|&i| c.contains(i))
            })
            .collect();
        let by_degree: Vec<usize> = (0..alg.dim())
            .filter(|&b| pres.quotient.degree(pres.coset_of[b]).is_one())
            .collect();
        assert_eq!(by_degree, expected, "{name} {:?}", c.indices());
        assert_eq!(quotient_degree_one_set(&alg, &c).unwrap(), expected);
    }
}

#[test]
fn strongly_normal_exactly_when_quotient_is_a_group() {
    for (name, alg, c) in closed_pairs() {
        let pres = quotient(&alg, &c).unwrap();
        let strong = is_strongly_normal(&alg, &c);
        assert_eq!(
            strong,
            is_group_table(&pres.quotient),
            "{name} {:?}",
            c.indices()
        );
        if strong {
            assert!(is_normal(&alg, &c).unwrap());
            assert_eq!(pres.alphas.as_deref(), Some(alg.degrees()), "{name}");
        }
    }
}

#[test]
fn quotient_constants_match_direct_sums() {
    // gamma(i, j, k) |C+| (C b_k C)+ coefficient at each t of coset k.
    for (name, alg, c) in closed_pairs() {
        let pres = quotient(&alg, &c).unwrap();
        let t = dense(&alg);
        let cp = c.plus_degree(&alg);
        for (i, ci) in pres.cosets.iter().enumerate() {
            for (j, cj) in pres.cosets.iter().enumerate() {
                for (k, ck) in pres.cosets.iter().enumerate() {
                    for &target in ck {
                        let mut s = Rational::zero();
                        for &r in ci {
                            for &u in cj {
                                s += &t[r][u][target];
                            }
                        }
                        assert_eq!(s / &cp, pres.quotient.lambda(i, j, k), "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn character_table_contracts() {
    for (name, alg) in corpus::all() {
        let table = character_table(&alg, TableOptions::default()).unwrap();
        let dims: usize = table.block_dims.iter().map(|n| n * n).sum();
        assert_eq!(dims, alg.dim(), "{name}");
        for (i, chi) in table.irreducibles.iter().enumerate() {
            for (j, psi) in table.irreducibles.iter().enumerate() {
                let g = dual_form(&alg, &chi.values, &psi.values);
                if i == j {
                    assert!(g.re > EPS && g.im.abs() < EPS, "{name} m_{i} = {g}");
                } else {
                    assert!(g.norm() < EPS, "{name} [{i},{j}] = {g}");
                }
            }
        }
        // trace of the left regular action of b against sum_i n_i chi_i(b)
        for b in 0..alg.dim() {
            let m = alg.regular_matrix(&alg.basis(b));
            let tr: Rational = (0..alg.dim()).map(|c| m[c][c].clone()).sum();
            let tr = tr.to_f64().unwrap();
            let sum: Complex64 = table
                .irreducibles
                .iter()
                .zip(&table.block_dims)
                .map(|(chi, n)| chi.values[b] * *n as f64)
                .sum();
            assert!((sum - tr).norm() < EPS, "{name} b={b}");
        }
        assert!(table.degree_map_index(&alg).is_some());
    }
}

#[test]
fn character_table_is_seed_independent() {
    for (name, alg) in corpus::all() {
        let base = character_table(&alg, TableOptions::default()).unwrap();
        for seed in 1..4 {
            let other = character_table(
                &alg,
                TableOptions {
                    seed,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(base.block_dims, other.block_dims, "{name}");
            for (a, b) in base.irreducibles.iter().zip(&other.irreducibles) {
                assert!(
                    max_distance(&a.values, &b.values) < 1e-9,
                    "{name} seed {seed}"
                );
            }
        }
    }
}

#[test]
fn kernels_are_closed() {
    for (name, alg) in corpus::all() {
        let table = character_table(&alg, TableOptions::default()).unwrap();
        for chi in &table.irreducibles {
            let k = kernel(&alg, &chi.values, EPS).unwrap();
            assert!(k.contains(0), "{name}");
        }
    }
}

#[test]
fn products_are_commutative_associative_and_unital() {
    for (name, alg) in corpus::all() {
        let table = character_table(&alg, TableOptions::default()).unwrap();
        let deg = Character::degree_map(&alg).values;
        let irr = &table.irreducibles;
        for x in irr {
            assert!(max_distance(&product(&alg, &x.values, &deg), &x.values) < 1e-12);
            for y in irr {
                let xy = product(&alg, &x.values, &y.values);
                assert!(
                    max_distance(&xy, &product(&alg, &y.values, &x.values)) < 1e-12,
                    "{name}"
                );
                for z in irr {
                    let l = product(&alg, &xy, &z.values);
                    let r = product(&alg, &x.values, &product(&alg, &y.values, &z.values));
                    assert!(max_distance(&l, &r) < EPS, "{name}");
                }
            }
            for i in 0..6u32 {
                let next = power(&alg, &x.values, i + 1);
                let via = product(&alg, &power(&alg, &x.values, i), &x.values);
                assert!(max_distance(&next, &via) < 1e-6, "{name} power {i}");
            }
        }
    }
}

#[test]
fn products_through_strongly_normal_subsets_are_characters() {
    let mut checked = 0;
    for (name, alg) in corpus::all() {
        let table = character_table(&alg, TableOptions::default()).unwrap();
        for c in enumerate_closed_subsets(&alg, DEFAULT_ENUMERATION_CAP).unwrap() {
            if !is_strongly_normal(&alg, &c) {
                continue;
            }
            for chi in &table.irreducibles {
                let at_e = value_at_idempotent(&alg, &chi.values, &c);
                if at_e.norm() <= EPS {
                    continue;
                }
                let linear = (at_e - 1.0).norm() < 1e-6 && (chi.values[0] - 1.0).norm() < 1e-6;
                for psi in &table.irreducibles {
                    let dec =
                        decompose(&alg, &table, &product(&alg, &chi.values, &psi.values)).unwrap();
                    assert!(dec.is_character, "{name} {:?}", c.indices());
                    if linear {
                        assert_eq!(dec.constituents().len(), 1, "{name}");
                        assert_eq!(dec.rounded.iter().sum::<i64>(), 1, "{name}");
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn embeddings_for_every_normal_subset() {
    for (name, alg) in corpus::all() {
        let table = character_table(&alg, TableOptions::default()).unwrap();
        for c in enumerate_closed_subsets(&alg, DEFAULT_ENUMERATION_CAP).unwrap() {
            if !is_normal(&alg, &c).unwrap() {
                continue;
            }
            let rep = embedding_check(&alg, &table, &c, TableOptions::default()).unwrap();
            let nonzero = table
                .irreducibles
                .iter()
                .filter(|chi| value_at_idempotent(&alg, &chi.values, &c).norm() > EPS)
                .count();
            assert_eq!(rep.lifts.len(), nonzero, "{name} {:?}", c.indices());
        }
    }
}

#[test]
fn burnside_brauer_holds_on_faithful_candidates() {
    let mut applicable = 0;
    for (name, alg) in corpus::all() {
        let table = character_table(&alg, TableOptions::default()).unwrap();
        for (label, chi) in faithful_candidates(&alg, &table) {
            match burnside_brauer(&alg, &table, &chi.values) {
                Ok(rep) => {
                    applicable += 1;
                    assert!(rep.verdict, "{name} {label}");
                    assert!(rep.beta_identity_residual < 1e-6, "{name} {label}");
                    assert!(!rep.vandermonde_near_zero, "{name} {label}");
                }
                Err(tba::Error::HypothesisFailed(rep)) => assert!(!rep.hypotheses_hold()),
                Err(e) => panic!("{name} {label}: {e}"),
            }
        }
    }
    assert!(applicable > 0);
}
