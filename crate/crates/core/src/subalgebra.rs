//! Membership in the subalgebra generated by a few Laurent polynomials.
//!
//! Words are enumerated by length; each word is expanded exactly and the
//! target is matched monomial by monomial. A reduction modulo p locates a
//! small solution support, which is then solved exactly and certified by
//! re-expanding the combination.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::{Field, Modular};
use crate::linalg;
use crate::scalar::ScalarK;
use crate::skew_laurent::SkewLaurentPoly;

/// `(word, coefficient)`; a word is a list of generator indices, empty for 1.
pub type Combination = Vec<(Vec<usize>, ScalarK)>;

#[derive(Clone, Debug)]
pub enum Expression {
    Combination(Combination),
    NotFound,
}

type Monomials = BTreeMap<(i32, i32), ScalarK>;

/// `(y-exponent, x-exponent) -> coefficient`.
fn monomials(p: &SkewLaurentPoly) -> Result<Monomials> {
    let mut out = BTreeMap::new();
    for (i, f) in p.terms() {
        let terms = f.laurent_terms().ok_or_else(|| {
            Error::Unsupported(format!("coefficient of x^{i} is not a Laurent polynomial in the second variable"))
        })?;
        for (j, c) in terms {
            out.insert((j, i), c);
        }
    }
    Ok(out)
}

/// Exact value of a combination.
pub fn expand(
    gens: &[SkewLaurentPoly],
    combo: &Combination,
    vars: crate::skew_laurent::VarPair,
) -> Result<SkewLaurentPoly> {
    let mut acc = SkewLaurentPoly::zero(vars);
    for (word, c) in combo {
        let mut w = SkewLaurentPoly::one(vars);
        for &g in word {
            w = w.mul(&gens[g])?;
        }
        acc = acc.add(&w.scale(c))?;
    }
    Ok(acc)
}

fn reduce_column(m: &Modular, col: &Monomials, rows: &[(i32, i32)]) -> Option<Vec<u64>> {
    rows.iter().map(|k| col.get(k).map_or(Some(0), |c| c.reduce(m))).collect()
}

/// Exact solve restricted to `cols`, using the rows that pivoted modulo p.
fn exact_on_support(
    columns: &[Monomials],
    target: &Monomials,
    rows: &[(i32, i32)],
    cols: &[usize],
    reduced: &[Vec<u64>],
    reduced_target: &[u64],
) -> Option<Vec<ScalarK>> {
    let m = Modular::get();
    let sub: Vec<Vec<u64>> = (0..rows.len()).map(|r| cols.iter().map(|&c| reduced[c][r]).collect()).collect();
    let ech = linalg::echelon_mod(m, &sub, reduced_target);
    if ech.pivots.len() != cols.len() {
        return None;
    }
    let pick: Vec<usize> = ech.pivots.iter().map(|(_, r)| *r).collect();
    let zero = ScalarK::zero();
    let a: Vec<Vec<ScalarK>> = pick
        .iter()
        .map(|&r| cols.iter().map(|&c| columns[c].get(&rows[r]).unwrap_or(&zero).clone()).collect())
        .collect();
    let b: Vec<ScalarK> = pick.iter().map(|&r| target.get(&rows[r]).unwrap_or(&zero).clone()).collect();
    linalg::solve(&a, &b)
}

/// Find a K-linear combination of words of length `<= max_len` equal to `target`.
pub fn subalgebra_express(target: &SkewLaurentPoly, gens: &[SkewLaurentPoly], max_len: usize) -> Result<Expression> {
    let vars = target.vars();
    for g in gens {
        crate::skew_laurent::check_vars(vars, g.vars())?;
    }
    let target_m = monomials(target)?;
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut values: Vec<SkewLaurentPoly> = vec![SkewLaurentPoly::one(vars)];
    let mut columns: Vec<Monomials> = vec![monomials(&values[0])?];
    let mut frontier: Vec<usize> = vec![0];
    let m = Modular::get();
    for len in 0..=max_len {
        if len > 0 {
            let mut next = Vec::new();
            for &w in &frontier {
                for (gi, g) in gens.iter().enumerate() {
                    let mut word = words[w].clone();
                    word.push(gi);
                    let value = values[w].mul(g)?;
                    columns.push(monomials(&value)?);
                    words.push(word);
                    values.push(value);
                    next.push(words.len() - 1);
                }
            }
            frontier = next;
        }
        let rows: Vec<(i32, i32)> = columns
            .iter()
            .flat_map(|c| c.keys().copied())
            .chain(target_m.keys().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let reduced: Option<Vec<Vec<u64>>> = columns.iter().map(|c| reduce_column(m, c, &rows)).collect();
        let reduced_target = reduce_column(m, &target_m, &rows);
        let (Some(reduced), Some(reduced_target)) = (reduced, reduced_target) else {
            if let Some(combo) = exact_full(&columns, &target_m, &rows, &words) {
                return certify(target, gens, combo);
            }
            continue;
        };
        let matrix: Vec<Vec<u64>> = (0..rows.len()).map(|r| reduced.iter().map(|c| c[r]).collect()).collect();
        let ech = linalg::echelon_mod(m, &matrix, &reduced_target);
        if ech.inconsistent_row.is_some() {
            continue;
        }
        let support: Vec<usize> = (0..words.len()).filter(|&c| ech.solution[c] != 0).collect();
        if let Some(x) = exact_on_support(&columns, &target_m, &rows, &support, &reduced, &reduced_target) {
            let combo: Combination = support.iter().zip(x).map(|(&c, v)| (words[c].clone(), v)).collect();
            if expand(gens, &combo, vars)? == *target {
                return Ok(Expression::Combination(combo));
            }
        }
        if let Some(combo) = exact_full(&columns, &target_m, &rows, &words) {
            return certify(target, gens, combo);
        }
    }
    Ok(Expression::NotFound)
}

fn exact_full(
    columns: &[Monomials],
    target: &Monomials,
    rows: &[(i32, i32)],
    words: &[Vec<usize>],
) -> Option<Combination> {
    let zero = ScalarK::zero();
    let a: Vec<Vec<ScalarK>> =
        rows.iter().map(|k| columns.iter().map(|c| c.get(k).unwrap_or(&zero).clone()).collect()).collect();
    let b: Vec<ScalarK> = rows.iter().map(|k| target.get(k).unwrap_or(&zero).clone()).collect();
    let x = linalg::solve(&a, &b)?;
    Some(words.iter().zip(x).filter(|(_, v)| !v.is_zero()).map(|(w, v)| (w.clone(), v)).collect())
}

fn certify(target: &SkewLaurentPoly, gens: &[SkewLaurentPoly], combo: Combination) -> Result<Expression> {
    if expand(gens, &combo, target.vars())? == *target {
        Ok(Expression::Combination(combo))
    } else {
        Err(Error::Unsupported("exact solution failed to re-expand to the target".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::theta;
    use crate::skew_laurent::XY;

    #[test]
    fn single_generator() {
        let t1 = theta(1);
        let Expression::Combination(c) = subalgebra_express(&t1, std::slice::from_ref(&t1), 1).unwrap() else {
            panic!("theta1 should be found");
        };
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, vec![0]);
        assert!(c[0].1.is_one());
    }

    #[test]
    fn x_is_not_invariant() {
        let gens = [theta(1), theta(2), theta(3)];
        let r = subalgebra_express(&SkewLaurentPoly::x(XY), &gens, 2).unwrap();
        assert!(matches!(r, Expression::NotFound));
    }
}
