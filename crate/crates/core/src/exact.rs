//! Exact rational arithmetic used as an oracle for every floating-point
//! rank decision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Row-major matrix of exact rationals.
pub type RationalMatrix = Vec<Vec<BigRational>>;

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::ParseRational(text.to_string());
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse::<BigInt>().map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let mut value = int_part.abs() * &scale + frac_part;
        if negative {
            value = -value;
        }
        return Ok(BigRational::new(value, scale));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Exact rational for a float that holds an integer value, if any.
pub fn rational_from_integral_f64(v: f64) -> Option<BigRational> {
    if v.is_finite() && v.fract() == 0.0 && v.abs() < 9.0e15 {
        Some(BigRational::from_integer(BigInt::from(v as i64)))
    } else {
        None
    }
}

/// Recovers `p/q` with `q <= 12` from a float within `1e-13`, if any.
pub fn small_rational_from_f64(v: f64) -> Option<BigRational> {
    if !v.is_finite() {
        return None;
    }
    (1..=12i64).find_map(|q| {
        let p = (v * q as f64).round();
        ((v - p / q as f64).abs() < 1e-13 && p.abs() < 9.0e15)
            .then(|| BigRational::new(BigInt::from(p as i64), BigInt::from(q)))
    })
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn check_rectangular(m: &RationalMatrix) -> Result<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("ragged rational matrix".into()));
    }
    Ok(cols)
}

/// Rank by fraction-free (Bareiss) elimination after clearing each row's
/// denominators.
pub fn exact_rank(m: &RationalMatrix) -> Result<usize> {
    let cols = check_rectangular(m)?;
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();
    let rows = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    Ok(rank)
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(a: &mut RationalMatrix, cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Kernel basis: one vector per free column, with a 1 in that column.
pub fn exact_kernel(m: &RationalMatrix, cols: usize) -> Result<Vec<Vec<BigRational>>> {
    if !m.is_empty() && check_rectangular(m)? != cols {
        return Err(Error::DimensionMismatch(format!("expected {cols} columns")));
    }
    let mut a = m.clone();
    let pivots = rref(&mut a, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        basis.push(v);
    }
    Ok(basis)
}

pub fn transpose(m: &RationalMatrix, cols: usize) -> RationalMatrix {
    (0..cols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &RationalMatrix, v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}
