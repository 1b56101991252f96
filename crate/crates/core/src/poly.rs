//! Exact rational matrices and polynomials for the characteristic-polynomial
//! route.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rootsystem::Rational;

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn big(q: Rational) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

pub fn to_big_matrix(m: &[Vec<Rational>]) -> QMatrix {
    m.iter()
        .map(|r| r.iter().map(|&q| big(q)).collect())
        .collect()
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for p in 0..k {
            if a[i][p].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][p] * &b[p][j];
            }
        }
    }
    out
}

pub fn trace(a: &QMatrix) -> BigRational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Coefficients of `det(xI − A)`, highest degree first (so `coeffs[0] = 1`),
/// by the Faddeev–LeVerrier recursion.
pub fn faddeev_leverrier(a: &QMatrix) -> Vec<BigRational> {
    let n = a.len();
    let mut coeffs = vec![BigRational::one()];
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = mat_mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[k - 1];
        }
        mk = next;
        let c = -trace(&mat_mul(a, &mk)) / BigRational::from_integer(BigInt::from(k));
        coeffs.push(c);
    }
    coeffs
}

/// Exact determinant by fraction-based Gaussian elimination.
pub fn determinant(a: &QMatrix) -> BigRational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for i in (col + 1)..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &p;
            for j in col..n {
                let sub = &f * &m[col][j];
                m[i][j] -= sub;
            }
        }
    }
    det
}

/// Evaluates a highest-first coefficient list at a rational point.
pub fn eval_rational(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Solves `Σ cⱼ colsⱼ = rhs` exactly; `None` if inconsistent.
pub fn solve_columns(cols: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = cols.len();
    let rows = rhs.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let sub = &f * &m[row][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut out = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = m[r][n].clone();
    }
    Some(out)
}

/// Monic minimal polynomial of a square matrix, highest degree first.
pub fn minimal_polynomial(a: &QMatrix) -> Vec<BigRational> {
    let n = a.len();
    let flat = |m: &QMatrix| -> Vec<BigRational> { m.iter().flatten().cloned().collect() };
    let mut power: QMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut cols = vec![flat(&power)];
    loop {
        power = mat_mul(a, &power);
        let v = flat(&power);
        if let Some(c) = solve_columns(&cols, &v) {
            let mut out = vec![BigRational::one()];
            out.extend(c.into_iter().rev().map(|x| -x));
            return out;
        }
        cols.push(v);
    }
}

pub fn derivative(coeffs: &[BigRational]) -> Vec<BigRational> {
    let d = coeffs.len().saturating_sub(1);
    coeffs[..d]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(d - i)))
        .collect()
}

/// `x` rounded to the nearest multiple of `2^-bits`.
pub fn round_bits(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (x * BigRational::from_integer(scale.clone()))
        .round()
        .to_integer();
    BigRational::new(n, scale)
}

/// Newton refinement of a simple root near `x0`, carried at `bits` bits.
pub fn refine_root(coeffs: &[BigRational], x0: f64, bits: u32) -> Option<BigRational> {
    let d = derivative(coeffs);
    let mut x = BigRational::from_float(x0)?;
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    for _ in 0..64 {
        let dp = eval_rational(&d, &x);
        if dp.is_zero() {
            return None;
        }
        let step = eval_rational(coeffs, &x) / dp;
        x = round_bits(&(&x - &step), bits);
        if step.abs() <= eps {
            return Some(x);
        }
    }
    None
}

/// Quotient of synthetic division by `(x − r)`, dropping the remainder.
pub fn deflate(coeffs: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(coeffs.len().saturating_sub(1));
    for c in &coeffs[..coeffs.len().saturating_sub(1)] {
        let next = match out.last() {
            Some(prev) => c + prev * r,
            None => c.clone(),
        };
        out.push(next);
    }
    out
}

/// Polynomial with integer coefficients, highest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let first = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(coeffs.len().saturating_sub(1));
        IntPoly {
            coeffs: coeffs[first..].to_vec(),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `None` unless every coefficient is an integer.
    pub fn from_rational(coeffs: &[BigRational]) -> Option<Self> {
        coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Coefficients as `i64`, if they fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pow = d - i;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || pow == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match pow {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{pow}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
