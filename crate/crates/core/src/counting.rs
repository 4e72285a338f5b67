//! Point counting on curves `y^2 = x^3 + a x^2 + b x + c` over F_{3^n} and
//! the fixed-point count of `(x, y) -> (x^(3^n) + 1, y^(3^n))` on
//! `y^2 = x^3 - x`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf3n::{subfield_test, FieldDescriptor, GfElem, GfError};

/// Largest n for which [`count_points`] enumerates F_{3^n}.
pub const MAX_COUNT_DEGREE: u32 = 8;
/// Largest odd n for which [`count_sys_solutions`] runs (it works in F_{3^{3n}}).
pub const MAX_SYS_DEGREE: u32 = 5;
/// Largest n for which traces fit the integer type of [`TraceData`].
pub const MAX_TRACE_DEGREE: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("n = {n} exceeds the capacity bound {max} for {what}")]
    CapacityExceeded { what: &'static str, n: u32, max: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cubic x^3 + {0}x^2 + {1}x + {2} has a repeated root")]
    SingularCurve(u8, u8, u8),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// `y^2 = x^3 + a x^2 + b x + c` with coefficients in F_3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedCurve {
    pub a: u8,
    pub b: u8,
    pub c: u8,
}

impl ReducedCurve {
    /// Coefficients are reduced mod 3; the cubic must be separable.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, CountError> {
        let [a, b, c] = [a, b, c].map(|v| v.rem_euclid(3) as u8);
        let curve = ReducedCurve { a, b, c };
        if curve.cubic_discriminant() == 0 {
            return Err(CountError::SingularCurve(a, b, c));
        }
        Ok(curve)
    }

    /// `y^2 = x^3 - x`.
    pub fn x3_minus_x() -> Self {
        ReducedCurve { a: 0, b: 2, c: 0 }
    }

    /// Discriminant of the cubic mod 3: `a^2 b^2 - 4 b^3 - 4 a^3 c` (the
    /// `27 c^2` and `18 abc` terms vanish).
    pub fn cubic_discriminant(&self) -> u8 {
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        (a * a * b * b - 4 * b * b * b - 4 * a * a * a * c).rem_euclid(3) as u8
    }

    fn rhs(&self, x: &GfElem) -> GfElem {
        let k = x.field();
        let x2 = x * x;
        let x3 = &x2 * x;
        &(&(&x3 + &(&k.constant(self.a as i64) * &x2)) + &(&k.constant(self.b as i64) * x)) + &k.constant(self.c as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceData {
    pub n: u32,
    /// Trace of Frobenius over F_{3^n}.
    pub a_n: i128,
    /// `3^n + 1 - a_n`.
    pub point_count: i128,
}

/// Number of projective points over F_{3^n}, by enumeration.
pub fn count_points(curve: &ReducedCurve, n: u32) -> Result<u64, CountError> {
    if n == 0 {
        return Err(CountError::InvalidArgument("n must be at least 1".into()));
    }
    if n > MAX_COUNT_DEGREE {
        return Err(CountError::CapacityExceeded { what: "count_points", n, max: MAX_COUNT_DEGREE });
    }
    let k = FieldDescriptor::new(n as usize)?;
    // roots[i] = #{y : y^2 = element i}
    let mut roots = vec![0u64; k.order() as usize];
    for y in k.elements() {
        roots[(&y * &y).index() as usize] += 1;
    }
    let affine: u64 = k.elements().map(|x| roots[curve.rhs(&x).index() as usize]).sum();
    Ok(affine + 1)
}

/// Frobenius trace over F_{3^n} via `a_{m+1} = a_1 a_m - 3 a_{m-1}`, with
/// `a_0 = 2` and `a_1` from a count over F_3.
pub fn frobenius_trace(curve: &ReducedCurve, n: u32) -> Result<TraceData, CountError> {
    if n == 0 {
        return Err(CountError::InvalidArgument("n must be at least 1".into()));
    }
    if n > MAX_TRACE_DEGREE {
        return Err(CountError::CapacityExceeded { what: "frobenius_trace", n, max: MAX_TRACE_DEGREE });
    }
    let a1 = 4 - count_points(curve, 1)? as i128;
    let (mut prev, mut cur) = (2i128, a1);
    for _ in 1..n {
        (prev, cur) = (cur, a1 * cur - 3 * prev);
    }
    let q = 3i128.pow(n);
    let data = TraceData { n, a_n: cur, point_count: q + 1 - cur };
    if data.a_n * data.a_n > 4 * q || data.point_count < 1 {
        return Err(CountError::InternalContradiction(format!("Hasse bound violated: {data:?}")));
    }
    Ok(data)
}

/// Solves `A x = b` over F_3. Returns a particular solution and a basis of
/// the kernel, or `None` if the system is inconsistent. `rows` are the rows
/// of `A`.
fn solve_f3(mut rows: Vec<Vec<u8>>, mut rhs: Vec<u8>) -> Option<(Vec<u8>, Vec<Vec<u8>>)> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, p);
        rhs.swap(r, p);
        // scale pivot to 1 (2 is its own inverse)
        if rows[r][col] == 2 {
            rows[r].iter_mut().for_each(|v| *v = (*v * 2) % 3);
            rhs[r] = (rhs[r] * 2) % 3;
        }
        for i in 0..rows.len() {
            let f = rows[i][col];
            if i != r && f != 0 {
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + 3 - (f * rows[r][j]) % 3) % 3;
                }
                rhs[i] = (rhs[i] + 3 - (f * rhs[r]) % 3) % 3;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rhs[r..].iter().any(|&v| v != 0) {
        return None;
    }
    let mut particular = vec![0u8; ncols];
    for (i, &col) in pivots.iter().enumerate() {
        particular[col] = rhs[i];
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u8; ncols];
            v[f] = 1;
            for (i, &col) in pivots.iter().enumerate() {
                v[col] = (3 - rows[i][f]) % 3;
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

/// Number of affine solutions `(x, y)` over the algebraic closure of
/// `x = x^(3^n) + 1, y = y^(3^n), y^2 = x^3 - x` for odd n.
///
/// The first equation is F_3-affine in x: its solutions form a coset of
/// F_{3^n} inside F_{3^{3n}}, found by linear algebra. For each such x the
/// value `s = x^3 - x` lies in F_{3^n}, and y ranges over the square roots
/// of s in F_{3^n}.
pub fn count_sys_solutions(n: u32) -> Result<u64, CountError> {
    if n == 0 || n % 2 == 0 {
        return Err(CountError::InvalidArgument(format!("n must be odd and positive, got {n}")));
    }
    if n > MAX_SYS_DEGREE {
        return Err(CountError::CapacityExceeded { what: "count_sys_solutions", n, max: MAX_SYS_DEGREE });
    }
    let dim = 3 * n as usize;
    let k = FieldDescriptor::new(dim)?;

    // column j of the matrix of x -> x^(3^n) - x is the image of t^j
    let columns: Vec<Vec<u8>> = (0..dim)
        .map(|j| {
            let mut basis = vec![0u8; dim];
            basis[j] = 1;
            let e = k.element(basis).expect("length matches");
            (&e.frobenius(n) - &e).coeffs().to_vec()
        })
        .collect();
    let rows: Vec<Vec<u8>> = (0..dim).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let minus_one = k.constant(-1).coeffs().to_vec();

    let (particular, kernel) = solve_f3(rows, minus_one)
        .ok_or_else(|| CountError::InternalContradiction("x^(3^n) - x = -1 has no solution".into()))?;
    if kernel.len() != n as usize {
        return Err(CountError::InternalContradiction(format!(
            "kernel of x -> x^(3^n) - x has dimension {}, expected {n}",
            kernel.len()
        )));
    }

    let q_half = (3u64.pow(n) - 1) / 2;
    let mut total = 0u64;
    for combo in 0..3u64.pow(n) {
        let mut coeffs = particular.clone();
        let mut rest = combo;
        for v in &kernel {
            let m = (rest % 3) as u8;
            rest /= 3;
            for (c, &b) in coeffs.iter_mut().zip(v) {
                *c = (*c + m * b) % 3;
            }
        }
        let x = k.element(coeffs).expect("length matches");
        if x.frobenius(n) != &x - &k.one() {
            return Err(CountError::InternalContradiction("coset element fails x^(3^n) = x - 1".into()));
        }
        let s = &(&(&x * &x) * &x) - &x;
        if !subfield_test(&s, n) {
            return Err(CountError::InternalContradiction("x^3 - x is outside F_{3^n}".into()));
        }
        // Euler's criterion inside F_{3^n}, evaluated in the big field
        if s.is_zero() {
            total += 1;
        } else if s.pow(q_half).is_one() {
            total += 2;
        }
    }
    Ok(total)
}

/// Trace of rho(sigma Frob) from the Lefschetz count:
/// `3^n + 1 - (1 + #affine fixed points)`.
pub fn trace_sigma_frob(n: u32) -> Result<i64, CountError> {
    let solutions = count_sys_solutions(n)?;
    Ok(3i64.pow(n) - solutions as i64)
}
