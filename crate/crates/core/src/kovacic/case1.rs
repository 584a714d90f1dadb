use crate::exactnum::{as_nonneg_int, GaussianRational, Rational};
use crate::poly::Polynomial;

use super::{KovacicError, Sign};

/// Data at infinity for a polynomial `r` of degree `2ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case1Data {
    /// `[√r]_∞`.
    pub s: Polynomial,
    pub nu: usize,
    /// Leading coefficient of `s`.
    pub a: GaussianRational,
    /// Coefficient of `x^{ν−1}` in `r − s²`.
    pub b: GaussianRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaCandidate {
    pub sign: Sign,
    pub omega: Polynomial,
    pub degree: usize,
}

pub fn compute_case1_data(r: &Polynomial) -> Result<Case1Data, KovacicError> {
    let s = r.asymptotic_sqrt()?;
    let nu = s
        .degree()
        .expect("square root at infinity has degree ν ≥ 1");
    let rest = r - &(&s * &s);
    Ok(Case1Data {
        a: s.coeff(nu),
        b: rest.coeff(nu - 1),
        s,
        nu,
    })
}

/// `½(ε·b/a − ν)`.
pub fn candidate_degree(data: &Case1Data, sign: Sign) -> GaussianRational {
    let ratio = data.b.checked_div(&data.a).expect("a ≠ 0");
    let shifted =
        &ratio.scale(&Rational::from(sign.value())) - &GaussianRational::from(data.nu as i64);
    shifted.scale(&Rational::new(1, 2).expect("nonzero"))
}

/// Candidates whose degree is a nonnegative integer, with `ω = ε·s`.
pub fn degree_candidates(data: &Case1Data) -> Vec<OmegaCandidate> {
    [Sign::Plus, Sign::Minus]
        .into_iter()
        .filter_map(|sign| {
            let d = candidate_degree(data, sign);
            let d = as_nonneg_int(d.as_real()?)?;
            Some(OmegaCandidate {
                sign,
                omega: data.s.scale(&sign.as_scalar()),
                degree: usize::try_from(d).ok()?,
            })
        })
        .collect()
}

/// `P'' + 2ωP' + (ω' + ω² − r)P`: the factor multiplying `exp(∫ω)` in
/// `f'' − r f` for `f = P·exp(∫ω)`.
pub(crate) fn riccati_operator(p: &Polynomial, omega: &Polynomial, g: &Polynomial) -> Polynomial {
    let dp = p.derivative();
    let two = GaussianRational::from_int(2);
    &(&dp.derivative() + &(&omega.scale(&two) * &dp)) + &(g * p)
}

/// Monic `P` of degree exactly `d` annihilated by the operator above, or
/// `None` if the linear system for its lower coefficients is inconsistent.
pub fn find_p(omega: &Polynomial, d: usize, r: &Polynomial) -> Option<Polynomial> {
    find_p_or_obstruction(omega, d, r).ok()
}

/// Like [`find_p`], but on failure returns the nonzero residual of the
/// polynomial obtained by back-substituting the pivot rows of the reduced
/// system.
pub fn find_p_or_obstruction(
    omega: &Polynomial,
    d: usize,
    r: &Polynomial,
) -> Result<Polynomial, Polynomial> {
    let g = &(&omega.derivative() + &(omega * omega)) - r;
    let images: Vec<Polynomial> = (0..=d)
        .map(|j| riccati_operator(&Polynomial::monomial(GaussianRational::one(), j), omega, &g))
        .collect();
    let rows = images
        .iter()
        .filter_map(Polynomial::degree)
        .max()
        .map_or(0, |k| k + 1);

    // Augmented system: Σ_{j<d} c_j·L(x^j) = −L(x^d), one row per power of x.
    let mut matrix: Vec<Vec<GaussianRational>> = (0..rows)
        .map(|k| {
            let mut row: Vec<GaussianRational> =
                images[..d].iter().map(|img| img.coeff(k)).collect();
            row.push(-&images[d].coeff(k));
            row
        })
        .collect();

    let pivots = row_reduce(&mut matrix, d);
    let consistent = matrix[pivots.len()..].iter().all(|row| row[d].is_zero());

    let mut c = vec![GaussianRational::zero(); d];
    for (row, &col) in pivots.iter().enumerate() {
        c[col] = matrix[row][d].clone();
    }
    c.push(GaussianRational::one());
    let p = Polynomial::new(c);
    if consistent {
        Ok(p)
    } else {
        Err(riccati_operator(&p, omega, &g))
    }
}

/// Gauss–Jordan elimination on the first `ncols` columns; returns the pivot
/// column of each leading row. Rows below the pivots have zero coefficient
/// part.
fn row_reduce(m: &mut [Vec<GaussianRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(found) = (row..m.len()).find(|&k| !m[k][col].is_zero()) else {
            continue;
        };
        m.swap(row, found);
        let inv = m[row][col].inv().expect("pivot is nonzero");
        for entry in m[row].iter_mut() {
            *entry = &*entry * &inv;
        }
        let pivot_row = m[row].clone();
        for (k, other) in m.iter_mut().enumerate() {
            if k == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (entry, p) in other[col..=ncols].iter_mut().zip(&pivot_row[col..=ncols]) {
                *entry -= &(&factor * p);
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}
