use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{LinalgError, Scalar};

/// Candidate integer roots are scanned linearly up to this bound; beyond it
/// the constant term is factored instead.
const SCAN_LIMIT: u64 = 1 << 20;
/// Trial division bound used when factoring the constant term.
const TRIAL_LIMIT: u64 = 1 << 22;

/// A univariate polynomial with rational coefficients, lowest degree first,
/// with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![Scalar::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }

    /// Divides by `(x - root)`, returning the quotient if the division is exact.
    pub fn deflate(&self, root: &Scalar) -> Option<Polynomial> {
        let n = self.coeffs.len();
        if n < 2 {
            return None;
        }
        let mut quotient = vec![Scalar::zero(); n - 1];
        let mut carry = Scalar::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] + &(&carry * root);
            quotient[k - 1] = carry.clone();
        }
        let remainder = &self.coeffs[0] + &(&carry * root);
        remainder.is_zero().then(|| Polynomial::new(quotient))
    }

    /// All rational roots with multiplicity, in increasing order.
    pub fn rational_roots(&self) -> Result<Vec<(Scalar, usize)>, LinalgError> {
        rational_roots(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Rational roots of `p` with multiplicities, by the rational root theorem.
///
/// `p` is rescaled to a monic integer polynomial `q(y) = D^n p(y / D)` where
/// `D` clears every denominator of the monic normalisation of `p`. Rational
/// roots of `q` are then integers dividing its constant term, bounded in
/// absolute value by the Fujiwara bound.
pub fn rational_roots(p: &Polynomial) -> Result<Vec<(Scalar, usize)>, LinalgError> {
    let Some(n) = p.degree() else {
        return Err(LinalgError::ZeroPolynomial);
    };
    let lead_inv = p.coeffs[n].inv().expect("leading coefficient is nonzero");
    let monic: Vec<Scalar> = p.coeffs.iter().map(|c| c * &lead_inv).collect();

    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    let zero_mult = monic.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((Scalar::zero(), zero_mult));
    }
    let monic = &monic[zero_mult..];
    let deg = monic.len() - 1;
    if deg == 0 {
        return Ok(roots);
    }

    let denom = monic
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    // q_k = monic_k * denom^(deg - k), an integer for k < deg.
    let mut q: Vec<BigInt> = Vec::with_capacity(deg + 1);
    let mut power = BigInt::one();
    let mut scaled = vec![BigInt::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let c = &monic[k];
        scaled[k] = (c.numer() * &power) / c.denom();
        power *= &denom;
    }
    q.extend(scaled);

    let mut poly = q;
    for y in integer_root_candidates(&poly)? {
        let mut mult = 0;
        while let Some(next) = deflate_int(&poly, &y) {
            poly = next;
            mult += 1;
            if poly.len() == 1 {
                break;
            }
        }
        if mult > 0 {
            let root = Scalar::from_big(y, denom.clone()).expect("denominator is positive");
            roots.push((root, mult));
        }
        if poly.len() == 1 {
            break;
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

fn deflate_int(q: &[BigInt], y: &BigInt) -> Option<Vec<BigInt>> {
    let n = q.len();
    if n < 2 {
        return None;
    }
    let mut quotient = vec![BigInt::zero(); n - 1];
    let mut carry = BigInt::zero();
    for k in (1..n).rev() {
        carry = &q[k] + &carry * y;
        quotient[k - 1] = carry.clone();
    }
    (&q[0] + &carry * y).is_zero().then_some(quotient)
}

/// Nonzero integers that may be roots of the monic integer polynomial `q`
/// (which has `q[0] != 0`).
fn integer_root_candidates(q: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
    let deg = q.len() - 1;
    let constant = q[0].abs();
    // Fujiwara: |z| <= 2 max_k |q_{deg-k}|^(1/k), with the last term halved.
    let mut radius = BigInt::zero();
    for k in 1..=deg {
        let mut c = q[deg - k].abs();
        if k == deg {
            c = (c + BigInt::one()) / 2 + BigInt::one();
        }
        let r = c.nth_root(k as u32);
        let r = if r.pow(k as u32) < c { r + BigInt::one() } else { r };
        if r > radius {
            radius = r;
        }
    }
    let bound = (radius * BigInt::from(2)).min(constant.clone());

    let mut divisors: Vec<BigInt> = if bound <= BigInt::from(SCAN_LIMIT) {
        let b: u64 = bound.try_into().expect("bound fits in u64");
        (1..=b)
            .map(BigInt::from)
            .filter(|d| (&constant % d).is_zero())
            .collect()
    } else {
        positive_divisors(&constant)?
            .into_iter()
            .filter(|d| d <= &bound)
            .collect()
    };
    divisors.sort();
    let mut out = Vec::with_capacity(2 * divisors.len());
    for d in divisors {
        out.push(-&d);
        out.push(d);
    }
    Ok(out)
}

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>, LinalgError> {
    let mut rest = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let limit = BigInt::from(TRIAL_LIMIT);
        if rest > &limit * &limit {
            return Err(LinalgError::RootSearchExhausted(n.to_string()));
        }
        factors.push((rest, 1));
    }
    let mut divisors = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for dv in &divisors {
            let mut pp = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pp);
                pp *= &prime;
            }
        }
        divisors = next;
    }
    debug_assert!(divisors.iter().all(|d| d.sign() == Sign::Plus));
    Ok(divisors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn cubic_with_three_roots() {
        let p = Polynomial::from_ints(&[0, -4, 0, 1]);
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![(s(-2), 1), (s(0), 1), (s(2), 1)]
        );
    }

    #[test]
    fn no_rational_roots() {
        assert!(Polynomial::from_ints(&[1, 0, 1]).rational_roots().unwrap().is_empty());
        assert!(Polynomial::from_ints(&[-2, 0, 1]).rational_roots().unwrap().is_empty());
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            Polynomial::zero().rational_roots(),
            Err(LinalgError::ZeroPolynomial)
        ));
    }

    #[test]
    fn fractional_and_repeated_roots() {
        // (2x - 1)^2 (x + 3) = 4x^3 + 8x^2 - 11x + 3
        let p = Polynomial::from_ints(&[3, -11, 8, 4]);
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![(s(-3), 1), (Scalar::ratio(1, 2).unwrap(), 2)]
        );
        // rational coefficients: x^2 - 1/4
        let q = Polynomial::new(vec![Scalar::ratio(-1, 4).unwrap(), s(0), s(1)]);
        assert_eq!(
            q.rational_roots().unwrap(),
            vec![(Scalar::ratio(-1, 2).unwrap(), 1), (Scalar::ratio(1, 2).unwrap(), 1)]
        );
    }

    #[test]
    fn large_root_found_through_factoring() {
        // (x - 3_000_017)(x + 2)
        let p = Polynomial::from_ints(&[-6_000_034, -3_000_015, 1]);
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![(s(-2), 1), (s(3_000_017), 1)]
        );
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_ints(&[0, -4, 0, 1]).to_string(), "x^3 - 4x");
        assert_eq!(Polynomial::from_ints(&[1, -2, 1]).to_string(), "x^2 - 2x + 1");
    }
}
