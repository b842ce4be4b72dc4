//! Modern reference routes, kept apart from the algorithms they check.
//!
//! Nothing here calls into the board, surd or polynomial algorithms; only the
//! value types are shared.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::polynomial::{PolyError, Polynomial};
use crate::quantity::Quantity;
use crate::surd::{SurdExpression, SurdSum};

/// Schoolbook product over 32-bit limbs.
pub fn oracle_mul_int(a: &BigUint, b: &BigUint) -> BigUint {
    let (x, y) = (a.to_u32_digits(), b.to_u32_digits());
    if x.is_empty() || y.is_empty() {
        return BigUint::zero();
    }
    let mut out = vec![0u32; x.len() + y.len()];
    for (i, &xi) in x.iter().enumerate() {
        let mut carry = 0u64;
        for (j, &yj) in y.iter().enumerate() {
            let t = u64::from(xi) * u64::from(yj) + u64::from(out[i + j]) + carry;
            out[i + j] = t as u32;
            carry = t >> 32;
        }
        let mut k = i + y.len();
        while carry > 0 {
            let t = u64::from(out[k]) + carry;
            out[k] = t as u32;
            carry = t >> 32;
            k += 1;
        }
    }
    BigUint::new(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignedOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Plain signed-rational arithmetic; `None` for division by zero.
pub fn oracle_signed(op: SignedOp, a: &BigRational, b: &BigRational) -> Option<BigRational> {
    Some(match op {
        SignedOp::Add => a + b,
        SignedOp::Sub => a - b,
        SignedOp::Mul => a * b,
        SignedOp::Div if b.is_zero() => return None,
        SignedOp::Div => a / b,
    })
}

fn dense(p: &Polynomial) -> Vec<BigRational> {
    let Some(deg) = p.degree() else { return Vec::new() };
    (0..=deg).map(|d| p.coeff(d).to_signed()).collect()
}

fn sparse(v: &[BigRational]) -> Polynomial {
    Polynomial::from_terms(v.iter().enumerate().map(|(d, c)| (d as u32, Quantity::from_signed(c.clone()))))
}

/// Synthetic division on dense coefficient vectors.
pub fn oracle_poly_divmod(n: &Polynomial, d: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
    let divisor = dense(d);
    let Some(lead) = divisor.last().cloned() else {
        return Err(PolyError::DivisionByZeroPolynomial);
    };
    let mut rem = dense(n);
    if rem.len() < divisor.len() {
        return Ok((Polynomial::zero(), n.clone()));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - divisor.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + divisor.len() - 1] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in divisor.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    rem.truncate(divisor.len() - 1);
    Ok((sparse(&quot), sparse(&rem)))
}

fn isqrt_exact(n: &BigRational) -> Option<BigRational> {
    if n.is_negative() {
        return None;
    }
    let (a, b) = (n.numer().sqrt(), n.denom().sqrt());
    (&a * &a == *n.numer() && &b * &b == *n.denom()).then(|| BigRational::new(a, b))
}

/// Squares a sum of surds directly, as (rational part, sorted surds).
pub fn oracle_square(terms: &[BigRational]) -> (BigRational, Vec<BigRational>) {
    let four = BigRational::from_integer(4.into());
    let mut rational: BigRational = terms.iter().sum();
    let mut surds = Vec::new();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            let cross = &four * &terms[i] * &terms[j];
            match isqrt_exact(&cross) {
                Some(root) => rational += root,
                None => surds.push(cross),
            }
        }
    }
    surds.sort();
    (rational, surds)
}

/// Exhaustive search over integer terms `1..=bound` (non-decreasing, so the
/// first hit is the lexicographically smallest).
pub fn oracle_denest_search(e: &SurdExpression, bound: u32) -> Option<SurdSum> {
    if e.surds().is_empty() {
        return None;
    }
    let target_rational = e.rational().to_signed();
    let target_surds: Vec<BigRational> = e.surds().iter().map(Quantity::to_signed).collect();

    fn walk(
        terms: &mut Vec<BigRational>,
        sum: &BigRational,
        start: u32,
        bound: u32,
        target: (&BigRational, &[BigRational]),
    ) -> Option<Vec<BigRational>> {
        if !terms.is_empty() {
            let (r, s) = oracle_square(terms);
            if &r == target.0 && s == target.1 {
                return Some(terms.clone());
            }
        }
        for t in start..=bound {
            let next = sum + BigRational::from_integer(t.into());
            if &next > target.0 {
                break;
            }
            terms.push(BigRational::from_integer(t.into()));
            let found = walk(terms, &next, t, bound, target);
            terms.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    let hit = walk(&mut Vec::new(), &BigRational::zero(), 1, bound, (&target_rational, &target_surds))?;
    SurdSum::new(hit.into_iter().map(Quantity::from_signed).collect()).ok()
}

/// Square root of a polynomial by undetermined coefficients: the root's
/// coefficients are solved for from the top down, then the square is checked.
pub fn oracle_poly_sqrt(p: &Polynomial) -> Option<Polynomial> {
    let coeffs = dense(p);
    let Some(lead) = coeffs.last() else { return Some(Polynomial::zero()) };
    let n = coeffs.len() - 1;
    if n % 2 == 1 {
        return None;
    }
    let m = n / 2;
    let mut root = vec![BigRational::zero(); m + 1];
    root[m] = isqrt_exact(lead)?;
    if root[m].is_zero() {
        return None;
    }
    let two_lead = &root[m] * BigRational::from_integer(2.into());
    // coefficient of x^(m + k) in root^2 fixes root[k], for k = m-1 down to 0
    for k in (0..m).rev() {
        let mut acc = coeffs[m + k].clone();
        for i in k + 1..m {
            acc -= &root[i] * &root[m + k - i];
        }
        root[k] = acc / &two_lead;
    }
    let mut square = vec![BigRational::zero(); n + 1];
    for (i, a) in root.iter().enumerate() {
        for (j, b) in root.iter().enumerate() {
            square[i + j] += a * b;
        }
    }
    (square == coeffs).then(|| sparse(&root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Notation;

    fn modern(s: &str) -> Polynomial {
        Polynomial::parse(s, Notation::Modern).unwrap()
    }

    #[test]
    fn integer_products() {
        let m = |a: u64, b: u64| oracle_mul_int(&a.into(), &b.into());
        assert_eq!(m(2326, 214), BigUint::from(497764u32));
        assert_eq!(m(987654, 0), BigUint::zero());
        assert_eq!(m(12345, 6789), BigUint::from(83810205u32));
        assert_eq!(m(u64::MAX, u64::MAX), BigUint::from(u64::MAX) * BigUint::from(u64::MAX));
    }

    #[test]
    fn signed_rationals() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(oracle_signed(SignedOp::Mul, &q(-5, 1), &q(-1, 1)), Some(q(5, 1)));
        assert_eq!(oracle_signed(SignedOp::Div, &q(1, 1), &q(0, 1)), None);
    }

    #[test]
    fn polynomial_division() {
        let (q, _) = oracle_poly_divmod(
            &modern("6x^8+28x^7+6x^6-80x^5+38x^4+92x^3-200x^2+20x"),
            &modern("2x^5+8x^4-20x^2"),
        )
        .unwrap();
        assert_eq!(q, modern("3x^3 + 2x^2 - 5x + 10"));
        let p = modern("x^3 - 7");
        assert_eq!(oracle_poly_divmod(&p, &modern("1")).unwrap(), (p.clone(), Polynomial::zero()));
        assert!(oracle_poly_divmod(&p, &Polynomial::zero()).is_err());
    }

    #[test]
    fn denest_search() {
        let e: SurdExpression = "16 + s24 + s40 + s48 + s60 + s72 + s120".parse().unwrap();
        assert_eq!(oracle_denest_search(&e, 10), Some(SurdSum::of_integers(&[2, 3, 5, 6]).unwrap()));
        let two: SurdExpression = "2".parse().unwrap();
        assert_eq!(oracle_denest_search(&two, 10), None);
        let e: SurdExpression = "10 + s84".parse().unwrap();
        assert_eq!(oracle_denest_search(&e, 10), Some(SurdSum::of_integers(&[3, 7]).unwrap()));
        let e: SurdExpression = "18 + s8".parse().unwrap();
        assert_eq!(oracle_denest_search(&e, 20), None);
    }

    #[test]
    fn polynomial_square_roots() {
        let s = modern("2x^4 + 3x^3 + 5x + 3");
        assert_eq!(oracle_poly_sqrt(&s.mul(&s)), Some(s.clone()));
        assert_eq!(oracle_poly_sqrt(&s.mul(&s).add(&modern("1"))), None);
    }
}
