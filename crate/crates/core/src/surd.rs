//! Exact real quadratic irrationals `(p + q√d) / r`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::series::Rational;

/// A number `(p + q√d) / r` with integers `p, q, r`, `r > 0`, and `d` a
/// squarefree integer greater than 1 (or `q = 0, d = 1` for rationals).
///
/// Values are kept normalized so that structural equality is numeric
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

/// Splits `n > 0` as `k^2 · m` with `m` squarefree.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut k = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= rest {
        let sq = &f * &f;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            k *= &f;
        }
        f += 1;
    }
    (k, rest)
}

impl QuadraticSurd {
    pub fn new(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Self {
        assert!(!r.is_zero(), "zero denominator");
        assert!(!d.is_negative(), "negative radicand");
        let (k, d) = if d.is_zero() { (BigInt::zero(), BigInt::one()) } else { square_part(&d) };
        let mut p = p;
        let mut q = q * k;
        let mut r = r;
        let mut d = d;
        if d.is_one() {
            p += &q;
            q = BigInt::zero();
        }
        if q.is_zero() {
            d = BigInt::one();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        QuadraticSurd { p: p / &g, q: q / &g, d, r: r / &g }
    }

    pub fn from_rational(x: &Rational) -> Self {
        Self::new(x.numer().clone(), BigInt::zero(), BigInt::one(), x.denom().clone())
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.p.clone(), self.r.clone()))
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    fn common_radicand(&self, other: &Self) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "mixed radicands");
                self.d.clone()
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.common_radicand(other);
        Self::new(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            d,
            &self.r * &other.r,
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.p, -&self.q, self.d.clone(), self.r.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.common_radicand(other);
        Self::new(
            &self.p * &other.p + &self.q * &other.q * &d,
            &self.p * &other.q + &self.q * &other.p,
            d,
            &self.r * &other.r,
        )
    }

    /// Inverse by rationalizing the denominator. `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        if norm.is_zero() {
            return None;
        }
        Some(Self::new(&self.r * &self.p, -(&self.r * &self.q), self.d.clone(), norm))
    }

    pub fn signum(&self) -> Ordering {
        let sp = self.p.sign();
        let sq = self.q.sign();
        if self.q.is_zero() {
            return self.p.cmp(&BigInt::zero());
        }
        if self.p.is_zero() || sp == sq {
            return self.q.cmp(&BigInt::zero());
        }
        // Opposite signs: the larger magnitude wins.
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * &self.d;
        match p2.cmp(&q2d) {
            Ordering::Greater => self.p.cmp(&BigInt::zero()),
            Ordering::Less => self.q.cmp(&BigInt::zero()),
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }

    /// Exact `floor(q√d · scale)`.
    fn floor_irrational(&self, scale: &BigInt) -> BigInt {
        let t = &self.q * scale;
        let n = &t * &t * &self.d;
        let root = n.sqrt();
        if !t.is_negative() {
            root
        } else if &root * &root == n {
            -root
        } else {
            -root - 1
        }
    }

    /// Decimal rendering with `digits` places, rounded to nearest.
    pub fn decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        // floor((p·10^k + q√d·10^k) / r + 1/2) = floor((2p·10^k + 2q√d·10^k + r) / 2r)
        let two_scale: BigInt = &scale * 2u32;
        let numer = &self.p * &two_scale + self.floor_irrational(&two_scale) + &self.r;
        let rounded = numer.div_floor(&(&self.r * 2u32));
        let negative = rounded.is_negative();
        crate::series::render_scaled(negative, &rounded.abs(), &scale, digits)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return if self.r.is_one() { write!(f, "{}", self.p) } else { write!(f, "{}/{}", self.p, self.r) };
        }
        let radical = if self.q.is_one() {
            format!("sqrt({})", self.d)
        } else if self.q == -BigInt::one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.q, self.d)
        };
        let body = if self.p.is_zero() {
            radical
        } else if self.q.is_positive() {
            format!("{}+{}", self.p, radical)
        } else {
            format!("{}{}", self.p, radical)
        };
        if self.r.is_one() {
            write!(f, "{body}")
        } else if self.p.is_zero() && !self.q.is_negative() {
            write!(f, "{body}/{}", self.r)
        } else {
            write!(f, "({body})/{}", self.r)
        }
    }
}

/// Real roots of `a x^2 + b x + c` with rational coefficients, ascending.
pub fn quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Vec<QuadraticSurd> {
    if a.is_zero() {
        if b.is_zero() {
            return Vec::new();
        }
        return vec![QuadraticSurd::from_rational(&(-c / b))];
    }
    // Clear denominators: A x^2 + B x + C with integers.
    let l = a.denom().lcm(b.denom()).lcm(c.denom());
    let lift = |x: &Rational| (x * Rational::from_integer(l.clone())).to_integer();
    let (a, b, c) = (lift(a), lift(b), lift(c));
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    if disc.is_negative() {
        return Vec::new();
    }
    let two_a: BigInt = &a * 2u32;
    let mut roots = vec![
        QuadraticSurd::new(-&b, -BigInt::one(), disc.clone(), two_a.clone()),
        QuadraticSurd::new(-&b, BigInt::one(), disc, two_a),
    ];
    roots.sort_by(|x, y| x.cmp_value(y));
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    fn surd(p: i64, q: i64, d: i64, r: i64) -> QuadraticSurd {
        QuadraticSurd::new(p.into(), q.into(), d.into(), r.into())
    }

    #[test]
    fn normalization() {
        assert_eq!(surd(2, 4, 8, 2), surd(1, 4, 2, 1));
        assert_eq!(surd(1, 1, 4, 1), QuadraticSurd::from_rational(&int(3)));
        assert_eq!(surd(1, 1, 2, -3), surd(-1, -1, 2, 3));
    }

    #[test]
    fn reciprocal_rationalizes() {
        let x = surd(-101, 1, 21001, 270);
        let inv = x.recip().unwrap();
        assert_eq!(inv, surd(101, 1, 21001, 40));
        assert_eq!(x.mul(&inv), QuadraticSurd::from_rational(&int(1)));
    }

    #[test]
    fn signs_and_ordering() {
        assert_eq!(surd(-101, 1, 21001, 270).signum(), Ordering::Greater);
        assert_eq!(surd(-146, 1, 21001, 1).signum(), Ordering::Less);
        assert_eq!(surd(3, -2, 2, 1).signum(), Ordering::Greater);
        assert_eq!(
            surd(-101, 1, 21001, 270).cmp_value(&QuadraticSurd::from_rational(&rat(4, 27))),
            Ordering::Greater
        );
    }

    #[test]
    fn decimals() {
        assert_eq!(surd(101, 1, 21001, 40).decimal(6), "6.147930");
        assert_eq!(QuadraticSurd::from_rational(&rat(27, 4)).decimal(6), "6.750000");
        assert_eq!(surd(0, 1, 2, 1).decimal(10), "1.4142135624");
        assert_eq!(surd(0, -1, 2, 1).decimal(3), "-1.414");
        assert_eq!(QuadraticSurd::from_rational(&rat(-1, 3)).decimal(2), "-0.33");
    }

    #[test]
    fn display_forms() {
        assert_eq!(surd(-101, 1, 21001, 270).to_string(), "(-101+sqrt(21001))/270");
        assert_eq!(surd(101, 1, 21001, 40).to_string(), "(101+sqrt(21001))/40");
        assert_eq!(QuadraticSurd::from_rational(&rat(4, 27)).to_string(), "4/27");
        assert_eq!(surd(0, 1, 2, 1).to_string(), "sqrt(2)");
        assert_eq!(surd(1, -3, 5, 2).to_string(), "(1-3*sqrt(5))/2");
    }

    #[test]
    fn roots_of_quadratics() {
        let roots = quadratic_roots(&int(135), &int(101), &int(-20));
        assert_eq!(roots, vec![surd(-101, -1, 21001, 270), surd(-101, 1, 21001, 270)]);
        let roots = quadratic_roots(&int(1), &int(0), &int(-4));
        assert_eq!(roots, vec![QuadraticSurd::from_rational(&int(-2)), QuadraticSurd::from_rational(&int(2))]);
        assert!(quadratic_roots(&int(1), &int(0), &int(1)).is_empty());
    }
}
