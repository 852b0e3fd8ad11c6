//! A small exact rational on `i128`, reduced and sign-normalized.
//!
//! Used wherever thresholds and horoball diameters must be compared
//! without floating point.

use crate::arith::gcd_i128;
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i128,
    den: i128,
}

impl Rat {
    /// Reduced fraction `num/den`; panics on `den == 0`.
    pub fn new(num: i128, den: i128) -> Rat {
        assert!(den != 0, "zero denominator");
        let g = gcd_i128(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Rat { num, den }
    }

    pub fn integer(n: i128) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn recip(&self) -> Rat {
        Rat::new(self.den, self.num)
    }

    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::ops::Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat::new(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)
    }
}

impl std::ops::Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat::new(self.num * rhs.den - rhs.num * self.den, self.den * rhs.den)
    }
}

impl std::ops::Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl std::ops::Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(rhs.num != 0, "division by zero");
        Rat::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl std::ops::Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        // denominators positive, so cross-multiplication preserves order
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Parse "a/b", "a" or a decimal like "0.25" into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: i128 = a.trim().parse().ok()?;
        let den: i128 = b.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Rat::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') {
            -1
        } else {
            1
        };
        let int_part: i128 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let scale = 10i128.pow(frac.len() as u32);
        let frac_part: i128 = frac.parse().ok()?;
        return Some(Rat::new(int_part * scale + sign * frac_part, scale));
    }
    s.parse::<i128>().ok().map(Rat::integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(1, -2), Rat::new(-1, 2));
        assert_eq!(Rat::new(-3, -6), Rat::new(1, 2));
        assert_eq!(Rat::new(0, -5), Rat::ZERO);
    }

    #[test]
    fn ordering() {
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
        assert!(Rat::new(-1, 2) < Rat::new(1, 3));
        assert!(Rat::new(2, 5) < Rat::new(3, 5));
    }

    #[test]
    fn arithmetic() {
        let a = Rat::new(1, 6);
        let b = Rat::new(1, 3);
        assert_eq!(a + b, Rat::new(1, 2));
        assert_eq!(b - a, a);
        assert_eq!(a * b, Rat::new(1, 18));
        assert_eq!(b / a, Rat::integer(2));
        assert_eq!(Rat::new(7, 2).floor(), 3);
        assert_eq!(Rat::new(-7, 2).floor(), -4);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rat("1/40"), Some(Rat::new(1, 40)));
        assert_eq!(parse_rat("10"), Some(Rat::integer(10)));
        assert_eq!(parse_rat("0.25"), Some(Rat::new(1, 4)));
        assert_eq!(parse_rat("-0.5"), Some(Rat::new(-1, 2)));
        assert_eq!(parse_rat("1/0"), None);
    }
}
