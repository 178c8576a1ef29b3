use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

/// Exact dyadic rational `numerator / 2^exponent`, kept in lowest terms.
///
/// Arithmetic panics on `i128` overflow rather than rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse dyadic rational '{0}': expected m, m/d with d a power of two, or m/2^e")]
pub struct ParseDyadicError(pub String);

fn shl(num: i128, k: u32) -> i128 {
    if num == 0 {
        return 0;
    }
    assert!(k < 127, "dyadic overflow");
    num.checked_mul(1i128 << k).expect("dyadic overflow")
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: i128, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic { num: n as i128, exp: 0 }
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i32) -> Dyadic {
        if k >= 0 {
            Dyadic { num: shl(1, k as u32), exp: 0 }
        } else {
            Dyadic { num: 1, exp: k.unsigned_abs() }
        }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn to_integer(&self) -> Option<i64> {
        if self.exp == 0 {
            i64::try_from(self.num).ok()
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
    }

    /// `self * 2^k`.
    pub fn mul_pow2(self, k: i32) -> Dyadic {
        if k >= 0 {
            let k = k as u32;
            let drop = k.min(self.exp);
            Dyadic::new(shl(self.num, k - drop), self.exp - drop)
        } else {
            let exp = self.exp.checked_add(k.unsigned_abs()).expect("dyadic overflow");
            Dyadic::new(self.num, exp)
        }
    }

    /// The `k` with `self = other * 2^k`, if the ratio is a power of two.
    pub fn ratio_pow2(self, other: Dyadic) -> Option<i32> {
        if self.num == 0 || other.num == 0 {
            return None;
        }
        let (ta, tb) = (self.num.trailing_zeros(), other.num.trailing_zeros());
        if self.num >> ta != other.num >> tb {
            return None;
        }
        let ea = ta as i64 - self.exp as i64;
        let eb = tb as i64 - other.exp as i64;
        i32::try_from(ea - eb).ok()
    }

    fn aligned(self, other: Dyadic) -> (i128, i128, u32) {
        let e = self.exp.max(other.exp);
        (shl(self.num, e - self.exp), shl(other.num, e - other.exp), e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a.checked_add(b).expect("dyadic overflow"), e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic { num: self.num.checked_neg().expect("dyadic overflow"), exp: self.exp }
    }
}

impl std::ops::Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: Dyadic) -> Dyadic {
        let num = self.num.checked_mul(rhs.num).expect("dyadic overflow");
        Dyadic::new(num, self.exp.checked_add(rhs.exp).expect("dyadic overflow"))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

/// `m` for integers, otherwise `m/d` with `d = 2^e`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else if self.exp < 127 {
            write!(f, "{}/{}", self.num, 1i128 << self.exp)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDyadicError(s.to_string());
        let s = s.trim();
        let Some((n, d)) = s.split_once('/') else {
            return s.parse::<i128>().map(|n| Dyadic::new(n, 0)).map_err(|_| err());
        };
        let num: i128 = n.trim().parse().map_err(|_| err())?;
        let d = d.trim();
        let exp = if let Some(e) = d.strip_prefix("2^") {
            e.parse::<u32>().map_err(|_| err())?
        } else {
            let den: u128 = d.parse().map_err(|_| err())?;
            if den == 0 || !den.is_power_of_two() {
                return Err(err());
            }
            den.trailing_zeros()
        };
        Ok(Dyadic::new(num, exp))
    }
}
