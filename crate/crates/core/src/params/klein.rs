use std::fmt;

use serde::{Deserialize, Serialize};

/// Quadratic characters of `F^×`, a Klein four-group. Encoded as two
/// bits so that the product is XOR; `ω_ram1 · ω_ram2 = ω_nr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuadChar {
    #[serde(rename = "1")]
    One = 0,
    #[serde(rename = "nr")]
    Nr = 1,
    #[serde(rename = "ram1")]
    Ram1 = 2,
    #[serde(rename = "ram2")]
    Ram2 = 3,
}

impl std::ops::Mul for QuadChar {
    type Output = QuadChar;

    // The group law is XOR on the bit encoding.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: Self) -> Self {
        Self::from_bits(self as u8 ^ other as u8)
    }
}

impl QuadChar {
    pub const ALL: [QuadChar; 4] = [QuadChar::One, QuadChar::Nr, QuadChar::Ram1, QuadChar::Ram2];

    fn from_bits(b: u8) -> Self {
        Self::ALL[(b & 3) as usize]
    }

    pub fn pow(self, e: u64) -> Self {
        if e.is_multiple_of(2) {
            QuadChar::One
        } else {
            self
        }
    }

    pub fn product<I: IntoIterator<Item = QuadChar>>(it: I) -> Self {
        it.into_iter().fold(QuadChar::One, |a, b| a * b)
    }

    pub fn is_ramified(self) -> bool {
        matches!(self, QuadChar::Ram1 | QuadChar::Ram2)
    }
}

impl fmt::Display for QuadChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadChar::One => "1",
            QuadChar::Nr => "w_nr",
            QuadChar::Ram1 => "w_ram1",
            QuadChar::Ram2 => "w_ram2",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law() {
        use QuadChar::*;
        assert_eq!(Ram1 * Ram2, Nr);
        assert_eq!(Nr * Nr, One);
        assert_eq!(QuadChar::product([Nr, Ram1, Ram2]), One);
        for a in QuadChar::ALL {
            assert_eq!(a * a, One);
            assert_eq!(a.pow(3), a);
            for b in QuadChar::ALL {
                assert_eq!(a * b, b * a);
            }
        }
    }
}
