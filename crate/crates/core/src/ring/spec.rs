use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::PrimeField;

/// One factor `M_n(GF(p))` of a product ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub n: usize,
    pub field: PrimeField,
}

/// A finite product `M_{n_1}(GF(p_1)) x ... x M_{n_k}(GF(p_k))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    components: Vec<Component>,
}

impl RingSpec {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Precondition(
                "a ring needs at least one component".into(),
            ));
        }
        if components.iter().any(|c| c.n == 0) {
            return Err(Error::Precondition("matrix size must be at least 1".into()));
        }
        Ok(Self { components })
    }

    /// `M_n(GF(p))`.
    pub fn matrix(n: usize, p: u32) -> Result<Self> {
        Self::new(vec![Component {
            n,
            field: PrimeField::new(p)?,
        }])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Height of the lattice of principal right ideals, i.e. `sum n_i`.
    pub fn length(&self) -> usize {
        self.components.iter().map(|c| c.n).sum()
    }

    /// Number of elements, or `None` if it does not fit in a `u128`.
    pub fn order(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for c in &self.components {
            let e = u32::try_from(c.n * c.n).ok()?;
            acc = acc.checked_mul((c.field.p() as u128).checked_pow(e)?)?;
        }
        Some(acc)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "M{}(F{})", c.n, c.field.p())?;
        }
        Ok(())
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Grammar: `M<n>(F<p>)` factors joined by `x`, e.g. `M2(F2)xM1(F3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut components = Vec::new();
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let number = |pos: &mut usize| -> Result<u32> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            s[start..*pos]
                .parse()
                .map_err(|_| err(start, "expected a number"))
        };
        let expect = |pos: &mut usize, ch: u8| -> Result<()> {
            if bytes.get(*pos) == Some(&ch) {
                *pos += 1;
                Ok(())
            } else {
                Err(err(*pos, &format!("expected `{}`", ch as char)))
            }
        };
        loop {
            expect(&mut pos, b'M')?;
            let n = number(&mut pos)?;
            expect(&mut pos, b'(')?;
            expect(&mut pos, b'F')?;
            let p_pos = pos;
            let p = number(&mut pos)?;
            let field = PrimeField::new(p)
                .map_err(|_| err(p_pos, &format!("{p} is not a supported prime")))?;
            expect(&mut pos, b')')?;
            if n == 0 {
                return Err(err(1, "matrix size must be at least 1"));
            }
            components.push(Component {
                n: n as usize,
                field,
            });
            if pos == bytes.len() {
                break;
            }
            expect(&mut pos, b'x')?;
        }
        Self::new(components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["M2(F2)", "M2(F2)xM3(F3)", "M1(F251)xM1(F2)xM4(F5)"] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        let spec: RingSpec = "M2(F2)xM3(F3)".parse().unwrap();
        assert_eq!(spec.length(), 5);
        assert_eq!(spec.order(), Some(16 * 3u128.pow(9)));
    }

    #[test]
    fn parse_errors_have_positions() {
        assert!(matches!(
            "M2(F4)".parse::<RingSpec>(),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            "M2F2".parse::<RingSpec>(),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            "M2(F2)x".parse::<RingSpec>(),
            Err(Error::Parse { pos: 7, .. })
        ));
        assert!("M0(F2)".parse::<RingSpec>().is_err());
        assert!("".parse::<RingSpec>().is_err());
    }
}
