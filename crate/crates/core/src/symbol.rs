use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A spike symbol: `|` is logical one, `○` is logical zero.
///
/// Machine formats carry symbols as the integers `1` and `0`; the text
/// format uses the glyphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogicSymbol {
    Zero,
    One,
}

impl LogicSymbol {
    pub fn from_bool(b: bool) -> Self {
        if b {
            LogicSymbol::One
        } else {
            LogicSymbol::Zero
        }
    }

    pub fn is_one(self) -> bool {
        self == LogicSymbol::One
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn glyph(self) -> char {
        match self {
            LogicSymbol::One => '|',
            LogicSymbol::Zero => '○',
        }
    }
}

impl fmt::Display for LogicSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.glyph())
    }
}

impl FromStr for LogicSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1" | "|" => Ok(LogicSymbol::One),
            "0" | "○" | "o" | "O" => Ok(LogicSymbol::Zero),
            other => Err(Error::InvalidArgument(format!(
                "not a logic symbol: {other:?}"
            ))),
        }
    }
}

impl Serialize for LogicSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.bit())
    }
}

impl<'de> Deserialize<'de> for LogicSymbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match u8::deserialize(deserializer)? {
            0 => Ok(LogicSymbol::Zero),
            1 => Ok(LogicSymbol::One),
            n => Err(serde::de::Error::custom(format!(
                "logic symbol must be 0 or 1, got {n}"
            ))),
        }
    }
}

/// All `2^arity` input combinations in table order: grouped by descending
/// `|` count, and within a group descending with the first input as the
/// high bit. The all-`|` row comes first and the all-`○` row last.
pub fn enumerate_inputs(arity: usize) -> Vec<Vec<LogicSymbol>> {
    let mut codes: Vec<usize> = (0..1usize << arity).collect();
    codes.sort_by_key(|&c| std::cmp::Reverse((c.count_ones(), c)));
    codes
        .into_iter()
        .map(|code| {
            (0..arity)
                .map(|pos| LogicSymbol::from_bool(code >> (arity - 1 - pos) & 1 == 1))
                .collect()
        })
        .collect()
}

/// Parses a comma-separated symbol list such as `1,0,1`.
pub fn parse_sequence(s: &str) -> Result<Vec<LogicSymbol>, Error> {
    s.split(',').map(str::parse).collect()
}
