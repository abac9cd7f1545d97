//! Built-in list of generators of non-easy categories.
//!
//! Rows whose coefficients involve `√(d+1)` are stored specialized at
//! `d = 8, 15, 24`, where the root is 3, 4 and 5.

use crate::coeff::Coeff;
use crate::error::Result;
use crate::lincomb::LinComb;
use crate::parse::parse_expression;
use crate::poly::Q;

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    /// Row number in the list of candidate generators and the branch, if any.
    pub label: &'static str,
    /// Construction the generator is the image of.
    pub origin: &'static str,
    /// Loop parameter the coefficients were specialized at.
    pub fixed_delta: Option<i64>,
    pub expression: &'static str,
}

pub const ENTRIES: &[Entry] = &[
    Entry { label: "row 1", origin: "P(aaa)", fixed_delta: None, expression: "d^2*aaa - d*abb - d*aab - d*aba + 2*abc" },
    Entry {
        label: "row 2+ at d=8",
        origin: "V+(aaa)",
        fixed_delta: Some(8),
        expression: "-48*aaa + 4*abb + 4*aab + 4*aba + abc",
    },
    Entry { label: "row 2- at d=8", origin: "V-(aaa)", fixed_delta: Some(8), expression: "12*aaa - 2*abb - 2*aab - 2*aba + abc" },
    Entry {
        label: "row 2+ at d=15",
        origin: "V+(aaa)",
        fixed_delta: Some(15),
        expression: "-100*aaa + 5*abb + 5*aab + 5*aba + abc",
    },
    Entry {
        label: "row 2- at d=15",
        origin: "V-(aaa)",
        fixed_delta: Some(15),
        expression: "36*aaa - 3*abb - 3*aab - 3*aba + abc",
    },
    Entry {
        label: "row 2+ at d=24",
        origin: "V+(aaa)",
        fixed_delta: Some(24),
        expression: "-180*aaa + 6*abb + 6*aab + 6*aba + abc",
    },
    Entry {
        label: "row 2- at d=24",
        origin: "V-(aaa)",
        fixed_delta: Some(24),
        expression: "80*aaa - 4*abb - 4*aab - 4*aba + abc",
    },
    Entry {
        label: "row 3",
        origin: "T(aaaa)",
        fixed_delta: None,
        expression: "d^3*aaaa - 2*d^2*aaab - 2*d^2*abbb - 2*d^2*abaa - 2*d^2*aaba \
                     + 4*d*aabc + 4*d*abbc + 4*d*abcc + 4*d*abca + 4*d*abac + 4*d*abcb - 16*abcd",
    },
    Entry {
        label: "row 4+ at d=8",
        origin: "V+(aaaa)",
        fixed_delta: Some(8),
        expression: "4608*aaaa - 768*aaab - 768*abbb - 768*abaa - 768*aaba \
                     + 128*aabc + 128*abbc + 128*abcc + 128*abca + 128*abac + 128*abcb",
    },
    Entry {
        label: "row 4- at d=8",
        origin: "V-(aaaa)",
        fixed_delta: Some(8),
        expression: "4608*aaaa - 384*aaab - 384*abbb - 384*abaa - 384*aaba \
                     + 32*aabc + 32*abbc + 32*abcc + 32*abca + 32*abac + 32*abcb + 48*abcd",
    },
    Entry {
        label: "row 4+ at d=15",
        origin: "V+(aaaa)",
        fixed_delta: Some(15),
        expression: "54000*aaaa - 4500*aaab - 4500*abbb - 4500*abaa - 4500*aaba \
                     + 375*aabc + 375*abbc + 375*abcc + 375*abca + 375*abac + 375*abcb + 125*abcd",
    },
    Entry {
        label: "row 4- at d=15",
        origin: "V-(aaaa)",
        fixed_delta: Some(15),
        expression: "54000*aaaa - 2700*aaab - 2700*abbb - 2700*abaa - 2700*aaba \
                     + 135*aabc + 135*abbc + 135*abcc + 135*abca + 135*abac + 135*abcb + 189*abcd",
    },
    Entry {
        label: "row 4+ at d=24",
        origin: "V+(aaaa)",
        fixed_delta: Some(24),
        expression: "345600*aaaa - 17280*aaab - 17280*abbb - 17280*abaa - 17280*aaba \
                     + 864*aabc + 864*abbc + 864*abcc + 864*abca + 864*abac + 864*abcb + 432*abcd",
    },
    Entry {
        label: "row 4- at d=24",
        origin: "V-(aaaa)",
        fixed_delta: Some(24),
        expression: "345600*aaaa - 11520*aaab - 11520*abbb - 11520*abaa - 11520*aaba \
                     + 384*aabc + 384*abbc + 384*abcc + 384*abca + 384*abac + 384*abcb + 512*abcd",
    },
    Entry { label: "row 5", origin: "D(abab)", fixed_delta: None, expression: "d^2*abab - 2*d*abac - 2*d*abcb + 4*abcd" },
    Entry { label: "row 6", origin: "J(abab)", fixed_delta: None, expression: "abab - 2*aaaa" },
    Entry {
        label: "row 7",
        origin: "P(aaaa)",
        fixed_delta: None,
        expression: "aaaa - 1/d*aaab - 1/d*abbb - 1/d*abaa - 1/d*aaba + 1/d^2*abac + 1/d^2*abcb",
    },
];

impl Entry {
    pub fn generator(&self) -> Result<LinComb<Coeff>> {
        parse_expression(self.expression, &[])
    }

    pub fn has_square_root(&self) -> bool {
        self.fixed_delta.is_some()
    }

    /// The loop parameter to use: the fixed one, else `fallback` (symbolic if `None`).
    pub fn delta_for(&self, fallback: Option<&Q>) -> Option<Q> {
        match self.fixed_delta {
            Some(d) => Some(Q::from_integer(d.into())),
            None => fallback.cloned(),
        }
    }
}

/// The list in generator-file form, one commented block per entry.
pub fn builtin_text() -> String {
    let mut s = String::new();
    for e in ENTRIES {
        s.push_str(&format!("# {}: image of {}", e.label, e.origin));
        if let Some(d) = e.fixed_delta {
            s.push_str(&format!(", only valid for d = {d}"));
        }
        s.push('\n');
        s.push_str(&e.expression.split_whitespace().collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s
}
