//! Static description of the two achievable-region constraint sets and the
//! pre-elimination decoder-event system for user 1.
//!
//! Each right-hand side is a signed sum of conditional-mutual-information
//! terms; the same tables drive the numeric evaluation in [`crate::regions`]
//! and the symbolic elimination in [`crate::fm`].

/// One signed I(A ; B | C) term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MiTermSpec {
    pub sign: i8,
    pub a: &'static [&'static str],
    pub b: &'static [&'static str],
    pub c: &'static [&'static str],
}

impl MiTermSpec {
    /// Canonical symbol name, e.g. `I(U1,V1;Y1|U2,Q)`.
    pub fn symbol(&self) -> String {
        let part = |s: &[&str]| s.join(",");
        if self.c.is_empty() {
            format!("I({};{})", part(self.a), part(self.b))
        } else {
            format!("I({};{}|{})", part(self.a), part(self.b), part(self.c))
        }
    }
}

const fn pos(
    a: &'static [&'static str],
    b: &'static [&'static str],
    c: &'static [&'static str],
) -> MiTermSpec {
    MiTermSpec { sign: 1, a, b, c }
}

const fn neg(
    a: &'static [&'static str],
    b: &'static [&'static str],
    c: &'static [&'static str],
) -> MiTermSpec {
    MiTermSpec { sign: -1, a, b, c }
}

/// One rate inequality: `rates · (R10,R11,R20,R22) <= sum of terms`.
#[derive(Debug, Clone, Copy)]
pub struct ConstraintSpec {
    pub tag: &'static str,
    pub rates: [u8; 4],
    pub terms: &'static [MiTermSpec],
}

pub const RATE_NAMES: [&str; 4] = ["R10", "R11", "R20", "R22"];

const Q: &[&str] = &["Q"];

/// Simultaneous-encoding region: six inequalities per user.
pub const THEOREM1: [ConstraintSpec; 12] = [
    ConstraintSpec {
        tag: "T1-11",
        rates: [0, 1, 0, 0],
        terms: &[
            pos(&["U1"], &["U2"], Q),
            pos(&["U1", "U2"], &["V1"], Q),
            pos(&["V1"], &["Y1"], &["U1", "U2", "Q"]),
            neg(&["V1"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-12",
        rates: [1, 0, 0, 0],
        terms: &[
            pos(&["U1"], &["U2"], Q),
            pos(&["U1", "U2"], &["V1"], Q),
            pos(&["U1"], &["Y1"], &["V1", "U2", "Q"]),
            neg(&["U1"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-13",
        rates: [1, 1, 0, 0],
        terms: &[
            pos(&["U1"], &["U2"], Q),
            pos(&["U1", "U2"], &["V1"], Q),
            pos(&["U1", "V1"], &["Y1"], &["U2", "Q"]),
            neg(&["U1"], &["S"], Q),
            neg(&["V1"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-14",
        rates: [0, 1, 1, 0],
        terms: &[
            pos(&["U1"], &["U2"], Q),
            pos(&["U1", "U2"], &["V1"], Q),
            pos(&["V1", "U2"], &["Y1"], &["U1", "Q"]),
            neg(&["V1"], &["S"], Q),
            neg(&["U2"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-15",
        rates: [1, 0, 1, 0],
        terms: &[
            pos(&["U1"], &["U2"], Q),
            pos(&["U1", "U2"], &["V1"], Q),
            pos(&["U1", "U2"], &["Y1"], &["V1", "Q"]),
            neg(&["U1"], &["S"], Q),
            neg(&["U2"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-16",
        rates: [1, 1, 1, 0],
        terms: &[
            pos(&["U1"], &["U2"], Q),
            pos(&["U1", "U2"], &["V1"], Q),
            pos(&["U1", "V1", "U2"], &["Y1"], Q),
            neg(&["U1"], &["S"], Q),
            neg(&["V1"], &["S"], Q),
            neg(&["U2"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-21",
        rates: [0, 0, 0, 1],
        terms: &[
            pos(&["U2"], &["U1"], Q),
            pos(&["U2", "U1"], &["V2"], Q),
            pos(&["V2"], &["Y2"], &["U2", "U1", "Q"]),
            neg(&["V2"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-22",
        rates: [0, 0, 1, 0],
        terms: &[
            pos(&["U2"], &["U1"], Q),
            pos(&["U2", "U1"], &["V2"], Q),
            pos(&["U2"], &["Y2"], &["V2", "U1", "Q"]),
            neg(&["U2"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-23",
        rates: [0, 0, 1, 1],
        terms: &[
            pos(&["U2"], &["U1"], Q),
            pos(&["U2", "U1"], &["V2"], Q),
            pos(&["U2", "V2"], &["Y2"], &["U1", "Q"]),
            neg(&["U2"], &["S"], Q),
            neg(&["V2"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-24",
        rates: [1, 0, 0, 1],
        terms: &[
            pos(&["U2"], &["U1"], Q),
            pos(&["U2", "U1"], &["V2"], Q),
            pos(&["V2", "U1"], &["Y2"], &["U2", "Q"]),
            neg(&["V2"], &["S"], Q),
            neg(&["U1"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-25",
        rates: [1, 0, 1, 0],
        terms: &[
            pos(&["U2"], &["U1"], Q),
            pos(&["U2", "U1"], &["V2"], Q),
            pos(&["U2", "U1"], &["Y2"], &["V2", "Q"]),
            neg(&["U2"], &["S"], Q),
            neg(&["U1"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T1-26",
        rates: [1, 0, 1, 1],
        terms: &[
            pos(&["U2"], &["U1"], Q),
            pos(&["U2", "U1"], &["V2"], Q),
            pos(&["U2", "V2", "U1"], &["Y2"], Q),
            neg(&["U2"], &["S"], Q),
            neg(&["V2"], &["S"], Q),
            neg(&["U1"], &["S"], Q),
        ],
    },
];

/// Superposition-encoding region: four inequalities per user.
pub const THEOREM2: [ConstraintSpec; 8] = [
    ConstraintSpec {
        tag: "T2-11",
        rates: [0, 1, 0, 0],
        terms: &[
            pos(&["U1", "V1"], &["U2"], Q),
            pos(&["V1"], &["Y1"], &["U1", "U2", "Q"]),
            neg(&["V1"], &["S"], &["U1", "Q"]),
        ],
    },
    ConstraintSpec {
        tag: "T2-12",
        rates: [1, 1, 0, 0],
        terms: &[
            pos(&["U1", "V1"], &["U2"], Q),
            pos(&["U1", "V1"], &["Y1"], &["U2", "Q"]),
            neg(&["U1", "V1"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T2-13",
        rates: [0, 1, 1, 0],
        terms: &[
            pos(&["U1", "V1"], &["U2"], Q),
            pos(&["V1", "U2"], &["Y1"], &["U1", "Q"]),
            neg(&["V1"], &["S"], &["U1", "Q"]),
            neg(&["U2"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T2-14",
        rates: [1, 1, 1, 0],
        terms: &[
            pos(&["U1", "V1"], &["U2"], Q),
            pos(&["U1", "V1", "U2"], &["Y1"], Q),
            neg(&["U1", "V1"], &["S"], Q),
            neg(&["U2"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T2-21",
        rates: [0, 0, 0, 1],
        terms: &[
            pos(&["U2", "V2"], &["U1"], Q),
            pos(&["V2"], &["Y2"], &["U2", "U1", "Q"]),
            neg(&["V2"], &["S"], &["U2", "Q"]),
        ],
    },
    ConstraintSpec {
        tag: "T2-22",
        rates: [0, 0, 1, 1],
        terms: &[
            pos(&["U2", "V2"], &["U1"], Q),
            pos(&["U2", "V2"], &["Y2"], &["U1", "Q"]),
            neg(&["U2", "V2"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T2-23",
        rates: [1, 0, 0, 1],
        terms: &[
            pos(&["U2", "V2"], &["U1"], Q),
            pos(&["V2", "U1"], &["Y2"], &["U2", "Q"]),
            neg(&["V2"], &["S"], &["U2", "Q"]),
            neg(&["U1"], &["S"], Q),
        ],
    },
    ConstraintSpec {
        tag: "T2-24",
        rates: [1, 0, 1, 1],
        terms: &[
            pos(&["U2", "V2"], &["U1"], Q),
            pos(&["U2", "V2", "U1"], &["Y2"], Q),
            neg(&["U2", "V2"], &["S"], Q),
            neg(&["U1"], &["S"], Q),
        ],
    },
];

/// A decoder-event bound in the pre-elimination user-1 system.
/// `lhs` runs over `(R10, R11, R20, R10', R11', R20')`.
#[derive(Debug, Clone, Copy)]
pub struct EventRowSpec {
    pub tag: &'static str,
    pub lhs: [u8; 6],
    pub terms: &'static [MiTermSpec],
}

pub const EVENT_VAR_NAMES: [&str; 6] = ["R10", "R11", "R20", "R10'", "R11'", "R20'"];

const C1: [MiTermSpec; 2] = [pos(&["U1"], &["U2"], Q), pos(&["U1", "U2"], &["V1"], Q)];

macro_rules! event_terms {
    ($($mi:expr),*) => {
        &[C1[0], C1[1], $($mi),*]
    };
}

/// The fifteen joint-typicality error-event bounds at decoder 1, before the
/// redundant ones are dropped.
pub const EVENT_SYSTEM_USER1: [EventRowSpec; 15] = [
    EventRowSpec {
        tag: "xi31",
        lhs: [0, 1, 0, 0, 1, 0],
        terms: event_terms!(pos(&["V1"], &["Y1"], &["U1", "U2", "Q"])),
    },
    EventRowSpec {
        tag: "xi32",
        lhs: [0, 1, 0, 0, 1, 1],
        terms: event_terms!(pos(&["V1", "U2"], &["Y1"], &["U1", "Q"])),
    },
    EventRowSpec {
        tag: "xi33",
        lhs: [0, 1, 0, 1, 1, 0],
        terms: event_terms!(pos(&["U1", "V1"], &["Y1"], &["U2", "Q"])),
    },
    EventRowSpec {
        tag: "xi34",
        lhs: [0, 1, 0, 1, 1, 1],
        terms: event_terms!(pos(&["U1", "V1", "U2"], &["Y1"], Q)),
    },
    EventRowSpec {
        tag: "xi41",
        lhs: [1, 0, 0, 1, 0, 0],
        terms: event_terms!(pos(&["U1"], &["Y1"], &["V1", "U2", "Q"])),
    },
    EventRowSpec {
        tag: "xi42",
        lhs: [1, 0, 0, 1, 0, 1],
        terms: event_terms!(pos(&["U1", "U2"], &["Y1"], &["V1", "Q"])),
    },
    EventRowSpec {
        tag: "xi43",
        lhs: [1, 0, 0, 1, 1, 0],
        terms: event_terms!(pos(&["U1", "V1"], &["Y1"], &["U2", "Q"])),
    },
    EventRowSpec {
        tag: "xi44",
        lhs: [1, 0, 0, 1, 1, 1],
        terms: event_terms!(pos(&["U1", "V1", "U2"], &["Y1"], Q)),
    },
    EventRowSpec {
        tag: "xi51",
        lhs: [1, 1, 0, 1, 1, 0],
        terms: event_terms!(pos(&["U1", "V1"], &["Y1"], &["U2", "Q"])),
    },
    EventRowSpec {
        tag: "xi52",
        lhs: [1, 1, 0, 1, 1, 1],
        terms: event_terms!(pos(&["U1", "V1", "U2"], &["Y1"], Q)),
    },
    EventRowSpec {
        tag: "xi61",
        lhs: [0, 1, 1, 0, 1, 1],
        terms: event_terms!(pos(&["V1", "U2"], &["Y1"], &["U1", "Q"])),
    },
    EventRowSpec {
        tag: "xi62",
        lhs: [0, 1, 1, 1, 1, 1],
        terms: event_terms!(pos(&["U1", "V1", "U2"], &["Y1"], Q)),
    },
    EventRowSpec {
        tag: "xi71",
        lhs: [1, 0, 1, 1, 0, 1],
        terms: event_terms!(pos(&["U1", "U2"], &["Y1"], &["V1", "Q"])),
    },
    EventRowSpec {
        tag: "xi72",
        lhs: [1, 0, 1, 1, 1, 1],
        terms: event_terms!(pos(&["U1", "V1", "U2"], &["Y1"], Q)),
    },
    EventRowSpec {
        tag: "xi8",
        lhs: [1, 1, 1, 1, 1, 1],
        terms: event_terms!(pos(&["U1", "V1", "U2"], &["Y1"], Q)),
    },
];

/// Redundancies stated in the error analysis: `(removed, implied_by)`.
pub const EVENT_IMPLICATIONS: [(&str, &str); 9] = [
    ("xi32", "xi61"),
    ("xi33", "xi51"),
    ("xi42", "xi71"),
    ("xi43", "xi51"),
    ("xi34", "xi8"),
    ("xi44", "xi8"),
    ("xi52", "xi8"),
    ("xi62", "xi8"),
    ("xi72", "xi8"),
];

/// Which coding scheme a constraint set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Simultaneous,
    Superposition,
}

impl Scheme {
    pub fn constraints(self) -> &'static [ConstraintSpec] {
        match self {
            Scheme::Simultaneous => &THEOREM1,
            Scheme::Superposition => &THEOREM2,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Scheme::Simultaneous),
            2 => Some(Scheme::Superposition),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Scheme::Simultaneous => 1,
            Scheme::Superposition => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn event_rows_share_mi_parts_as_claimed() {
        // xi33 and xi51 carry the same MI part as T1-13's positive terms;
        // xi32 matches xi61; xi42 matches xi71; the five rows implied by xi8
        // all carry T1-16's positive part.
        let by_tag = |t: &str| {
            EVENT_SYSTEM_USER1
                .iter()
                .find(|r| r.tag == t)
                .unwrap()
                .terms
                .iter()
                .map(|m| (m.sign, m.symbol()))
                .collect::<Vec<_>>()
        };
        assert_eq!(by_tag("xi33"), by_tag("xi51"));
        assert_eq!(by_tag("xi43"), by_tag("xi51"));
        assert_eq!(by_tag("xi32"), by_tag("xi61"));
        assert_eq!(by_tag("xi42"), by_tag("xi71"));
        for t in ["xi34", "xi44", "xi52", "xi62", "xi72"] {
            assert_eq!(by_tag(t), by_tag("xi8"));
        }
        let t1_13_pos: Vec<String> = THEOREM1[2]
            .terms
            .iter()
            .filter(|m| m.sign > 0)
            .map(|m| m.symbol())
            .collect();
        let xi51_syms: Vec<String> = by_tag("xi51").iter().map(|(_, s)| s.clone()).collect();
        assert_eq!(t1_13_pos, xi51_syms);
    }

    #[test]
    fn symbols_render_canonically() {
        let t = pos(&["U1", "V1"], &["Y1"], &["U2", "Q"]);
        assert_eq!(t.symbol(), "I(U1,V1;Y1|U2,Q)");
        let u = pos(&["X"], &["Y"], &[]);
        assert_eq!(u.symbol(), "I(X;Y)");
    }
}
