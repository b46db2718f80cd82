//! Deciding the ∂∂̄-property by independent criteria.

use std::fmt;
use std::str::FromStr;

use super::decompose::decompose;
use crate::cohomology::{bc_to_dolbeault_isomorphic, hodge_structure_check};
use crate::cohomology::froelicher::degenerates_at_e1;
use crate::complex::DoubleComplex;
use crate::error::ComplexError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    /// Every zigzag in the decomposition is a dot.
    Zigzag,
    /// `H_BC → H_∂̄` is an isomorphism at every bidegree.
    BcIso,
    /// `E_1` degeneration plus a pure Hodge structure in every degree.
    Hodge,
    /// Every applicable criterion; they must agree.
    All,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Zigzag => "zigzag",
            Method::BcIso => "bc-iso",
            Method::Hodge => "hodge",
            Method::All => "all",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zigzag" => Ok(Method::Zigzag),
            "bc-iso" => Ok(Method::BcIso),
            "hodge" => Ok(Method::Hodge),
            "all" => Ok(Method::All),
            _ => Err(format!("unknown method '{s}' (expected zigzag, bc-iso, hodge or all)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdbarVerdict {
    pub holds: bool,
    /// The criteria that were evaluated, in a fixed order.
    pub results: Vec<(Method, bool)>,
}

impl fmt::Display for DdbarVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.results.iter().map(|(m, _)| m.name()).collect();
        let answer = if self.holds { "YES" } else { "NO" };
        if names.len() == 1 {
            write!(f, "ddbar: {answer} ({})", names[0])
        } else {
            write!(f, "ddbar: {answer} ({} agree)", names.join(", "))
        }
    }
}

fn single(k: &DoubleComplex, method: Method) -> Result<bool, ComplexError> {
    Ok(match method {
        Method::Zigzag => decompose(k).only_dots(),
        Method::BcIso => bc_to_dolbeault_isomorphic(k),
        Method::Hodge => {
            if !k.has_real_structure() {
                return Err(ComplexError::NoRealStructure);
            }
            if !degenerates_at_e1(k) {
                return Ok(false);
            }
            match k.degree_range() {
                None => true,
                Some((lo, hi)) => {
                    let mut ok = true;
                    for t in lo..=hi {
                        if !hodge_structure_check(k, t)?.holds {
                            ok = false;
                            break;
                        }
                    }
                    ok
                }
            }
        }
        Method::All => unreachable!("expanded by the caller"),
    })
}

/// Evaluates the requested criterion. With [`Method::All`] the Hodge
/// criterion only runs when `k` has a real structure, and disagreement is
/// reported as an error.
pub fn is_ddbar(k: &DoubleComplex, method: Method) -> Result<DdbarVerdict, ComplexError> {
    let methods = match method {
        Method::All if k.has_real_structure() => vec![Method::Zigzag, Method::BcIso, Method::Hodge],
        Method::All => vec![Method::Zigzag, Method::BcIso],
        m => vec![m],
    };
    let mut results = Vec::new();
    for m in methods {
        results.push((m, single(k, m)?));
    }
    let holds = results[0].1;
    if results.iter().any(|(_, r)| *r != holds) {
        let detail: Vec<String> = results.iter().map(|(m, r)| format!("{m}={r}")).collect();
        return Err(ComplexError::CriteriaDisagree(detail.join(", ")));
    }
    Ok(DdbarVerdict { holds, results })
}
