//! The four cohomologies of a double complex, natural maps between them, the
//! Frölicher spectral sequence and Hodge filtrations.

pub mod froelicher;
pub mod hodge;
pub mod natural;
pub mod total;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complex::{Bidegree, DoubleComplex};
use crate::linalg::{ExactMatrix, Quotient, Subspace};

pub use froelicher::{froelicher, SpectralSequenceData};
pub use hodge::{hodge_filtration, hodge_structure_check, FiltrationData, HodgeCheck};
pub use natural::{bc_to_dolbeault_isomorphic, induced_map, is_e1_quasi_iso, natural_maps, MapKind, NaturalMap, NaturalMapReport};
pub use total::{de_rham, Totalization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theory {
    BottChern,
    Aeppli,
    Dolbeault,
    ConjugateDolbeault,
    DeRham,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::BottChern => "bott-chern",
            Theory::Aeppli => "aeppli",
            Theory::Dolbeault => "dolbeault",
            Theory::ConjugateDolbeault => "conjugate-dolbeault",
            Theory::DeRham => "de-rham",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dimensions of a bigraded cohomology, recorded at every bidegree of the
/// complex's support (zeros included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub theory: Theory,
    pub dims: BTreeMap<Bidegree, usize>,
}

impl CohomologyTable {
    pub fn get(&self, b: Bidegree) -> usize {
        self.dims.get(&b).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// `Σ_{p+q=k} dim`.
    pub fn diagonal_sum(&self, k: i64) -> usize {
        self.dims.iter().filter(|(b, _)| b.total() == k).map(|(_, d)| d).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.values().all(|d| *d == 0)
    }

    /// Nonzero entries only.
    pub fn support(&self) -> BTreeMap<Bidegree, usize> {
        self.dims.iter().filter(|(_, d)| **d > 0).map(|(b, d)| (*b, *d)).collect()
    }
}

/// Betti numbers `b_k` for every `k` in the complex's degree range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiNumbers {
    pub dims: BTreeMap<i64, usize>,
}

impl BettiNumbers {
    pub fn get(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(k, d)| if k % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum()
    }
}

fn table(k: &DoubleComplex, theory: Theory, dim_at: impl Fn(Bidegree) -> usize) -> CohomologyTable {
    CohomologyTable { theory, dims: k.support().map(|b| (b, dim_at(b))).collect() }
}

fn rank_of_stack(top: &ExactMatrix, bottom: &ExactMatrix) -> usize {
    top.vstack(bottom).expect("same source").rank()
}

/// `H^q(K^{p,•}, d2)`.
pub fn dolbeault(k: &DoubleComplex) -> CohomologyTable {
    table(k, Theory::Dolbeault, |b| k.dim(b) - k.d2(b).rank() - k.d2(b.offset(0, -1)).rank())
}

/// `H^p(K^{•,q}, d1)`.
pub fn conjugate_dolbeault(k: &DoubleComplex) -> CohomologyTable {
    table(k, Theory::ConjugateDolbeault, |b| k.dim(b) - k.d1(b).rank() - k.d1(b.offset(-1, 0)).rank())
}

/// `(ker d1 ∩ ker d2) / im d1d2`.
pub fn bott_chern(k: &DoubleComplex) -> CohomologyTable {
    table(k, Theory::BottChern, |b| {
        k.dim(b) - rank_of_stack(&k.d1(b), &k.d2(b)) - k.d1d2(b.offset(-1, -1)).rank()
    })
}

/// `ker d1d2 / (im d1 + im d2)`.
pub fn aeppli(k: &DoubleComplex) -> CohomologyTable {
    table(k, Theory::Aeppli, |b| {
        let into = k.d1(b.offset(-1, 0)).hstack(&k.d2(b.offset(0, -1))).expect("same target");
        k.dim(b) - k.d1d2(b).rank() - into.rank()
    })
}

pub fn bigraded(k: &DoubleComplex, theory: Theory) -> CohomologyTable {
    match theory {
        Theory::BottChern => bott_chern(k),
        Theory::Aeppli => aeppli(k),
        Theory::Dolbeault => dolbeault(k),
        Theory::ConjugateDolbeault => conjugate_dolbeault(k),
        Theory::DeRham => panic!("de Rham cohomology is graded by total degree"),
    }
}

/// All five tables of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllTables {
    pub bott_chern: CohomologyTable,
    pub aeppli: CohomologyTable,
    pub dolbeault: CohomologyTable,
    pub conjugate_dolbeault: CohomologyTable,
    pub de_rham: BettiNumbers,
}

pub fn all_tables(k: &DoubleComplex) -> AllTables {
    AllTables {
        bott_chern: bott_chern(k),
        aeppli: aeppli(k),
        dolbeault: dolbeault(k),
        conjugate_dolbeault: conjugate_dolbeault(k),
        de_rham: de_rham(k),
    }
}

/// The cohomology group at `b` as an explicit quotient of subspaces of `K^b`.
pub fn cohomology_quotient(k: &DoubleComplex, theory: Theory, b: Bidegree) -> Quotient {
    let n = k.dim(b);
    let (num, den) = match theory {
        Theory::Dolbeault => (k.d2(b).kernel(), k.d2(b.offset(0, -1)).image()),
        Theory::ConjugateDolbeault => (k.d1(b).kernel(), k.d1(b.offset(-1, 0)).image()),
        Theory::BottChern => (
            k.d1(b).vstack(&k.d2(b)).expect("same source").kernel(),
            k.d1d2(b.offset(-1, -1)).image(),
        ),
        Theory::Aeppli => (
            k.d1d2(b).kernel(),
            k.d1(b.offset(-1, 0)).hstack(&k.d2(b.offset(0, -1))).expect("same target").image(),
        ),
        Theory::DeRham => panic!("de Rham cohomology is graded by total degree"),
    };
    debug_assert_eq!(num.ambient(), n);
    let den = if den.ambient() == n { den } else { Subspace::zero(n) };
    Quotient::new(&num, &den).expect("image lies in kernel")
}
