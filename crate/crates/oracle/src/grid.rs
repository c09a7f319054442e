//! Grid verification of identities: both sides are evaluated exactly at
//! every point of a box of integer parameters.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::{BiLaurent, QPoly};
use crate::sums::{
    boundary_closed_form, eq52_closed_form, euler_sides, g_poly, jacobi_sides, p_poly, rhs_double,
    rhs_single,
};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// The identities known to the grid verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identity {
    /// `g_{i,j,k}(L1, L2, M) = p_{i,j,k}(L1, L2, M)`.
    #[serde(rename = "eq1.15")]
    Eq1_15,
    /// `g(L, L, M) = p(L, L, M) = ` the double bounded right side.
    #[serde(rename = "eq1.11")]
    Eq1_11,
    /// `g(L, L, L) = ` double bounded right side at `M = L` `=`
    /// `q^{T_i+T_j+T_k} [L-k, i] [L-i, j] [L-j, k]`.
    #[serde(rename = "eq1.14")]
    Eq1_14,
    /// `g(L1, i+j-1, M) = p(L1, i+j-1, M)`.
    #[serde(rename = "boundary_g=p_bound")]
    BoundaryGpBound,
    /// `g(i+j-1, i+j-1, M) = δ_{i,0} δ_{j,0} q^{T_k} [M-i-j, k]`.
    #[serde(rename = "boundary_bound2")]
    BoundaryBound2,
    /// `g(L1, L2, M) = g(L1-1, L2, M) + q^{L1} g_{i-1,j,k}(L1-1, L2-1, M-1)`.
    #[serde(rename = "eq5.1")]
    Eq5_1,
    /// `g(i-1, L2, M) = q^{i(M+2)-T_i+T_{j-i}+T_{k-i}} [L2-i, j-i] [L2-j, i] [M-i-j, k-i]`.
    #[serde(rename = "eq5.2")]
    Eq5_2,
    /// The finite Jacobi identity.
    #[serde(rename = "finiteJac")]
    FiniteJac,
    /// The finite Euler identity.
    #[serde(rename = "finiteEuler")]
    FiniteEuler,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Eq1_15,
        Identity::Eq1_11,
        Identity::Eq1_14,
        Identity::BoundaryGpBound,
        Identity::BoundaryBound2,
        Identity::Eq5_1,
        Identity::Eq5_2,
        Identity::FiniteJac,
        Identity::FiniteEuler,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Eq1_15 => "eq1.15",
            Identity::Eq1_11 => "eq1.11",
            Identity::Eq1_14 => "eq1.14",
            Identity::BoundaryGpBound => "boundary_g=p_bound",
            Identity::BoundaryBound2 => "boundary_bound2",
            Identity::Eq5_1 => "eq5.1",
            Identity::Eq5_2 => "eq5.2",
            Identity::FiniteJac => "finiteJac",
            Identity::FiniteEuler => "finiteEuler",
        }
    }

    /// Parameter names, in grid order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Identity::Eq1_15 | Identity::Eq5_1 => &["i", "j", "k", "L1", "L2", "M"],
            Identity::Eq1_11 => &["i", "j", "k", "L", "M"],
            Identity::Eq1_14 => &["i", "j", "k", "L"],
            Identity::BoundaryGpBound => &["i", "j", "k", "L1", "M"],
            Identity::BoundaryBound2 => &["i", "j", "k", "M"],
            Identity::Eq5_2 => &["i", "j", "k", "L2", "M"],
            Identity::FiniteJac | Identity::FiniteEuler => &["L"],
        }
    }

    /// The default grid: `i, j, k ∈ [0, 3]`, the bounds `L*, M ∈ [-2, 7]`;
    /// `L ∈ [0, 8]` for the finite Jacobi and Euler identities.
    pub fn default_grid(self) -> GridSpec {
        let ranges = self
            .params()
            .iter()
            .map(|&p| {
                let (lo, hi) = match p {
                    "i" | "j" | "k" => (0, 3),
                    _ if matches!(self, Identity::FiniteJac | Identity::FiniteEuler) => (0, 8),
                    _ => (-2, 7),
                };
                (p.to_string(), lo, hi)
            })
            .collect();
        GridSpec { ranges }
    }

    /// Both sides at a point (values in grid order). Sides that are chains
    /// of equalities compare every member with the first.
    fn sides(self, v: &[i64]) -> Vec<BiLaurent> {
        let q = |p: QPoly| BiLaurent::from(&p);
        match self {
            Identity::Eq1_15 => vec![q(g_poly(v[0], v[1], v[2], v[3], v[4], v[5])), q(p_poly(v[0], v[1], v[2], v[3], v[4], v[5]))],
            Identity::Eq1_11 => {
                let (i, j, k, l, m) = (v[0], v[1], v[2], v[3], v[4]);
                vec![q(g_poly(i, j, k, l, l, m)), q(p_poly(i, j, k, l, l, m)), q(rhs_double(i, j, k, l, m))]
            }
            Identity::Eq1_14 => {
                let (i, j, k, l) = (v[0], v[1], v[2], v[3]);
                vec![q(g_poly(i, j, k, l, l, l)), q(rhs_double(i, j, k, l, l)), q(rhs_single(i, j, k, l))]
            }
            Identity::BoundaryGpBound => {
                let (i, j, k, l1, m) = (v[0], v[1], v[2], v[3], v[4]);
                vec![q(g_poly(i, j, k, l1, i + j - 1, m)), q(p_poly(i, j, k, l1, i + j - 1, m))]
            }
            Identity::BoundaryBound2 => {
                let (i, j, k, m) = (v[0], v[1], v[2], v[3]);
                vec![q(g_poly(i, j, k, i + j - 1, i + j - 1, m)), q(boundary_closed_form(i, j, k, m))]
            }
            Identity::Eq5_1 => {
                let (i, j, k, l1, l2, m) = (v[0], v[1], v[2], v[3], v[4], v[5]);
                let rhs = &g_poly(i, j, k, l1 - 1, l2, m) + &g_poly(i - 1, j, k, l1 - 1, l2 - 1, m - 1).shift(l1);
                vec![q(g_poly(i, j, k, l1, l2, m)), q(rhs)]
            }
            Identity::Eq5_2 => {
                let (i, j, k, l2, m) = (v[0], v[1], v[2], v[3], v[4]);
                vec![q(g_poly(i, j, k, i - 1, l2, m)), q(eq52_closed_form(i, j, k, l2, m))]
            }
            Identity::FiniteJac => {
                let (l, r) = jacobi_sides(v[0]);
                vec![l, r]
            }
            Identity::FiniteEuler => {
                let (l, r) = euler_sides(v[0]);
                vec![q(l), q(r)]
            }
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Identity::ALL.iter().map(|i| i.name()).collect();
                format!("unknown identity {s:?}; known: {}", known.join(", "))
            })
    }
}

/// Inclusive integer ranges per parameter, written `i=0..3,L1=-2..7`
/// (a single value `k=2` is the range `2..2`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub ranges: Vec<(String, i64, i64)>,
}

impl GridSpec {
    /// Number of grid points.
    pub fn size(&self) -> u64 {
        self.ranges.iter().map(|(_, lo, hi)| (hi - lo + 1).max(0) as u64).product()
    }

    /// The points in lexicographic order (first parameter slowest).
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &(_, lo, hi) in &self.ranges {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (lo..=hi).map(move |x| {
                        let mut p = p.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Replaces the ranges of the named parameters; parameters not in
    /// `overrides` keep their range.
    pub fn with(&self, overrides: &GridSpec) -> Result<GridSpec, String> {
        let mut out = self.clone();
        for (name, lo, hi) in &overrides.ranges {
            let slot = out
                .ranges
                .iter_mut()
                .find(|(n, _, _)| n == name)
                .ok_or_else(|| format!("unknown grid parameter {name:?}"))?;
            *slot = (name.clone(), *lo, *hi);
        }
        Ok(out)
    }
}

impl FromStr for GridSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut ranges = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, range) = part.split_once('=').ok_or_else(|| format!("expected NAME=LO..HI, got {part:?}"))?;
            let int = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?} in {part:?}: {e}"));
            let (lo, hi) = match range.split_once("..") {
                Some((lo, hi)) => (int(lo)?, int(hi)?),
                None => (int(range)?, int(range)?),
            };
            if lo > hi {
                return Err(format!("empty range in {part:?}"));
            }
            let name = name.trim().to_string();
            if ranges.iter().any(|(n, _, _): &(String, i64, i64)| n == &name) {
                return Err(format!("parameter {name:?} given twice"));
            }
            ranges.push((name, lo, hi));
        }
        if ranges.is_empty() {
            return Err("empty grid specification".into());
        }
        Ok(GridSpec { ranges })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranges.iter().map(|(n, lo, hi)| format!("{n}={lo}..{hi}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// The first point where the sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub point: Vec<(String, i64)>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The outcome of a grid verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReport {
    pub schema_version: u32,
    pub identity: Identity,
    pub grid: String,
    pub status: Status,
    pub points: u64,
    pub mismatches: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for GridReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{} on {}: all {} points agree", self.identity, self.grid, self.points),
            Some(c) => {
                let at: Vec<String> = c.point.iter().map(|(n, v)| format!("{n}={v}")).collect();
                write!(
                    f,
                    "{} on {}: {} of {} points differ; first at {}: {} != {}",
                    self.identity,
                    self.grid,
                    self.mismatches,
                    self.points,
                    at.join(", "),
                    c.lhs,
                    c.rhs
                )
            }
        }
    }
}

/// Evaluates both sides of `identity` at every point of `grid` (which must
/// name exactly the identity's parameters, in any order).
pub fn verify_grid(identity: Identity, grid: &GridSpec) -> Result<GridReport, String> {
    let params = identity.params();
    let mut order = Vec::with_capacity(params.len());
    for p in params {
        let idx = grid
            .ranges
            .iter()
            .position(|(n, _, _)| n == p)
            .ok_or_else(|| format!("{identity} needs a range for {p}"))?;
        order.push(idx);
    }
    if let Some((n, _, _)) = grid.ranges.iter().find(|(n, _, _)| !params.contains(&n.as_str())) {
        return Err(format!("{identity} has no parameter {n}"));
    }
    if matches!(identity, Identity::FiniteJac | Identity::FiniteEuler) && grid.ranges[0].1 < 0 {
        return Err(format!("{identity} needs L >= 0"));
    }
    let points = grid.points();
    let failures: Vec<Option<Counterexample>> = points
        .par_iter()
        .map(|p| {
            let v: Vec<i64> = order.iter().map(|&i| p[i]).collect();
            let sides = identity.sides(&v);
            sides.iter().skip(1).find(|s| **s != sides[0]).map(|other| Counterexample {
                point: grid.ranges.iter().zip(p).map(|((n, _, _), &x)| (n.clone(), x)).collect(),
                lhs: sides[0].to_string(),
                rhs: other.to_string(),
            })
        })
        .collect();
    let mismatches = failures.iter().filter(|f| f.is_some()).count() as u64;
    let counterexample = failures.into_iter().flatten().next();
    Ok(GridReport {
        schema_version: REPORT_SCHEMA_VERSION,
        identity,
        grid: grid.to_string(),
        status: if counterexample.is_none() { Status::Pass } else { Status::Fail },
        points: points.len() as u64,
        mismatches,
        counterexample,
    })
}
