//! Exact certificates that a rational equilateral set in ℓ1 has (or lacks) an
//! equidistant extra point.
//!
//! For each coordinate the distinct coordinates of the given points cut the
//! line into closed intervals; a choice of one interval per coordinate is a
//! cell, and inside a cell every distance `‖x − aⱼ‖₁` is affine in `x`. The
//! search walks the cells depth first over the coordinates. A partial
//! assignment is discarded when an exact LP relaxation has no solution: the
//! unassigned coordinates contribute unknown amounts `Rⱼ ≥ 0` that obey
//! `|Rᵢ − Rⱼ| ≤ Dᵢⱼ ≤ Rᵢ + Rⱼ`, where `Dᵢⱼ` is the ℓ1 distance of the points
//! restricted to those coordinates. Complete cells are solved exactly.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::solve_exact;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::{self, int, serde_rational, serde_rvec, serde_rvecs, RVec, Rational};

/// Largest dimension accepted without an explicit cell budget.
pub const DEFAULT_N_MAX: usize = 10;
/// Default number of LP solves before giving up.
pub const DEFAULT_CAP: u64 = 5_000_000;

/// Closed interval with optional infinite ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellInterval {
    #[serde(with = "opt_rational")]
    pub lo: Option<Rational>,
    #[serde(with = "opt_rational")]
    pub hi: Option<Rational>,
}

impl CellInterval {
    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| lo <= x) && self.hi.as_ref().is_none_or(|hi| x <= hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CellOutcome {
    Infeasible,
    /// The affine system is consistent but has no solution inside the cell;
    /// `solution` is one of its solutions.
    SolutionOutsideCell {
        #[serde(with = "serde_rvec")]
        solution: RVec,
    },
    SolutionInCell {
        #[serde(with = "serde_rvec")]
        witness: RVec,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    /// Interval index per coordinate, counted from the left.
    pub index: Vec<usize>,
    pub cell: Vec<CellInterval>,
    /// Row `j` holds the signs of `xₖ − aⱼₖ` on the cell.
    #[serde(with = "serde_rvecs")]
    pub matrix: Vec<RVec>,
    #[serde(with = "serde_rvec")]
    pub rhs: RVec,
    pub outcome: CellOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Maximal,
    Extendable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityCertificate {
    pub n: usize,
    #[serde(with = "serde_rvecs")]
    pub points: Vec<RVec>,
    #[serde(with = "serde_rational")]
    pub p: Rational,
    /// Every pairwise ℓ1 distance equals `p` exactly.
    pub distances_exact: bool,
    #[serde(with = "serde_rvecs")]
    pub breakpoints: Vec<RVec>,
    /// Product over coordinates of (breakpoints + 1).
    pub cell_count: u64,
    /// Cells whose affine system was solved.
    pub cells_solved: u64,
    /// Cells discarded together with a partial assignment.
    pub cells_pruned: u64,
    pub lp_solves: u64,
    /// Solved cells with a consistent system, in search order.
    pub reports: Vec<CellReport>,
    /// Distinct fifth points found, sorted.
    #[serde(with = "serde_rvecs")]
    pub witnesses: Vec<RVec>,
    pub verdict: Verdict,
}

/// Certificate for the four-point ℓ1 configuration in dimension `n` at distance 2.
pub fn l1_maximality_check(n: usize, cap: Option<u64>) -> Result<MaximalityCertificate> {
    if n < 4 {
        return Err(Error::input("the four-point configuration needs n >= 4"));
    }
    let points = crate::equilateral::petty_l1_points(n);
    l1_maximality_general(&points, &int(2), cap)
}

/// Decides whether some `x` has `‖x − aⱼ‖₁ = p` for all given points.
///
/// Dimensions above [`DEFAULT_N_MAX`] are accepted only with an explicit `cap`.
pub fn l1_maximality_general(points: &[RVec], p: &Rational, cap: Option<u64>) -> Result<MaximalityCertificate> {
    let m = points.len();
    if m < 2 {
        return Err(Error::input("need at least two points"));
    }
    let n = points[0].len();
    if n == 0 || points.iter().any(|a| a.len() != n) {
        return Err(Error::input("points must share a positive dimension"));
    }
    if n > DEFAULT_N_MAX && cap.is_none() {
        return Err(Error::input(format!(
            "dimension {n} exceeds {DEFAULT_N_MAX}; pass an explicit cell budget"
        )));
    }
    if !p.is_positive() {
        return Err(Error::input("distance must be positive"));
    }
    if !pairwise_exact(points, p) {
        return Err(Error::input(format!(
            "points are not pairwise at l1 distance {}",
            rational::format_rational(p)
        )));
    }
    let breakpoints = breakpoints(points);
    let cell_count = cell_count(&breakpoints);
    let mut search = Search {
        points,
        p,
        breaks: &breakpoints,
        cap: cap.unwrap_or(DEFAULT_CAP),
        lp_solves: 0,
        solved: 0,
        pruned: 0,
        reports: Vec::new(),
        witnesses: BTreeSet::new(),
        cell_count,
    };
    let mut index = Vec::with_capacity(n);
    search.descend(&mut index)?;
    let Search {
        solved,
        pruned,
        lp_solves,
        reports,
        witnesses,
        ..
    } = search;
    let witnesses: Vec<RVec> = witnesses.into_iter().collect();
    Ok(MaximalityCertificate {
        n,
        points: points.to_vec(),
        p: p.clone(),
        distances_exact: true,
        breakpoints,
        cell_count,
        cells_solved: solved,
        cells_pruned: pruned,
        lp_solves,
        reports,
        verdict: if witnesses.is_empty() {
            Verdict::Maximal
        } else {
            Verdict::Extendable
        },
        witnesses,
    })
}

struct Search<'a> {
    points: &'a [RVec],
    p: &'a Rational,
    breaks: &'a [RVec],
    cap: u64,
    lp_solves: u64,
    solved: u64,
    pruned: u64,
    reports: Vec<CellReport>,
    witnesses: BTreeSet<RVec>,
    cell_count: u64,
}

impl Search<'_> {
    fn descend(&mut self, index: &mut Vec<usize>) -> Result<()> {
        let n = self.breaks.len();
        let depth = index.len();
        if depth == n {
            self.solve_cell(index)?;
            return Ok(());
        }
        if depth > 0 && !self.relaxation_feasible(index)? {
            self.pruned += self.breaks[depth..].iter().map(|b| b.len() as u64 + 1).product::<u64>();
            return Ok(());
        }
        for j in 0..=self.breaks[depth].len() {
            index.push(j);
            self.descend(index)?;
            index.pop();
        }
        Ok(())
    }

    fn count_lp(&mut self) -> Result<()> {
        self.lp_solves += 1;
        if self.lp_solves > self.cap {
            return Err(Error::Budget {
                examined: (self.solved + self.pruned) as u128,
                total: self.cell_count as u128,
            });
        }
        Ok(())
    }

    fn relaxation_feasible(&mut self, index: &[usize]) -> Result<bool> {
        self.count_lp()?;
        let m = self.points.len();
        let d = index.len();
        let (rows, rhs) = linear_system(self.points, self.p, self.breaks, index);
        let mut lp = LinearProgram::<Rational>::new(d + m);
        for (k, &j) in index.iter().enumerate() {
            let iv = interval(&self.breaks[k], j);
            lp.set_bounds(k, iv.lo, iv.hi);
        }
        for i in 0..m {
            lp.set_bounds(d + i, Some(Rational::zero()), None);
            let mut row = rows[i].clone();
            row.extend((0..m).map(|l| if l == i { int(1) } else { Rational::zero() }));
            lp.add_row(row, Relation::Eq, rhs[i].clone());
        }
        for i in 0..m {
            for l in i + 1..m {
                let dist: Rational = (d..self.breaks.len())
                    .map(|k| (&self.points[i][k] - &self.points[l][k]).abs())
                    .sum();
                let pair = |ci: i64, cl: i64| -> Vec<Rational> {
                    let mut row = vec![Rational::zero(); d + m];
                    row[d + i] = int(ci);
                    row[d + l] = int(cl);
                    row
                };
                lp.add_row(pair(1, -1), Relation::Le, dist.clone());
                lp.add_row(pair(-1, 1), Relation::Le, dist.clone());
                lp.add_row(pair(1, 1), Relation::Ge, dist);
            }
        }
        Ok(lp.solve().is_feasible())
    }

    fn solve_cell(&mut self, index: &[usize]) -> Result<()> {
        self.solved += 1;
        let (matrix, rhs) = linear_system(self.points, self.p, self.breaks, index);
        let Some((solution, _)) = solve_exact(&matrix, &rhs) else {
            return Ok(());
        };
        let cell: Vec<CellInterval> = index
            .iter()
            .enumerate()
            .map(|(k, &j)| interval(&self.breaks[k], j))
            .collect();
        let outcome = if cell.iter().zip(&solution).all(|(iv, x)| iv.contains(x)) {
            CellOutcome::SolutionInCell { witness: solution }
        } else {
            self.count_lp()?;
            let mut lp = LinearProgram::<Rational>::new(index.len());
            for (k, iv) in cell.iter().enumerate() {
                lp.set_bounds(k, iv.lo.clone(), iv.hi.clone());
            }
            for (row, b) in matrix.iter().zip(&rhs) {
                lp.add_row(row.clone(), Relation::Eq, b.clone());
            }
            match lp.solve() {
                LpOutcome::Optimal { x, .. } => CellOutcome::SolutionInCell { witness: x },
                LpOutcome::Infeasible => CellOutcome::SolutionOutsideCell { solution },
                LpOutcome::Unbounded => return Err(Error::internal("feasibility LP reported unbounded")),
            }
        };
        if let CellOutcome::SolutionInCell { witness } = &outcome {
            self.witnesses.insert(witness.clone());
        }
        self.reports.push(CellReport {
            index: index.to_vec(),
            cell,
            matrix,
            rhs,
            outcome,
        });
        Ok(())
    }
}

fn pairwise_exact(points: &[RVec], p: &Rational) -> bool {
    (0..points.len()).all(|i| {
        (i + 1..points.len()).all(|j| &rational::l1_norm(&rational::sub(&points[i], &points[j])) == p)
    })
}

fn breakpoints(points: &[RVec]) -> Vec<RVec> {
    (0..points[0].len())
        .map(|k| {
            let set: BTreeSet<&Rational> = points.iter().map(|a| &a[k]).collect();
            set.into_iter().cloned().collect()
        })
        .collect()
}

fn cell_count(breaks: &[RVec]) -> u64 {
    breaks
        .iter()
        .map(|b| b.len() as u64 + 1)
        .fold(1u64, |acc, c| acc.saturating_mul(c))
}

/// Interval `j` of the arrangement: `(−∞, b₀]`, `[b₀, b₁]`, …, `[b_last, ∞)`.
fn interval(breaks: &[Rational], j: usize) -> CellInterval {
    CellInterval {
        lo: j.checked_sub(1).map(|i| breaks[i].clone()),
        hi: breaks.get(j).cloned(),
    }
}

/// Sign of `x − a` on interval `j`; `a` is one of the breakpoints.
fn sign_on(breaks: &[Rational], j: usize, a: &Rational) -> i64 {
    let s = breaks.iter().position(|b| b == a).expect("coordinate is a breakpoint");
    if s >= j {
        -1
    } else {
        1
    }
}

/// Rows `Σₖ sⱼₖ xₖ = p + Σₖ sⱼₖ aⱼₖ` over the assigned coordinates.
fn linear_system(points: &[RVec], p: &Rational, breaks: &[RVec], index: &[usize]) -> (Vec<RVec>, RVec) {
    let mut rows = Vec::with_capacity(points.len());
    let mut rhs = Vec::with_capacity(points.len());
    for a in points {
        let mut row = Vec::with_capacity(index.len());
        let mut b = p.clone();
        for (k, &j) in index.iter().enumerate() {
            let s = sign_on(&breaks[k], j, &a[k]);
            row.push(int(s));
            if s > 0 {
                b += &a[k];
            } else {
                b -= &a[k];
            }
        }
        rows.push(row);
        rhs.push(b);
    }
    (rows, rhs)
}

/// Outcome of re-checking a certificate from its own contents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub verdict: Verdict,
    pub reports_checked: usize,
    pub witnesses_checked: usize,
}

/// Re-derives the arrangement, re-substitutes every reported solution and
/// recomputes the verdict without running the search.
pub fn audit_certificate(cert: &MaximalityCertificate) -> Result<AuditReport> {
    let fail = |msg: String| Error::Input(format!("certificate audit failed: {msg}"));
    let points = &cert.points;
    if points.len() < 2 || points.iter().any(|a| a.len() != cert.n) {
        return Err(fail("point dimensions do not match n".into()));
    }
    if pairwise_exact(points, &cert.p) != cert.distances_exact || !cert.distances_exact {
        return Err(fail("pairwise distances are not all equal to p".into()));
    }
    let breaks = breakpoints(points);
    if breaks != cert.breakpoints {
        return Err(fail("breakpoints differ from the points' coordinates".into()));
    }
    if cell_count(&breaks) != cert.cell_count {
        return Err(fail("cell count differs from the arrangement".into()));
    }
    if cert.cells_solved + cert.cells_pruned != cert.cell_count {
        return Err(fail(format!(
            "{} solved + {} pruned cells do not cover {} cells",
            cert.cells_solved, cert.cells_pruned, cert.cell_count
        )));
    }
    let mut found = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for r in &cert.reports {
        if r.index.len() != cert.n || r.index.iter().zip(&breaks).any(|(&j, b)| j > b.len()) {
            return Err(fail(format!("malformed cell index {:?}", r.index)));
        }
        if !seen.insert(&r.index) {
            return Err(fail(format!("cell {:?} reported twice", r.index)));
        }
        let cell: Vec<CellInterval> = r.index.iter().zip(&breaks).map(|(&j, b)| interval(b, j)).collect();
        if cell != r.cell {
            return Err(fail(format!("cell bounds of {:?} do not match the arrangement", r.index)));
        }
        let (matrix, rhs) = linear_system(points, &cert.p, &breaks, &r.index);
        if matrix != r.matrix || rhs != r.rhs {
            return Err(fail(format!("linear system of cell {:?} does not match", r.index)));
        }
        let satisfies = |x: &RVec| {
            x.len() == cert.n && matrix.iter().zip(&rhs).all(|(row, b)| &rational::dot(row, x) == b)
        };
        match &r.outcome {
            CellOutcome::Infeasible => {
                if solve_exact(&matrix, &rhs).is_some() {
                    return Err(fail(format!("cell {:?} marked infeasible has a solution", r.index)));
                }
            }
            CellOutcome::SolutionOutsideCell { solution } => {
                if !satisfies(solution) || cell.iter().zip(solution).all(|(iv, x)| iv.contains(x)) {
                    return Err(fail(format!("outside-cell solution of {:?} is wrong", r.index)));
                }
            }
            CellOutcome::SolutionInCell { witness } => {
                let in_cell = cell.iter().zip(witness).all(|(iv, x)| iv.contains(x));
                let exact = points
                    .iter()
                    .all(|a| rational::l1_norm(&rational::sub(witness, a)) == cert.p);
                if !satisfies(witness) || !in_cell || !exact {
                    return Err(fail(format!("witness of cell {:?} does not check", r.index)));
                }
                found.insert(witness.clone());
            }
        }
    }
    let witnesses: Vec<RVec> = found.into_iter().collect();
    if witnesses != cert.witnesses {
        return Err(fail("witness list differs from the reported cells".into()));
    }
    let verdict = if witnesses.is_empty() {
        Verdict::Maximal
    } else {
        Verdict::Extendable
    };
    if verdict != cert.verdict {
        return Err(fail("verdict does not follow from the reports".into()));
    }
    Ok(AuditReport {
        verdict,
        reports_checked: cert.reports.len(),
        witnesses_checked: witnesses.len(),
    })
}

mod opt_rational {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{format_rational, ExactNum, Rational};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(format_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Ok(Option::<ExactNum>::deserialize(d)?.map(|e| e.0))
    }
}
