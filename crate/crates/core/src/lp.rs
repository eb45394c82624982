//! Dense two-phase simplex with Bland's rule.
//!
//! Generic over the scalar: [`Rational`] gives exact answers (no tolerance
//! anywhere), `f64` runs the same pivoting with a guarded zero test.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

pub trait LpScalar: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn lt(&self, o: &Self) -> bool;
}

impl LpScalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as num_traits::One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

const F64_EPS: f64 = 1e-11;

impl LpScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        self.abs() <= F64_EPS
    }
    fn is_pos(&self) -> bool {
        *self > F64_EPS
    }
    fn is_neg(&self) -> bool {
        *self < -F64_EPS
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

impl<T> LpOutcome<T> {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// `minimize objective·x` subject to row constraints and per-variable bounds.
/// Variables are free unless bounded.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    num_vars: usize,
    lower: Vec<Option<T>>,
    upper: Vec<Option<T>>,
    objective: Vec<T>,
    rows: Vec<(Vec<T>, Relation, T)>,
}

impl<T: LpScalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            lower: vec![None; num_vars],
            upper: vec![None; num_vars],
            objective: vec![T::zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn set_bounds(&mut self, var: usize, lo: Option<T>, hi: Option<T>) -> &mut Self {
        self.lower[var] = lo;
        self.upper[var] = hi;
        self
    }

    pub fn set_objective(&mut self, c: Vec<T>) -> &mut Self {
        assert_eq!(c.len(), self.num_vars);
        self.objective = c;
        self
    }

    pub fn add_row(&mut self, coeffs: Vec<T>, rel: Relation, rhs: T) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.rows.push((coeffs, rel, rhs));
        self
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn solve(&self) -> LpOutcome<T> {
        // Standard form: every user variable becomes offset + Σ sign·y, y ≥ 0.
        enum Map<T> {
            Shift(T, usize),
            Flip(T, usize),
            Split(usize, usize),
        }
        let mut cols = 0usize;
        let mut maps = Vec::with_capacity(self.num_vars);
        let mut extra_rows: Vec<(usize, T)> = Vec::new();
        for k in 0..self.num_vars {
            match (&self.lower[k], &self.upper[k]) {
                (Some(l), hi) => {
                    if let Some(u) = hi {
                        let w = u.sub(l);
                        if w.is_neg() {
                            return LpOutcome::Infeasible;
                        }
                        extra_rows.push((cols, w));
                    }
                    maps.push(Map::Shift(l.clone(), cols));
                    cols += 1;
                }
                (None, Some(u)) => {
                    maps.push(Map::Flip(u.clone(), cols));
                    cols += 1;
                }
                (None, None) => {
                    maps.push(Map::Split(cols, cols + 1));
                    cols += 2;
                }
            }
        }
        let n_struct = cols;
        let mut a_rows: Vec<(Vec<T>, Relation, T)> = Vec::new();
        for (coeffs, rel, rhs) in &self.rows {
            let mut row = vec![T::zero(); n_struct];
            let mut b = rhs.clone();
            for (k, a) in coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                match &maps[k] {
                    Map::Shift(l, c) => {
                        row[*c] = row[*c].add(a);
                        b = b.sub(&a.mul(l));
                    }
                    Map::Flip(u, c) => {
                        row[*c] = row[*c].sub(a);
                        b = b.sub(&a.mul(u));
                    }
                    Map::Split(p, q) => {
                        row[*p] = row[*p].add(a);
                        row[*q] = row[*q].sub(a);
                    }
                }
            }
            a_rows.push((row, *rel, b));
        }
        for (c, w) in extra_rows {
            let mut row = vec![T::zero(); n_struct];
            row[c] = T::one();
            a_rows.push((row, Relation::Le, w));
        }
        let n_slack = a_rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n = n_struct + n_slack;
        let mut a = Vec::with_capacity(a_rows.len());
        let mut b = Vec::with_capacity(a_rows.len());
        let mut s = n_struct;
        for (mut row, rel, rhs) in a_rows {
            row.resize(n, T::zero());
            match rel {
                Relation::Le => {
                    row[s] = T::one();
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = T::one().neg();
                    s += 1;
                }
                Relation::Eq => {}
            }
            a.push(row);
            b.push(rhs);
        }
        let mut c = vec![T::zero(); n];
        let mut offset = T::zero();
        for (k, ck) in self.objective.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            match &maps[k] {
                Map::Shift(l, col) => {
                    c[*col] = c[*col].add(ck);
                    offset = offset.add(&ck.mul(l));
                }
                Map::Flip(u, col) => {
                    c[*col] = c[*col].sub(ck);
                    offset = offset.add(&ck.mul(u));
                }
                Map::Split(p, q) => {
                    c[*p] = c[*p].add(ck);
                    c[*q] = c[*q].sub(ck);
                }
            }
        }
        match simplex_standard(a, b, &c) {
            StdOutcome::Infeasible => LpOutcome::Infeasible,
            StdOutcome::Unbounded => LpOutcome::Unbounded,
            StdOutcome::Optimal(y, v) => {
                let x = maps
                    .iter()
                    .map(|m| match m {
                        Map::Shift(l, col) => l.add(&y[*col]),
                        Map::Flip(u, col) => u.sub(&y[*col]),
                        Map::Split(p, q) => y[*p].sub(&y[*q]),
                    })
                    .collect();
                LpOutcome::Optimal {
                    x,
                    value: v.add(&offset),
                }
            }
        }
    }
}

enum StdOutcome<T> {
    Optimal(Vec<T>, T),
    Infeasible,
    Unbounded,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    obj: Vec<T>,
    basis: Vec<usize>,
}

impl<T: LpScalar> Tableau<T> {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let w = self.width();
        let p = self.rows[r][col].clone();
        for j in 0..=w {
            let v = self.rows[r][j].div(&p);
            self.rows[r][j] = v;
        }
        let prow = self.rows[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][col].clone();
            if LpScalar::is_zero(&f) {
                continue;
            }
            for (j, pv) in prow.iter().enumerate() {
                if LpScalar::is_zero(pv) {
                    continue;
                }
                let v = self.rows[i][j].sub(&f.mul(pv));
                self.rows[i][j] = v;
            }
        }
        let f = self.obj[col].clone();
        if !LpScalar::is_zero(&f) {
            for (j, pv) in prow.iter().enumerate() {
                if LpScalar::is_zero(pv) {
                    continue;
                }
                let v = self.obj[j].sub(&f.mul(pv));
                self.obj[j] = v;
            }
        }
        self.basis[r] = col;
    }

    /// Runs Bland-rule iterations over columns `< limit`. Returns false when unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        let w = self.width();
        loop {
            let Some(col) = (0..limit).find(|&j| self.obj[j].is_neg()) else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.rows[i][w].div(a);
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio.lt(&br)
                            || (!br.lt(&ratio) && self.basis[i] < self.basis[bi])
                        {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }
}

fn simplex_standard<T: LpScalar>(a: Vec<Vec<T>>, b: Vec<T>, c: &[T]) -> StdOutcome<T> {
    let m = a.len();
    let n = c.len();
    // Phase 1 with one artificial per row.
    let w = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (mut row, bi)) in a.into_iter().zip(b).enumerate() {
        let neg = bi.is_neg();
        if neg {
            for v in row.iter_mut() {
                *v = v.neg();
            }
        }
        row.resize(w + 1, T::zero());
        row[n + i] = T::one();
        row[w] = if neg { bi.neg() } else { bi };
        rows.push(row);
    }
    let mut obj = vec![T::zero(); w + 1];
    for row in &rows {
        for j in 0..n {
            obj[j] = obj[j].sub(&row[j]);
        }
        obj[w] = obj[w].sub(&row[w]);
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (n..n + m).collect(),
    };
    t.optimize(n);
    if !t.obj[w].is_zero() {
        return StdOutcome::Infeasible;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    // Phase 2: drop artificial columns, install the real objective.
    for row in t.rows.iter_mut() {
        let rhs = row[w].clone();
        row.truncate(n);
        row.push(rhs);
    }
    let mut obj: Vec<T> = c.to_vec();
    obj.push(T::zero());
    for (i, row) in t.rows.iter().enumerate() {
        let cb = c[t.basis[i]].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..=n {
            obj[j] = obj[j].sub(&cb.mul(&row[j]));
        }
    }
    t.obj = obj;
    if !t.optimize(n) {
        return StdOutcome::Unbounded;
    }
    let mut y = vec![T::zero(); n];
    for (i, &bcol) in t.basis.iter().enumerate() {
        y[bcol] = t.rows[i][n].clone();
    }
    let value = t.obj[n].neg();
    StdOutcome::Optimal(y, value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn exact_small_lp() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0  → (8/5, 6/5), value 14/5
        let mut lp = LinearProgram::<Rational>::new(2);
        lp.set_bounds(0, Some(int(0)), None)
            .set_bounds(1, Some(int(0)), None)
            .set_objective(vec![int(-1), int(-1)])
            .add_row(vec![int(1), int(2)], Relation::Le, int(4))
            .add_row(vec![int(3), int(1)], Relation::Le, int(6));
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![frac(8, 5), frac(6, 5)]);
                assert_eq!(value, frac(-14, 5));
            }
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = LinearProgram::<Rational>::new(1);
        lp.set_bounds(0, Some(int(2)), Some(int(1)));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::<Rational>::new(2);
        lp.add_row(vec![int(1), int(1)], Relation::Eq, int(1))
            .add_row(vec![int(1), int(1)], Relation::Eq, int(2));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::<f64>::new(1);
        lp.set_objective(vec![-1.0]).set_bounds(0, Some(0.0), None);
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_and_upper_bounded_variables() {
        // min x - y, x free, y <= 3, x >= -5 via row, x + y = 1
        let mut lp = LinearProgram::<Rational>::new(2);
        lp.set_bounds(1, None, Some(int(3)))
            .set_objective(vec![int(1), int(-1)])
            .add_row(vec![int(1), int(0)], Relation::Ge, int(-5))
            .add_row(vec![int(1), int(1)], Relation::Eq, int(1));
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![int(-2), int(3)]);
                assert_eq!(value, int(-5));
            }
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let mut lp = LinearProgram::<Rational>::new(2);
        lp.set_bounds(0, Some(int(0)), None)
            .set_bounds(1, Some(int(0)), None)
            .add_row(vec![int(1), int(1)], Relation::Eq, int(1))
            .add_row(vec![int(2), int(2)], Relation::Eq, int(2));
        assert!(lp.solve().is_feasible());
    }
}
