//! Linear programs over the rationals, solved exactly by a two-phase
//! tableau simplex with Bland's pivoting rule.
//!
//! The tableau is first run over `Ratio<i128>` with checked arithmetic; if
//! any intermediate value overflows, the solve restarts over big rationals.
//! Both paths are exact, so the result does not depend on which one
//! finished.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Variable {
    pub lower: Rational,
    pub upper: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (j, a)| acc + a * &x[*j])
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    vars: Vec<Variable>,
    constraints: Vec<Constraint>,
    objective: Vec<(usize, Rational)>,
    direction: Direction,
}

impl Default for LinearProgram {
    fn default() -> Self {
        Self::new()
    }
}

impl LinearProgram {
    pub fn new() -> Self {
        LinearProgram {
            vars: Vec::new(),
            constraints: Vec::new(),
            objective: Vec::new(),
            direction: Direction::Maximize,
        }
    }

    /// Adds a variable with `lower <= x` and optionally `x <= upper`.
    pub fn add_variable(&mut self, lower: Rational, upper: Option<Rational>) -> usize {
        self.vars.push(Variable { lower, upper });
        self.vars.len() - 1
    }

    pub fn add_nonneg(&mut self) -> usize {
        self.add_variable(Rational::zero(), None)
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn set_objective(&mut self, direction: Direction, coeffs: Vec<(usize, Rational)>) {
        self.direction = direction;
        self.objective = coeffs;
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(usize, Rational)] {
        &self.objective
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .fold(Rational::zero(), |acc, (j, c)| acc + c * &x[*j])
    }

    /// Whether `x` satisfies every bound and constraint exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.vars.len()
            && self.vars.iter().zip(x).all(|(v, xi)| {
                *xi >= v.lower && v.upper.as_ref().is_none_or(|u| xi <= u)
            })
            && self.constraints.iter().all(|c| c.holds(x))
    }

    fn validate(&self) -> Result<()> {
        let nv = self.vars.len();
        let bad = |what: &str, j: usize| {
            Err(Error::invalid(format!(
                "{what} references variable {j} but the program has {nv}"
            )))
        };
        for (row, c) in self.constraints.iter().enumerate() {
            if let Some(&(j, _)) = c.coeffs.iter().find(|(j, _)| *j >= nv) {
                return bad(&format!("constraint {row}"), j);
            }
        }
        if let Some(&(j, _)) = self.objective.iter().find(|(j, _)| *j >= nv) {
            return bad("objective", j);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Present when optimal.
    pub objective: Option<Rational>,
    /// Present when optimal; one value per variable.
    pub assignment: Vec<Rational>,
}

/// Solves `lp` exactly, honouring its objective direction.
pub fn lp_maximize(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let standard = StandardForm::build(lp);
    let raw = match standard.convert::<i128>() {
        Some(small) => match small.solve() {
            Ok(out) => out.map(|v| Rational::new(BigInt::from(*v.numer()), BigInt::from(*v.denom()))),
            Err(Overflow) => standard.solve().expect("big rationals do not overflow"),
        },
        None => standard.solve().expect("big rationals do not overflow"),
    };
    Ok(standard.finish(lp, raw))
}

/// Raised by the fixed-width path when an intermediate value overflows.
#[derive(Debug)]
struct Overflow;

/// `max c·y  s.t.  A y (rel) b,  y >= 0,  b >= 0`.
struct StandardForm<T: Clone + Integer> {
    rows: Vec<(Vec<(usize, Ratio<T>)>, Relation, Ratio<T>)>,
    cost: Vec<(usize, Ratio<T>)>,
    nv: usize,
}

enum RawOutcome<Q> {
    Optimal(Vec<Q>),
    Infeasible,
    Unbounded,
}

impl<Q> RawOutcome<Q> {
    fn map<R>(self, f: impl Fn(&Q) -> R) -> RawOutcome<R> {
        match self {
            RawOutcome::Optimal(x) => RawOutcome::Optimal(x.iter().map(f).collect()),
            RawOutcome::Infeasible => RawOutcome::Infeasible,
            RawOutcome::Unbounded => RawOutcome::Unbounded,
        }
    }
}

impl StandardForm<BigInt> {
    fn build(lp: &LinearProgram) -> Self {
        let nv = lp.vars.len();
        let mut rows = Vec::new();
        let shift = |coeffs: &[(usize, Rational)], rhs: &Rational| {
            let mut merged = vec![Rational::zero(); nv];
            for (j, a) in coeffs {
                merged[*j] += a;
            }
            let mut rhs = rhs.clone();
            for (j, a) in merged.iter().enumerate() {
                if !a.is_zero() {
                    rhs -= a * &lp.vars[j].lower;
                }
            }
            let coeffs: Vec<(usize, Rational)> = merged
                .into_iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .collect();
            (coeffs, rhs)
        };
        for c in &lp.constraints {
            let (coeffs, rhs) = shift(&c.coeffs, &c.rhs);
            rows.push(normalize(coeffs, c.relation, rhs));
        }
        for (j, v) in lp.vars.iter().enumerate() {
            if let Some(u) = &v.upper {
                rows.push(normalize(
                    vec![(j, Rational::one())],
                    Relation::Le,
                    u - &v.lower,
                ));
            }
        }
        let sign = match lp.direction {
            Direction::Maximize => Rational::one(),
            Direction::Minimize => -Rational::one(),
        };
        let mut cost = vec![Rational::zero(); nv];
        for (j, c) in &lp.objective {
            cost[*j] += c * &sign;
        }
        let cost = cost
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        StandardForm { rows, cost, nv }
    }

    fn convert<S>(&self) -> Option<StandardForm<S>>
    where
        S: Clone + Integer + TryFrom<BigInt>,
    {
        let conv = |q: &Rational| -> Option<Ratio<S>> {
            let n = S::try_from(q.numer().clone()).ok()?;
            let d = S::try_from(q.denom().clone()).ok()?;
            Some(Ratio::new_raw(n, d))
        };
        let rows = self
            .rows
            .iter()
            .map(|(coeffs, rel, rhs)| {
                let coeffs = coeffs
                    .iter()
                    .map(|(j, a)| conv(a).map(|a| (*j, a)))
                    .collect::<Option<Vec<_>>>()?;
                Some((coeffs, *rel, conv(rhs)?))
            })
            .collect::<Option<Vec<_>>>()?;
        let cost = self
            .cost
            .iter()
            .map(|(j, a)| conv(a).map(|a| (*j, a)))
            .collect::<Option<Vec<_>>>()?;
        Some(StandardForm {
            rows,
            cost,
            nv: self.nv,
        })
    }

    fn finish(&self, lp: &LinearProgram, raw: RawOutcome<Rational>) -> LpSolution {
        match raw {
            RawOutcome::Optimal(y) => {
                let x: Vec<Rational> = y
                    .into_iter()
                    .zip(&lp.vars)
                    .map(|(yj, v)| yj + &v.lower)
                    .collect();
                debug_assert!(lp.is_feasible(&x));
                LpSolution {
                    status: LpStatus::Optimal,
                    objective: Some(lp.objective_value(&x)),
                    assignment: x,
                }
            }
            RawOutcome::Infeasible => LpSolution {
                status: LpStatus::Infeasible,
                objective: None,
                assignment: Vec::new(),
            },
            RawOutcome::Unbounded => LpSolution {
                status: LpStatus::Unbounded,
                objective: None,
                assignment: Vec::new(),
            },
        }
    }
}

fn normalize(
    coeffs: Vec<(usize, Rational)>,
    relation: Relation,
    rhs: Rational,
) -> (Vec<(usize, Rational)>, Relation, Rational) {
    if rhs.is_negative() {
        let flipped = match relation {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        };
        (
            coeffs.into_iter().map(|(j, a)| (j, -a)).collect(),
            flipped,
            -rhs,
        )
    } else {
        (coeffs, relation, rhs)
    }
}

trait Exact:
    Clone + PartialOrd + Zero + One + Signed + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv
{
}

impl<T> Exact for Ratio<T> where
    T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv
{
}

impl<T> StandardForm<T>
where
    T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv,
{
    fn solve(&self) -> Result<RawOutcome<Ratio<T>>, Overflow> {
        Tableau::new(self).run()
    }
}

/// Dense simplex tableau. Columns: structural variables, one slack or
/// surplus per inequality row, then one artificial per `>=`/`=` row; the
/// last entry of each row is its right-hand side.
struct Tableau<Q> {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    /// Reduced costs; the last entry holds minus the objective value.
    obj: Vec<Q>,
    cost: Vec<(usize, Q)>,
    nv: usize,
    first_artificial: usize,
    ncols: usize,
}

macro_rules! checked {
    ($e:expr) => {
        $e.ok_or(Overflow)?
    };
}

impl<Q: Exact> Tableau<Q> {
    fn new<T>(sf: &StandardForm<T>) -> Self
    where
        T: Clone + Integer,
        Ratio<T>: Into<Q>,
    {
        let nv = sf.nv;
        let n_slack = sf.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = sf.rows.iter().filter(|r| r.1 != Relation::Le).count();
        let first_artificial = nv + n_slack;
        let ncols = first_artificial + n_art;
        let mut rows = Vec::with_capacity(sf.rows.len());
        let mut basis = Vec::with_capacity(sf.rows.len());
        let (mut slack, mut art) = (nv, first_artificial);
        for (coeffs, rel, rhs) in &sf.rows {
            let mut row = vec![Q::zero(); ncols + 1];
            for (j, a) in coeffs {
                row[*j] = a.clone().into();
            }
            row[ncols] = rhs.clone().into();
            match rel {
                Relation::Le => {
                    row[slack] = Q::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Q::one();
                    slack += 1;
                    row[art] = Q::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Q::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            obj: vec![Q::zero(); ncols + 1],
            cost: sf.cost.iter().map(|(j, c)| (*j, c.clone().into())).collect(),
            nv,
            first_artificial,
            ncols,
        }
    }

    fn run(mut self) -> Result<RawOutcome<Q>, Overflow> {
        if self.first_artificial < self.ncols {
            // Phase one: maximize minus the sum of artificials.
            let mut c = vec![Q::zero(); self.ncols];
            for v in c.iter_mut().skip(self.first_artificial) {
                *v = -Q::one();
            }
            self.price_out(&c)?;
            let bounded = self.iterate(self.ncols)?;
            debug_assert!(bounded);
            if !self.obj[self.ncols].is_zero() {
                return Ok(RawOutcome::Infeasible);
            }
            self.evict_artificials()?;
        }
        let mut c = vec![Q::zero(); self.ncols];
        for (j, v) in &self.cost {
            c[*j] = v.clone();
        }
        self.price_out(&c)?;
        if !self.iterate(self.first_artificial)? {
            return Ok(RawOutcome::Unbounded);
        }
        let mut y = vec![Q::zero(); self.nv];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.nv {
                y[b] = row[self.ncols].clone();
            }
        }
        Ok(RawOutcome::Optimal(y))
    }

    /// Sets the objective row to the reduced costs of `c` under the current basis.
    fn price_out(&mut self, c: &[Q]) -> Result<(), Overflow> {
        let mut obj: Vec<Q> = c.to_vec();
        obj.push(Q::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o = checked!(o.checked_sub(&checked!(cb.checked_mul(a))));
                }
            }
        }
        self.obj = obj;
        Ok(())
    }

    /// Bland's rule pivots over columns `< limit`. Returns `false` if unbounded.
    fn iterate(&mut self, limit: usize) -> Result<bool, Overflow> {
        loop {
            let Some(enter) = (0..limit).find(|&j| self.obj[j].is_positive()) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = checked!(row[self.ncols].checked_div(a));
                let better = match &leave {
                    None => true,
                    Some((best_i, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_i])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Ok(false);
            };
            self.pivot(row, enter)?;
        }
    }

    fn pivot(&mut self, r: usize, e: usize) -> Result<(), Overflow> {
        let p = self.rows[r][e].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = checked!(v.checked_div(&p));
                }
            }
        }
        let support: Vec<usize> = (0..=self.ncols)
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            eliminate(row, &pivot_row, &support, e)?;
        }
        eliminate(&mut self.obj, &pivot_row, &support, e)?;
        self.rows[r] = pivot_row;
        self.basis[r] = e;
        Ok(())
    }

    /// Pivots zero-valued artificials out of the basis; drops redundant rows.
    fn evict_artificials(&mut self) -> Result<(), Overflow> {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j)?,
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        Ok(())
    }
}

fn eliminate<Q: Exact>(row: &mut [Q], pivot_row: &[Q], support: &[usize], e: usize) -> Result<(), Overflow> {
    let f = row[e].clone();
    if f.is_zero() {
        return Ok(());
    }
    for &j in support {
        let delta = checked!(f.checked_mul(&pivot_row[j]));
        row[j] = checked!(row[j].checked_sub(&delta));
    }
    Ok(())
}
