//! Dense exact simplex with Bland's rule, for small systems `A x <= b` with free `x`.

use num_traits::{Signed, Zero};

use crate::linalg::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Q, point: Vec<Q> },
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let prow = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Q], allowed: &[bool]) -> Vec<Q> {
        let mut red: Vec<Q> = cost.to_vec();
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !self.rows[r][j].is_zero() {
                    red[j] -= &cost[b] * &self.rows[r][j];
                }
            }
        }
        for j in 0..self.ncols {
            if !allowed[j] {
                red[j] = Q::zero();
            }
        }
        red
    }

    /// Maximizes `cost · y`; returns false when unbounded.
    fn run(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let red = self.reduced_costs(cost, allowed);
            let enter = match (0..self.ncols).find(|&j| red[j].is_positive()) {
                Some(j) => j,
                None => return true,
            };
            let mut best: Option<(Q, usize, usize)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][enter];
                if a.is_positive() {
                    let ratio = &self.rows[r][self.ncols] / a;
                    let better = match &best {
                        None => true,
                        Some((q, _, b)) => ratio < *q || (ratio == *q && self.basis[r] < *b),
                    };
                    if better {
                        best = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            match best {
                Some((_, r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }

    fn objective(&self, cost: &[Q]) -> Q {
        let mut v = Q::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            v += &cost[b] * &self.rows[r][self.ncols];
        }
        v
    }
}

/// Maximizes `c · x` subject to `a x <= b`, `x` free.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpResult {
    let m = a.len();
    let d = c.len();
    // columns: u (d), v (d), slack (m), artificial (m)
    let ncols = 2 * d + 2 * m;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Q::zero(); ncols + 1];
        let neg = b[i].is_negative();
        let s = if neg { -Q::from_integer(1.into()) } else { Q::from_integer(1.into()) };
        for k in 0..d {
            row[k] = &s * &a[i][k];
            row[d + k] = -(&s * &a[i][k]);
        }
        row[2 * d + i] = s.clone();
        row[ncols] = &s * &b[i];
        if neg {
            row[2 * d + m + i] = Q::from_integer(1.into());
            basis.push(2 * d + m + i);
        } else {
            basis.push(2 * d + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, ncols };
    let all = vec![true; ncols];
    let mut phase1 = vec![Q::zero(); ncols];
    let mut any_art = false;
    for i in 0..m {
        if t.basis[i] >= 2 * d + m {
            phase1[2 * d + m + i] = -Q::from_integer(1.into());
            any_art = true;
        }
    }
    if any_art {
        t.run(&phase1, &all);
        if t.objective(&phase1).is_negative() {
            return LpResult::Infeasible;
        }
        // drive zero-level artificials out of the basis
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= 2 * d + m {
                match (0..2 * d + m).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(j) => {
                        t.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }
    let mut allowed = vec![true; ncols];
    for j in 2 * d + m..ncols {
        allowed[j] = false;
    }
    let mut cost = vec![Q::zero(); ncols];
    for k in 0..d {
        cost[k] = c[k].clone();
        cost[d + k] = -c[k].clone();
    }
    if !t.run(&cost, &allowed) {
        return LpResult::Unbounded;
    }
    let mut y = vec![Q::zero(); ncols];
    for (r, &bcol) in t.basis.iter().enumerate() {
        y[bcol] = t.rows[r][ncols].clone();
    }
    let point: Vec<Q> = (0..d).map(|k| &y[k] - &y[d + k]).collect();
    let value = point.iter().zip(c).map(|(x, ci)| x * ci).fold(Q::zero(), |acc, v| acc + v);
    LpResult::Optimal { value, point }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn square() {
        // 0 <= x, y <= 1
        let a = m(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let b = vec![q(1), q(0), q(1), q(0)];
        match maximize(&a, &b, &[q(1), q(1)]) {
            LpResult::Optimal { value, .. } => assert_eq!(value, q(2)),
            other => panic!("{other:?}"),
        }
        match maximize(&a, &b, &[q(-1), q(0)]) {
            LpResult::Optimal { value, .. } => assert_eq!(value, q(0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = m(&[&[1], &[-1]]);
        assert_eq!(maximize(&a, &[q(-1), q(0)], &[q(1)]), LpResult::Infeasible);
        let a = m(&[&[-1]]);
        assert_eq!(maximize(&a, &[q(3)], &[q(1)]), LpResult::Unbounded);
        // needs phase one: x >= 2, x <= 5
        let a = m(&[&[-1], &[1]]);
        match maximize(&a, &[q(-2), q(5)], &[q(-1)]) {
            LpResult::Optimal { value, point } => {
                assert_eq!(value, q(-2));
                assert_eq!(point, vec![q(2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_equalities() {
        // x + y = 1 written twice, x, y >= 0; maximize x - y
        let a = m(&[&[1, 1], &[-1, -1], &[1, 1], &[-1, -1], &[-1, 0], &[0, -1]]);
        let b = vec![q(1), q(-1), q(1), q(-1), q(0), q(0)];
        match maximize(&a, &b, &[q(1), q(-1)]) {
            LpResult::Optimal { value, .. } => assert_eq!(value, q(1)),
            other => panic!("{other:?}"),
        }
    }
}
