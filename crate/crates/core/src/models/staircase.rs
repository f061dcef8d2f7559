//! Monomial fractional ideals of `k[x,y]_(x,y)`, stored as the minimal
//! antichain of exponent vectors generating an upward-closed staircase.
//!
//! A coordinate of `-∞` (`None`) marks an inverted variable, which is how the
//! localizations `D_(x)` and `D_(y)` appear inside the family.

pub type Point = [Option<i64>; 2];

fn dominates(low: &Point, high: &Point) -> bool {
    low[0] <= high[0] && low[1] <= high[1]
}

pub fn minimize(mut gens: Vec<Point>) -> Vec<Point> {
    gens.sort_unstable();
    gens.dedup();
    let keep: Vec<Point> = gens
        .iter()
        .filter(|g| !gens.iter().any(|h| h != *g && dominates(h, g)))
        .copied()
        .collect();
    keep
}

pub fn add(a: &[Point], b: &[Point]) -> Vec<Point> {
    minimize(a.iter().chain(b).copied().collect())
}

pub fn mul(a: &[Point], b: &[Point]) -> Vec<Point> {
    let sum = |x: Option<i64>, y: Option<i64>| Some(x? + y?);
    minimize(
        a.iter()
            .flat_map(|p| b.iter().map(move |q| [sum(p[0], q[0]), sum(p[1], q[1])]))
            .collect(),
    )
}

pub fn intersect(a: &[Point], b: &[Point]) -> Vec<Point> {
    minimize(
        a.iter()
            .flat_map(|p| b.iter().map(move |q| [p[0].max(q[0]), p[1].max(q[1])]))
            .collect(),
    )
}

pub fn leq(a: &[Point], b: &[Point]) -> bool {
    a.iter().all(|p| b.iter().any(|q| dominates(q, p)))
}

/// `{ z : z + b ∈ A }` for a single generator `b` of the divisor.
fn translate(a: &[Point], b: &Point) -> Option<Vec<Point>> {
    match (b[0], b[1]) {
        (Some(b0), Some(b1)) => Some(
            a.iter()
                .map(|g| [g[0].map(|x| x - b0), g[1].map(|y| y - b1)])
                .collect(),
        ),
        // the whole column above b must lie in A
        (Some(b0), None) => a
            .iter()
            .filter(|g| g[1].is_none())
            .filter_map(|g| g[0])
            .min()
            .map(|m| vec![[Some(m - b0), None]]),
        (None, Some(b1)) => a
            .iter()
            .filter(|g| g[0].is_none())
            .filter_map(|g| g[1])
            .min()
            .map(|m| vec![[None, Some(m - b1)]]),
        (None, None) => None,
    }
}

/// `(A : B)`, or `None` for the zero module.
pub fn colon(a: &[Point], b: &[Point]) -> Option<Vec<Point>> {
    let mut acc: Option<Vec<Point>> = None;
    for g in b {
        let t = minimize(translate(a, g)?);
        acc = Some(match acc {
            None => t,
            Some(prev) => intersect(&prev, &t),
        });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: i64, j: i64) -> Point {
        [Some(i), Some(j)]
    }

    #[test]
    fn dominated_generator_removed() {
        assert_eq!(minimize(vec![p(1, 0), p(0, 1), p(1, 1)]), vec![p(0, 1), p(1, 0)]);
    }

    #[test]
    fn colon_of_maximal_ideal_is_d() {
        let d = vec![p(0, 0)];
        let m = vec![p(1, 0), p(0, 1)];
        assert_eq!(colon(&d, &m), Some(d.clone()));
        assert_eq!(mul(&m, &d), minimize(m.clone()));
    }

    #[test]
    fn inverted_variable() {
        let dx = vec![[Some(0), None]];
        assert_eq!(colon(&[p(0, 0)], &dx), None);
        assert_eq!(colon(&dx, &dx), Some(dx.clone()));
        assert_eq!(mul(&[p(2, 3)], &dx), vec![[Some(2), None]]);
        assert_eq!(intersect(&dx, &[[None, Some(0)]]), vec![p(0, 0)]);
    }
}
