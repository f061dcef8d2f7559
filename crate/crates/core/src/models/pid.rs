//! Semilocal PID with exactly two maximal ideals `(2)` and `(3)`:
//! `D = { a/b ∈ ℚ : gcd(b, 6) = 1 }`.
//!
//! A nonzero submodule closed under the family operations is `2ᵃ3ᵇ·D`, with
//! an exponent of `-∞` (stored as `None`) when that prime has been inverted.
//! `D_(2)` is `(0, -∞)` and `D_(3)` is `(-∞, 0)`.

pub type Exponents = [Option<i64>; 2];

pub fn add(a: Exponents, b: Exponents) -> Exponents {
    [a[0].min(b[0]), a[1].min(b[1])]
}

pub fn intersect(a: Exponents, b: Exponents) -> Exponents {
    [a[0].max(b[0]), a[1].max(b[1])]
}

pub fn mul(a: Exponents, b: Exponents) -> Exponents {
    let sum = |x: Option<i64>, y: Option<i64>| Some(x? + y?);
    [sum(a[0], b[0]), sum(a[1], b[1])]
}

/// `(A : B)`, or `None` when the colon is the zero module.
pub fn colon(a: Exponents, b: Exponents) -> Option<Exponents> {
    let coord = |x: Option<i64>, y: Option<i64>| -> Option<Option<i64>> {
        match (x, y) {
            (None, _) => Some(None),
            (Some(_), None) => None,
            (Some(x), Some(y)) => Some(Some(x - y)),
        }
    };
    Some([coord(a[0], b[0])?, coord(a[1], b[1])?])
}

pub fn leq(a: Exponents, b: Exponents) -> bool {
    a[0] >= b[0] && a[1] >= b[1]
}

/// 2-adic and 3-adic valuations of a nonzero rational.
pub fn valuations(r: &num_rational::BigRational) -> Exponents {
    use num_bigint::BigInt;
    use num_traits::Zero;
    fn val(n: &BigInt, p: u32) -> i64 {
        let p = BigInt::from(p);
        let mut n = n.clone();
        let mut k = 0;
        while !n.is_zero() && (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        k
    }
    let (num, den) = (r.numer(), r.denom());
    [Some(val(num, 2) - val(den, 2)), Some(val(num, 3) - val(den, 3))]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_rules() {
        assert_eq!(mul([Some(1), Some(0)], [Some(-1), Some(2)]), [Some(0), Some(2)]);
        assert_eq!(intersect([Some(1), Some(0)], [Some(0), Some(1)]), [Some(1), Some(1)]);
        assert_eq!(add([Some(1), Some(0)], [Some(0), Some(1)]), [Some(0), Some(0)]);
        assert_eq!(colon([Some(0), Some(0)], [Some(0), None]), None);
        assert_eq!(colon([Some(0), None], [Some(1), Some(5)]), Some([Some(-1), None]));
    }

    #[test]
    fn rational_valuations() {
        let r = num_rational::BigRational::new(12.into(), 5.into());
        assert_eq!(valuations(&r), [Some(2), Some(1)]);
        let r = num_rational::BigRational::new(5.into(), (-18).into());
        assert_eq!(valuations(&r), [Some(-1), Some(-2)]);
    }
}
