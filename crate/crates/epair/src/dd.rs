//! Minimal double-double arithmetic.
//!
//! The Wigner transform multiplies boost matrices whose entries grow like
//! γγ_v while the result has entries of order one, so plain f64 products lose
//! up to γ²γ_v²·ε of absolute accuracy to cancellation. Carrying the boost
//! pipeline in double-double keeps the extracted rotation accurate to ~1e-15
//! over the whole tested velocity range.

/// An unevaluated sum `hi + lo` with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Requires |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from_f64(q1)));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul(Dd::from_f64(q2)));
        let q3 = r.hi / other.hi;
        let (s, e) = two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_prod_is_exact() {
        let a = 1.0 + 2f64.powi(-30);
        let b = 1.0 - 2f64.powi(-30);
        let (p, e) = two_prod(a, b);
        // a*b = 1 - 2^-60 exactly; p rounds to 1.0 and e recovers the rest.
        assert_eq!(p, 1.0);
        assert_eq!(e, -(2f64.powi(-60)));
    }

    #[test]
    fn addition_recovers_cancelled_tail() {
        let big = Dd::from_f64(1e16);
        let tiny = Dd::from_f64(1e-8);
        let diff = big.add(tiny).sub(big);
        assert_eq!(diff.value(), 1e-8);
    }

    #[test]
    fn division_round_trips() {
        let third = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
        let one = third.mul(Dd::from_f64(3.0));
        assert!((one.value() - 1.0).abs() < 1e-30);
        let x = Dd::from_f64(7.25);
        let y = Dd::from_f64(0.1);
        let q = x.div(y).mul(y).sub(x);
        assert!(q.value().abs() < 1e-28);
    }

    #[test]
    fn product_cancellation_stays_exact() {
        // (γ² β²) - (γ² - 1) = 0 identically for γ = 1/sqrt(1-β²); emulate the
        // magnitude pattern with exact dyadic inputs.
        let a = Dd::from_f64(3_037_000_499.0); // ~2^31.5
        let b = a.mul(a).sub(a.mul(a));
        assert_eq!(b.value(), 0.0);
        let c = a.mul(a).add(Dd::from_f64(1.0)).sub(a.mul(a));
        assert_eq!(c.value(), 1.0);
    }
}
