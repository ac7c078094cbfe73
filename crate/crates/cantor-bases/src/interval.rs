//! Closed rational intervals and rectangular complex boxes, with the
//! outward-rounded arithmetic used for all enclosure refinement.

use crate::poly::{rat_int, QPoly, Rat};
use num_traits::{Signed, Zero};

/// Closed interval [lo, hi] with rational endpoints, lo <= hi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(v: Rat) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        RatInterval::point(Rat::zero())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        let lo = if self.lo > other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi < other.hi { self.hi.clone() } else { other.hi.clone() };
        if lo <= hi {
            Some(RatInterval::new(lo, hi))
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    pub fn add_scalar(&self, c: &Rat) -> RatInterval {
        RatInterval::new(&self.lo + c, &self.hi + c)
    }

    pub fn mul_scalar(&self, c: &Rat) -> RatInterval {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Largest absolute value over the interval.
    pub fn mag(&self) -> Rat {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b { a } else { b }
    }

    /// Smallest absolute value over the interval (zero if it straddles 0).
    pub fn mig(&self) -> Rat {
        if self.contains_zero() {
            Rat::zero()
        } else {
            let a = self.lo.abs();
            let b = self.hi.abs();
            if a < b { a } else { b }
        }
    }

    /// Enclosure of x^2 over the interval.
    pub fn square(&self) -> RatInterval {
        let lo = self.mig();
        let hi = self.mag();
        RatInterval::new(&lo * &lo, &hi * &hi)
    }

    /// Enclosure of |x| over the interval.
    pub fn abs(&self) -> RatInterval {
        RatInterval::new(self.mig(), self.mag())
    }
}

/// Horner evaluation of a rational polynomial over an interval.
pub fn eval_poly_interval(p: &QPoly, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add_scalar(c);
    }
    acc
}

/// Axis-aligned rectangle in the complex plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl ComplexBox {
    pub fn new(re: RatInterval, im: RatInterval) -> Self {
        ComplexBox { re, im }
    }

    pub fn from_real(re: RatInterval) -> Self {
        ComplexBox { re, im: RatInterval::zero() }
    }

    pub fn point(re: Rat, im: Rat) -> Self {
        ComplexBox { re: RatInterval::point(re), im: RatInterval::point(im) }
    }

    pub fn is_real_line(&self) -> bool {
        self.im.lo.is_zero() && self.im.hi.is_zero()
    }

    pub fn conj(&self) -> ComplexBox {
        ComplexBox { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn add(&self, other: &ComplexBox) -> ComplexBox {
        ComplexBox { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn mul(&self, other: &ComplexBox) -> ComplexBox {
        ComplexBox {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn add_real(&self, c: &Rat) -> ComplexBox {
        ComplexBox { re: self.re.add_scalar(c), im: self.im.clone() }
    }

    pub fn width(&self) -> Rat {
        let w = self.re.width();
        let h = self.im.width();
        if w > h { w } else { h }
    }

    /// Enclosure of |z|^2 over the box.
    pub fn abs_sq(&self) -> RatInterval {
        self.re.square().add(&self.im.square())
    }

    pub fn disjoint(&self, other: &ComplexBox) -> bool {
        self.re.intersect(&other.re).is_none() || self.im.intersect(&other.im).is_none()
    }
}

/// Horner evaluation of a real-coefficient polynomial on a complex box.
pub fn eval_poly_box(p: &QPoly, z: &ComplexBox) -> ComplexBox {
    let mut acc = ComplexBox::point(Rat::zero(), Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z).add_real(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn interval_mul_signs() {
        let a = RatInterval::new(rat_int(-2), rat_int(3));
        let b = RatInterval::new(rat_int(-1), rat_int(4));
        let p = a.mul(&b);
        assert_eq!(p.lo, rat_int(-8));
        assert_eq!(p.hi, rat_int(12));
    }

    #[test]
    fn square_straddling_zero() {
        let a = RatInterval::new(rat_int(-2), rat_int(1));
        let s = a.square();
        assert_eq!(s.lo, rat_int(0));
        assert_eq!(s.hi, rat_int(4));
    }

    #[test]
    fn box_mul_matches_complex_product() {
        // (1+2i)(3-i) = 5+5i
        let a = ComplexBox::point(rat_int(1), rat_int(2));
        let b = ComplexBox::point(rat_int(3), rat_int(-1));
        let p = a.mul(&b);
        assert_eq!(p.re, RatInterval::point(rat_int(5)));
        assert_eq!(p.im, RatInterval::point(rat_int(5)));
    }

    #[test]
    fn poly_eval_on_interval_contains_value() {
        let p = QPoly::from_int_coeffs(&[-1, -1, 1]);
        let x = RatInterval::new(rat(16, 10), rat(17, 10));
        let v = eval_poly_interval(&p, &x);
        // value at the golden mean is 0
        assert!(v.contains_zero());
    }
}
