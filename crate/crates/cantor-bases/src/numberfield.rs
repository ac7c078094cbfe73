//! Exact arithmetic in Q(δ) for a real algebraic integer δ: canonical
//! coefficient vectors modulo the minimal polynomial, order operations
//! decided by enclosure refinement, conjugate enclosures, the max norm
//! over conjugates, and Pisot verification.

use crate::interval::{eval_poly_box, eval_poly_interval, ComplexBox, RatInterval};
use crate::poly::{
    char_poly, is_irreducible_over_q, kron, rat, rat_int, refine_root_interval,
    root_separation_lower_bound, QPoly, Rat,
};
use crate::roots::{isolate_roots, refine_box};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("minimal polynomial must be monic of degree at least 1")]
    NonMonic,
    #[error("minimal polynomial is reducible over the rationals")]
    ReduciblePolynomial,
    #[error("selector interval does not isolate a real root")]
    NoRealRootInInterval,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
}

#[derive(Debug, Clone)]
pub enum RootSelector {
    LargestReal,
    Interval(Rat, Rat),
}

struct RootState {
    /// Isolating intervals for the real roots of the minimal polynomial,
    /// in increasing order.
    real: Vec<(Rat, Rat)>,
    /// One box per conjugate pair, in the upper half plane.
    upper: Vec<ComplexBox>,
    /// Index of the generator δ within `real`.
    selected: usize,
}

/// A real algebraic integer δ presented by its monic irreducible minimal
/// polynomial together with refinable enclosures of all its conjugates.
pub struct NumberField {
    minpoly: QPoly,
    degree: usize,
    roots: Mutex<RootState>,
}

impl std::fmt::Debug for NumberField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NumberField({:?})", self.minpoly)
    }
}

impl NumberField {
    /// Builds the field Q(δ) where δ is the root of `minpoly` picked by the
    /// selector. Verifies monicity and irreducibility, and isolates every
    /// conjugate.
    pub fn new(minpoly: &[BigInt], selector: RootSelector) -> Result<Arc<NumberField>, FieldError> {
        let poly = QPoly::from_bigint_coeffs(minpoly);
        let degree = match poly.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(FieldError::NonMonic),
        };
        if !poly.leading().is_one() {
            return Err(FieldError::NonMonic);
        }
        if !is_irreducible_over_q(&poly) {
            return Err(FieldError::ReduciblePolynomial);
        }
        let (real, upper) = if degree == 1 {
            (vec![(-poly.coeff(0), -poly.coeff(0))], vec![])
        } else {
            let layout = isolate_roots(&poly);
            (layout.real, layout.upper)
        };
        let selected = match selector {
            RootSelector::LargestReal => {
                if real.is_empty() {
                    return Err(FieldError::NoRealRootInInterval);
                }
                real.len() - 1
            }
            RootSelector::Interval(lo, hi) => {
                let mut found = None;
                for (i, (rlo, rhi)) in real.iter().enumerate() {
                    let (mut rlo, mut rhi) = (rlo.clone(), rhi.clone());
                    // shrink until the isolating interval is unambiguously
                    // inside or outside the selector interval
                    loop {
                        if rlo > hi || rhi < lo {
                            break;
                        }
                        if rlo >= lo && rhi <= hi {
                            if found.is_some() {
                                return Err(FieldError::NoRealRootInInterval);
                            }
                            found = Some(i);
                            break;
                        }
                        if rlo == rhi {
                            break; // rational root exactly on the boundary
                        }
                        let w = (&rhi - &rlo) / rat_int(4);
                        let refined = refine_root_interval(&poly, &rlo, &rhi, &w);
                        rlo = refined.0;
                        rhi = refined.1;
                    }
                }
                found.ok_or(FieldError::NoRealRootInInterval)?
            }
        };
        Ok(Arc::new(NumberField {
            minpoly: poly,
            degree,
            roots: Mutex::new(RootState { real, upper, selected }),
        }))
    }

    pub fn from_int_minpoly(minpoly: &[i64], selector: RootSelector) -> Result<Arc<NumberField>, FieldError> {
        let big: Vec<BigInt> = minpoly.iter().map(|&c| BigInt::from(c)).collect();
        NumberField::new(&big, selector)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }

    pub fn minpoly_int_coeffs(&self) -> Vec<BigInt> {
        self.minpoly.to_int_coeffs().expect("minimal polynomial has integer coefficients")
    }

    /// Current isolating interval of δ, at most `width` wide.
    pub fn root_interval(&self, width: &Rat) -> (Rat, Rat) {
        let mut st = self.roots.lock().unwrap();
        let sel = st.selected;
        let (lo, hi) = st.real[sel].clone();
        if &(&hi - &lo) <= width {
            return (lo, hi);
        }
        let refined = refine_root_interval(&self.minpoly, &lo, &hi, width);
        st.real[sel] = refined.clone();
        refined
    }

    /// Enclosures of all d conjugates, each side at most `width` wide.
    /// Order: δ first, then the other real roots in increasing order, then
    /// each conjugate pair (upper box followed by its mirror image).
    pub fn conjugate_boxes(&self, width: &Rat) -> Vec<ComplexBox> {
        let mut st = self.roots.lock().unwrap();
        for iv in st.real.iter_mut() {
            if &(&iv.1 - &iv.0) > width {
                *iv = refine_root_interval(&self.minpoly, &iv.0, &iv.1, width);
            }
        }
        for bx in st.upper.iter_mut() {
            if &bx.width() > width {
                *bx = refine_box(&self.minpoly, bx, width);
            }
        }
        let mut out = Vec::with_capacity(self.degree);
        let sel = st.selected;
        out.push(ComplexBox::from_real(RatInterval::new(
            st.real[sel].0.clone(),
            st.real[sel].1.clone(),
        )));
        for (i, (lo, hi)) in st.real.iter().enumerate() {
            if i != sel {
                out.push(ComplexBox::from_real(RatInterval::new(lo.clone(), hi.clone())));
            }
        }
        for bx in &st.upper {
            out.push(bx.clone());
            out.push(bx.conj());
        }
        out
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement::from_coeffs(self.clone(), vec![Rat::zero(); self.degree])
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_rational(Rat::one())
    }

    pub fn generator(self: &Arc<Self>) -> FieldElement {
        let mut coeffs = vec![Rat::zero(); self.degree];
        if self.degree == 1 {
            coeffs[0] = -self.minpoly.coeff(0);
        } else {
            coeffs[1] = Rat::one();
        }
        FieldElement::from_coeffs(self.clone(), coeffs)
    }

    pub fn from_rational(self: &Arc<Self>, q: Rat) -> FieldElement {
        let mut coeffs = vec![Rat::zero(); self.degree];
        coeffs[0] = q;
        FieldElement::from_coeffs(self.clone(), coeffs)
    }

    /// Element from a (possibly long) coefficient vector, reduced modulo
    /// the minimal polynomial.
    pub fn element(self: &Arc<Self>, coeffs: Vec<Rat>) -> FieldElement {
        FieldElement::reduce(self.clone(), coeffs)
    }
}

pub fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    if a.minpoly != b.minpoly {
        return false;
    }
    // same polynomial: equal iff both select the same root
    let w = rat(1, 1 << 16);
    let (alo, ahi) = a.root_interval(&w);
    let (blo, bhi) = b.root_interval(&w);
    let lo = if alo > blo { alo } else { blo };
    let hi = if ahi < bhi { ahi } else { bhi };
    if lo > hi {
        return false;
    }
    // overlapping isolating intervals of the same squarefree polynomial:
    // they hold the same root iff the intersection still contains one
    let chain = crate::poly::sturm_chain(&a.minpoly);
    if lo == hi {
        return a.minpoly.eval(&lo).is_zero();
    }
    crate::poly::sturm_count(&chain, &lo, &hi) > 0
}

/// An element of Q(δ), stored as the canonical rational coefficient
/// vector of length d (coefficient of δ^0 … δ^{d-1}).
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rat>,
}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

/// Outcome of the Pisot-of-degree-d test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PisotStatus {
    Pisot,
    NotPisot(String),
    WrongDegree,
}

impl FieldElement {
    fn from_coeffs(field: Arc<NumberField>, coeffs: Vec<Rat>) -> Self {
        debug_assert_eq!(coeffs.len(), field.degree);
        FieldElement { field, coeffs }
    }

    fn reduce(field: Arc<NumberField>, mut coeffs: Vec<Rat>) -> Self {
        let d = field.degree;
        let m = &field.minpoly;
        while coeffs.len() > d {
            let c = coeffs.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let k = coeffs.len() - d;
            for j in 0..d {
                let delta = &c * &m.coeff(j);
                coeffs[k + j] -= delta;
            }
        }
        coeffs.resize(d, Rat::zero());
        FieldElement { field, coeffs }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(q) when the element is the rational constant q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        assert!(same_field(&self.field, &other.field), "field mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        assert!(same_field(&self.field, &other.field), "field mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement::from_coeffs(self.field.clone(), self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        assert!(same_field(&self.field, &other.field), "field mismatch");
        let d = self.field.degree;
        let mut conv = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        FieldElement::reduce(self.field.clone(), conv)
    }

    pub fn mul_rational(&self, q: &Rat) -> FieldElement {
        FieldElement::from_coeffs(self.field.clone(), self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn add_rational(&self, q: &Rat) -> FieldElement {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += q;
        FieldElement::from_coeffs(self.field.clone(), coeffs)
    }

    /// Multiplicative inverse via the extended gcd with the minimal
    /// polynomial.
    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s, _) = self.as_poly().xgcd(&self.field.minpoly);
        debug_assert_eq!(g.degree(), Some(0), "minimal polynomial is irreducible");
        let inv = s.mul_scalar(&g.coeff(0).recip());
        let mut coeffs = inv.coeffs().to_vec();
        coeffs.resize(self.field.degree.max(coeffs.len()), Rat::zero());
        Ok(FieldElement::reduce(self.field.clone(), coeffs))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        if !same_field(&self.field, &other.field) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(self.mul(&other.inverse()?))
    }

    /// Checked four-operation entry point.
    pub fn arith(a: &FieldElement, b: &FieldElement, kind: ArithKind) -> Result<FieldElement, FieldError> {
        if !same_field(&a.field, &b.field) {
            return Err(FieldError::FieldMismatch);
        }
        match kind {
            ArithKind::Add => Ok(a.add(b)),
            ArithKind::Sub => Ok(a.sub(b)),
            ArithKind::Mul => Ok(a.mul(b)),
            ArithKind::Div => a.div(b),
        }
    }

    pub fn pow(&self, mut n: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.from_rational(Rat::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Shrinking real enclosure of the element's value.
    pub fn enclosure(&self, target: &Rat) -> RatInterval {
        let poly = self.as_poly();
        if let Some(q) = self.as_rational() {
            return RatInterval::point(q);
        }
        let mut width = rat(1, 1 << 8);
        loop {
            let (lo, hi) = self.field.root_interval(&width);
            let enc = eval_poly_interval(&poly, &RatInterval::new(lo, hi));
            if &enc.width() <= target {
                return enc;
            }
            width /= rat_int(16);
        }
    }

    /// Exact sign: -1, 0, +1.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return if q.is_positive() { 1 } else { -1 };
        }
        // a nonzero canonical vector with a nonconstant part is irrational,
        // so refinement separates it from zero
        let mut target = rat(1, 1 << 8);
        loop {
            let enc = self.enclosure(&target);
            if enc.lo.is_positive() {
                return 1;
            }
            if enc.hi.is_negative() {
                return -1;
            }
            target /= rat_int(16);
        }
    }

    pub fn cmp_rational(&self, q: &Rat) -> Ordering {
        match self.sub(&self.field.from_rational(q.clone())).sign() {
            1 => Ordering::Greater,
            0 => Ordering::Equal,
            _ => Ordering::Less,
        }
    }

    pub fn cmp_elem(&self, other: &FieldElement) -> Ordering {
        match self.sub(other).sign() {
            1 => Ordering::Greater,
            0 => Ordering::Equal,
            _ => Ordering::Less,
        }
    }

    /// Exact floor: the unique n with n <= value < n+1.
    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.as_rational() {
            return q.floor().to_integer();
        }
        let mut target = rat(1, 1 << 8);
        loop {
            let enc = self.enclosure(&target);
            let flo = enc.lo.floor().to_integer();
            let fhi = enc.hi.floor().to_integer();
            if flo == fhi {
                return flo;
            }
            target /= rat_int(16);
        }
    }

    /// Exact ceiling.
    pub fn ceil(&self) -> BigInt {
        if let Some(q) = self.as_rational() {
            return q.ceil().to_integer();
        }
        let mut target = rat(1, 1 << 8);
        loop {
            let enc = self.enclosure(&target);
            let clo = enc.lo.ceil().to_integer();
            let chi = enc.hi.ceil().to_integer();
            if clo == chi {
                return clo;
            }
            target /= rat_int(16);
        }
    }

    /// Enclosures of the images of this element at every conjugate of δ,
    /// each box at most `precision` wide, in the conjugate order of
    /// `NumberField::conjugate_boxes`.
    pub fn conjugate_values(&self, precision: &Rat) -> Vec<ComplexBox> {
        let poly = self.as_poly();
        let mut width = precision.clone();
        loop {
            let boxes = self.field.conjugate_boxes(&width);
            let values: Vec<ComplexBox> = boxes.iter().map(|b| eval_poly_box(&poly, b)).collect();
            if values.iter().all(|v| &v.width() <= precision) {
                return values;
            }
            width /= rat_int(16);
        }
    }

    /// Matrix of multiplication by this element in the basis 1, δ, …, δ^{d-1};
    /// column j holds the coefficients of  self·δ^j.
    pub fn mult_matrix(&self) -> Vec<Vec<Rat>> {
        let d = self.field.degree;
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(d);
        let mut cur = self.clone();
        cols.push(cur.coeffs.clone());
        for _ in 1..d {
            cur = cur.mul(&self.field.generator());
            cols.push(cur.coeffs.clone());
        }
        // transpose columns into rows
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    /// Monic degree-d polynomial whose roots are the conjugates of this
    /// element (with multiplicity when the element has smaller degree).
    pub fn conjugate_char_poly(&self) -> QPoly {
        char_poly(&self.mult_matrix())
    }

    /// Floor of the max norm: the integer part of max_i |value at the i-th
    /// conjugate of δ|.
    pub fn max_norm_floor(&self) -> BigInt {
        if let Some(q) = self.as_rational() {
            return q.abs().floor().to_integer();
        }
        let poly = self.as_poly();
        let mut width = rat(1, 1 << 8);
        let mut exact_squares: Vec<Option<Rat>> = vec![None; self.field.degree];
        let mut rounds = 0usize;
        loop {
            rounds += 1;
            let boxes = self.field.conjugate_boxes(&width);
            let sq: Vec<RatInterval> = boxes
                .iter()
                .enumerate()
                .map(|(i, b)| match &exact_squares[i] {
                    Some(v) => RatInterval::point(v.clone()),
                    None => eval_poly_box(&poly, b).abs_sq(),
                })
                .collect();
            let max_lo = sq.iter().map(|s| s.lo.clone()).max().unwrap();
            let max_hi = sq.iter().map(|s| s.hi.clone()).max().unwrap();
            // find n with n^2 <= max value^2 < (n+1)^2
            let mut n = max_lo.floor().to_integer().sqrt();
            loop {
                let n2 = Rat::from_integer(&n * &n);
                let n1sq = Rat::from_integer((&n + 1) * (&n + 1));
                if n2 <= max_lo && max_hi < n1sq {
                    return n;
                }
                if n1sq <= max_lo {
                    n += 1;
                    continue;
                }
                break;
            }
            if rounds >= 4 {
                // a conjugate modulus may equal an integer exactly; settle it
                // with the pair-product characteristic polynomial
                let cand = max_hi.ceil().to_integer().sqrt() + 1i32;
                let mut m = BigInt::zero();
                while m <= cand {
                    let m2 = Rat::from_integer(&m * &m);
                    if sq.iter().any(|s| s.contains(&m2) && s.width() > Rat::zero()) {
                        if let Some(sep) = self.modulus_tie_separation(&m2) {
                            // refine until every straddling square either
                            // excludes m^2 or is provably equal to it
                            for (i, s) in sq.iter().enumerate() {
                                if s.contains(&m2) && s.width() < sep && exact_squares[i].is_none() {
                                    exact_squares[i] = Some(m2.clone());
                                }
                            }
                        }
                    }
                    m += 1;
                }
            }
            width /= rat_int(16);
        }
    }

    /// When m2 is a root of the pair-product polynomial of this element, a
    /// conjugate modulus squared may equal it exactly; returns the root
    /// separation bound used to certify equality, or None when m2 is not a
    /// root (so refinement alone will separate).
    fn modulus_tie_separation(&self, m2: &Rat) -> Option<Rat> {
        let m = self.mult_matrix();
        let pp = char_poly(&kron(&m, &m));
        if !pp.eval(m2).is_zero() {
            return None;
        }
        let sf = pp.squarefree_part();
        // clear denominators to integer coefficients for the bound
        let mut lcm = BigInt::one();
        for c in sf.coeffs() {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let int = sf.mul_scalar(&Rat::from_integer(lcm));
        Some(root_separation_lower_bound(&int))
    }

    /// Full Pisot-of-degree-d verification.
    pub fn is_pisot_of_degree_d(&self) -> PisotStatus {
        if !self.is_integral() {
            return PisotStatus::NotPisot("coefficients are not integral".into());
        }
        if self.cmp_rational(&Rat::one()) != Ordering::Greater {
            return PisotStatus::NotPisot("not greater than 1".into());
        }
        let d = self.field.degree;
        let cp = self.conjugate_char_poly();
        debug_assert!(cp.is_integral());
        if !is_irreducible_over_q(&cp) {
            return PisotStatus::WrongDegree;
        }
        if d == 1 {
            return PisotStatus::Pisot;
        }
        // conjugates on the unit circle or inverse-closed root sets force
        // the characteristic polynomial to be ± its own reciprocal
        let ints = cp.to_int_coeffs().expect("integral");
        let mut rev: Vec<BigInt> = ints.iter().rev().cloned().collect();
        let self_reciprocal = rev == ints || {
            for c in rev.iter_mut() {
                *c = -c.clone();
            }
            rev == ints
        };
        if self_reciprocal {
            return if d == 2 {
                PisotStatus::Pisot
            } else {
                PisotStatus::NotPisot("conjugates are closed under inversion".into())
            };
        }
        // no conjugate can sit on the unit circle: refinement terminates
        let poly = self.as_poly();
        let mut width = rat(1, 1 << 8);
        let mut undecided: Vec<usize> = (1..d).collect();
        loop {
            let boxes = self.field.conjugate_boxes(&width);
            undecided.retain(|&i| {
                let sq = eval_poly_box(&poly, &boxes[i]).abs_sq();
                sq.hi >= Rat::one()
            });
            for &i in &undecided {
                let sq = eval_poly_box(&poly, &boxes[i]).abs_sq();
                if sq.lo > Rat::one() {
                    return PisotStatus::NotPisot(format!(
                        "conjugate {i} has modulus greater than 1"
                    ));
                }
            }
            if undecided.is_empty() {
                return PisotStatus::Pisot;
            }
            width /= rat_int(16);
        }
    }
}
