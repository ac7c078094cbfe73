//! Exact root localization for integer polynomials: real roots via Sturm
//! bisection, non-real roots via rectangle subdivision driven by an
//! argument-principle count computed from Cauchy indices.

use crate::interval::{ComplexBox, RatInterval};
use crate::poly::{cauchy_index, isolate_real_roots, rat, rat_int, sturm_chain, sturm_count, QPoly, Rat};
use num_traits::{One, Zero};

/// Raised when a candidate rectangle has a root on (or numerically at) its
/// boundary; the caller perturbs the rectangle and retries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryHit;

/// Restriction of p(x+iy) to a horizontal or vertical line, split into
/// real and imaginary part polynomials of the free coordinate.
fn restrict_to_line(p: &QPoly, fixed: &Rat, horizontal: bool) -> (QPoly, QPoly) {
    // Horner in the polynomial ring: multiply (re, im) by (t + i*fixed) for
    // horizontal lines (z = t + i*fixed) or by (fixed + i*t) for vertical.
    let mut re = QPoly::zero();
    let mut im = QPoly::zero();
    let x = QPoly::x();
    for c in p.coeffs().iter().rev() {
        let (nre, nim) = if horizontal {
            (
                re.mul(&x).sub(&im.mul_scalar(fixed)),
                im.mul(&x).add(&re.mul_scalar(fixed)),
            )
        } else {
            (
                re.mul_scalar(fixed).sub(&im.mul(&x)),
                re.mul(&x).add(&im.mul_scalar(fixed)),
            )
        };
        re = nre.add(&QPoly::constant(c.clone()));
        im = nim;
    }
    (re, im)
}

/// Cauchy-index contribution of one oriented boundary edge, or BoundaryHit
/// if p vanishes on the edge or the corner conditions fail.
fn edge_index(p: &QPoly, fixed: &Rat, horizontal: bool, from: &Rat, to: &Rat) -> Result<i64, BoundaryHit> {
    let (a, b) = restrict_to_line(p, fixed, horizontal);
    let (lo, hi, flip) = if from <= to {
        (from, to, 1i64)
    } else {
        (to, from, -1i64)
    };
    if b.is_zero() {
        // image stays on the real axis; a root of A on the edge is a root of p
        if a.is_zero() {
            return Err(BoundaryHit);
        }
        if has_root_in_closed(&a, lo, hi) {
            return Err(BoundaryHit);
        }
        return Ok(0);
    }
    // common zero of A and B inside the edge = root of p on the boundary
    let g = a.gcd_monic(&b);
    if g.degree().unwrap_or(0) >= 1 && has_root_in_closed(&g, lo, hi) {
        return Err(BoundaryHit);
    }
    // corner condition: the curve must not touch the real axis at endpoints
    if b.eval(lo).is_zero() || b.eval(hi).is_zero() {
        return Err(BoundaryHit);
    }
    Ok(flip * cauchy_index(&b, &a, lo, hi))
}

fn has_root_in_closed(p: &QPoly, lo: &Rat, hi: &Rat) -> bool {
    if p.eval(lo).is_zero() || p.eval(hi).is_zero() {
        return true;
    }
    let sf = p.squarefree_part();
    sturm_count(&sturm_chain(&sf), lo, hi) > 0
}

/// Number of roots of a squarefree polynomial strictly inside the box,
/// via the winding number of the boundary image around the origin.
pub fn count_roots_in_box(p: &QPoly, rect: &ComplexBox) -> Result<usize, BoundaryHit> {
    let (x0, x1) = (&rect.re.lo, &rect.re.hi);
    let (y0, y1) = (&rect.im.lo, &rect.im.hi);
    if x0 >= x1 || y0 >= y1 {
        return Err(BoundaryHit);
    }
    let mut total = 0i64;
    total += edge_index(p, y0, true, x0, x1)?; // bottom, left to right
    total += edge_index(p, x1, false, y0, y1)?; // right, up
    total += edge_index(p, y1, true, x1, x0)?; // top, right to left
    total += edge_index(p, x0, false, y1, y0)?; // left, down
    if total < 0 || total % 2 != 0 {
        // cannot happen for a correct winding count of an analytic image
        return Err(BoundaryHit);
    }
    Ok((total / 2) as usize)
}

/// Splits one coordinate near its midpoint, nudging the cut until neither
/// child reports a boundary hit. Returns the two child boxes with counts.
fn split_box(p: &QPoly, rect: &ComplexBox, count: usize) -> (ComplexBox, usize, ComplexBox, usize) {
    let split_re = rect.re.width() >= rect.im.width();
    let (lo, hi) = if split_re {
        (rect.re.lo.clone(), rect.re.hi.clone())
    } else {
        (rect.im.lo.clone(), rect.im.hi.clone())
    };
    let width = &hi - &lo;
    let mut k = 0i64;
    loop {
        // midpoint, then midpoint ± width/64, ± 2*width/64, ...
        let offset = rat_int(k) * &width / rat_int(64);
        let cut = (&lo + &hi) / rat_int(2) + offset;
        if cut <= lo || cut >= hi {
            k = next_nudge(k);
            continue;
        }
        let (left, right) = if split_re {
            (
                ComplexBox::new(RatInterval::new(lo.clone(), cut.clone()), rect.im.clone()),
                ComplexBox::new(RatInterval::new(cut.clone(), hi.clone()), rect.im.clone()),
            )
        } else {
            (
                ComplexBox::new(rect.re.clone(), RatInterval::new(lo.clone(), cut.clone())),
                ComplexBox::new(rect.re.clone(), RatInterval::new(cut.clone(), hi.clone())),
            )
        };
        if let (Ok(cl), Ok(cr)) = (count_roots_in_box(p, &left), count_roots_in_box(p, &right)) {
            assert_eq!(cl + cr, count, "subdivision lost a root");
            return (left, cl, right, cr);
        }
        k = next_nudge(k);
        assert!(k.abs() < 32, "could not find a root-free cut line");
    }
}

fn next_nudge(k: i64) -> i64 {
    if k > 0 {
        -k
    } else {
        -k + 1
    }
}

/// All roots of an irreducible (hence squarefree) polynomial:
/// real isolating intervals plus one box per non-real root in the upper
/// half plane (conjugates are their mirror images).
#[derive(Clone, Debug)]
pub struct RootLayout {
    pub real: Vec<(Rat, Rat)>,
    pub upper: Vec<ComplexBox>,
}

pub fn isolate_roots(p: &QPoly) -> RootLayout {
    let d = p.degree().expect("nonzero polynomial");
    let real = isolate_real_roots(p);
    let pairs = (d - real.len()) / 2;
    assert_eq!(real.len() + 2 * pairs, d, "odd number of non-real roots");
    if pairs == 0 {
        return RootLayout { real, upper: vec![] };
    }
    let bound = p.cauchy_root_bound() + Rat::one();
    // find a floor above the real axis catching every upper root; the
    // width and height get different jitters so corners cannot stick to
    // symmetry lines of the polynomial
    let mut gamma = rat(1, 4);
    let mut attempt = 0;
    let top_box = loop {
        attempt += 1;
        assert!(attempt < 200, "failed to isolate non-real roots");
        let candidate = ComplexBox::new(
            RatInterval::new(
                -&bound - rat(attempt as i64, 97),
                &bound + rat(attempt as i64, 97),
            ),
            RatInterval::new(gamma.clone(), &bound + rat(1, 3) + rat(attempt as i64, 113)),
        );
        match count_roots_in_box(p, &candidate) {
            Ok(c) if c == pairs => break candidate,
            Ok(_) => gamma = &gamma / rat_int(4),
            Err(BoundaryHit) => gamma = &gamma * rat(61, 64),
        }
    };
    let mut upper = Vec::with_capacity(pairs);
    let mut stack = vec![(top_box, pairs)];
    while let Some((rect, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            upper.push(rect);
            continue;
        }
        let (l, cl, r, cr) = split_box(p, &rect, count);
        stack.push((l, cl));
        stack.push((r, cr));
    }
    upper.sort_by_key(|a| (a.re.lo.clone(), a.im.lo.clone()));
    RootLayout { real, upper }
}


/// Shrink a one-root box until both side lengths are at most `width`.
pub fn refine_box(p: &QPoly, rect: &ComplexBox, width: &Rat) -> ComplexBox {
    let mut cur = rect.clone();
    while &cur.width() > width {
        let (l, cl, r, _cr) = split_box(p, &cur, 1);
        cur = if cl == 1 { l } else { r };
    }
    cur
}
