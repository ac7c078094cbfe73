//! Independent numerical cross-check of the exact root localization: a
//! plain f64 Durand–Kerner iteration approximates all roots, and every
//! approximation must land inside exactly one exact enclosure.

use cantor_bases::interval::ComplexBox;
use cantor_bases::poly::{rat, QPoly};
use cantor_bases::roots::{isolate_roots, refine_box};
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug)]
struct C {
    re: f64,
    im: f64,
}

impl C {
    fn mul(self, o: C) -> C {
        C { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }

    fn sub(self, o: C) -> C {
        C { re: self.re - o.re, im: self.im - o.im }
    }

    fn div(self, o: C) -> C {
        let d = o.re * o.re + o.im * o.im;
        C { re: (self.re * o.re + self.im * o.im) / d, im: (self.im * o.re - self.re * o.im) / d }
    }
}

/// Durand–Kerner on monic-normalized coefficients.
fn numeric_roots(coeffs: &[f64]) -> Vec<C> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: C| -> C {
        let mut acc = C { re: 0.0, im: 0.0 };
        for &c in monic.iter().rev() {
            acc = acc.mul(z);
            acc.re += c;
        }
        acc
    };
    let mut roots: Vec<C> = (0..n)
        .map(|k| {
            let angle = 0.7 + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            C { re: 1.3 * angle.cos(), im: 1.3 * angle.sin() }
        })
        .collect();
    for _ in 0..400 {
        for i in 0..n {
            let mut denom = C { re: 1.0, im: 0.0 };
            for j in 0..n {
                if i != j {
                    denom = denom.mul(roots[i].sub(roots[j]));
                }
            }
            let delta = eval(roots[i]).div(denom);
            roots[i] = roots[i].sub(delta);
        }
    }
    roots
}

fn box_contains(b: &ComplexBox, z: C, slack: f64) -> bool {
    let lo_re = b.re.lo.to_f64().unwrap() - slack;
    let hi_re = b.re.hi.to_f64().unwrap() + slack;
    let lo_im = b.im.lo.to_f64().unwrap() - slack;
    let hi_im = b.im.hi.to_f64().unwrap() + slack;
    lo_re <= z.re && z.re <= hi_re && lo_im <= z.im && z.im <= hi_im
}

fn check_polynomial(ints: &[i64]) {
    let p = QPoly::from_int_coeffs(ints);
    let d = p.degree().unwrap();
    let layout = isolate_roots(&p);
    assert_eq!(layout.real.len() + 2 * layout.upper.len(), d, "root count for {ints:?}");

    // refine everything and collect the full box list
    let width = rat(1, 1 << 24);
    let mut boxes: Vec<ComplexBox> = Vec::new();
    for (lo, hi) in &layout.real {
        let refined = cantor_bases::poly::refine_root_interval(&p, lo, hi, &width);
        boxes.push(ComplexBox::from_real(cantor_bases::interval::RatInterval::new(
            refined.0, refined.1,
        )));
    }
    for b in &layout.upper {
        let refined = refine_box(&p, b, &width);
        boxes.push(refined.clone());
        boxes.push(refined.conj());
    }
    // pairwise disjoint
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            assert!(boxes[i].disjoint(&boxes[j]), "boxes {i} and {j} overlap for {ints:?}");
        }
    }
    // every numerical root lands in exactly one box
    let coeffs: Vec<f64> = ints.iter().map(|&c| c as f64).collect();
    for z in numeric_roots(&coeffs) {
        let hits = boxes.iter().filter(|b| box_contains(b, z, 1e-5)).count();
        assert_eq!(hits, 1, "root {z:?} of {ints:?} hit {hits} boxes");
    }
}

#[test]
fn reference_minimal_polynomials() {
    check_polynomial(&[-1, -1, 1]); // two real roots
    check_polynomial(&[-2, 0, 1]);
    check_polynomial(&[-1, -1, 0, 1]); // one real, one pair
    check_polynomial(&[-1, -3, -3, 1]);
    check_polynomial(&[1, 0, 1]); // pure pair
    check_polynomial(&[2, 0, 0, 0, 1]); // two pairs
    check_polynomial(&[-3, 1, -4, 1, 1]); // mixed quartic
}

#[test]
fn seeded_random_polynomials() {
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut checked = 0;
    while checked < 40 {
        let d = 2 + (next() % 4) as usize;
        let mut ints: Vec<i64> = (0..d).map(|_| (next() % 21) as i64 - 10).collect();
        ints.push(1); // monic
        let p = QPoly::from_int_coeffs(&ints);
        // squarefree inputs only: that is the contract of the isolator
        if p.degree() != Some(d) || p.gcd_monic(&p.derivative()).degree() != Some(0) {
            continue;
        }
        // skip rational roots: isolation handles them but the float
        // comparison slack does not distinguish a point interval
        if (-12..=12).any(|k| p.eval(&cantor_bases::poly::rat_int(k)).to_f64() == Some(0.0)) {
            continue;
        }
        check_polynomial(&ints);
        checked += 1;
    }
}
