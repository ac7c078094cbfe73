//! Dense univariate polynomials over the rationals, plus the exact
//! machinery built on them: Sturm chains, irreducibility over Q,
//! characteristic polynomials and resultants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_int<T: Into<BigInt>>(n: T) -> Rat {
    Rat::from_integer(n.into())
}

pub fn rat<A: Into<BigInt>, B: Into<BigInt>>(n: A, d: B) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Polynomial with rational coefficients, `coeffs[i]` multiplying X^i.
/// The zero polynomial is the empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl std::fmt::Debug for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn x() -> Self {
        QPoly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::new(vec![c])
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn from_bigint_coeffs(coeffs: &[BigInt]) -> Self {
        QPoly::new(coeffs.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> &Rat {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading().is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn mul_scalar(&self, c: &Rat) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), QPoly::new(rem));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        while rem.len() > dd {
            let c = rem.last().unwrap().clone();
            if c.is_zero() {
                rem.pop();
                continue;
            }
            let q = &c / &lead;
            let shift = rem.len() - 1 - dd;
            quot[shift] = q.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * b;
            }
            // the top coefficient cancels exactly
            rem.pop();
            while rem.len() > dd && rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, divisor: &QPoly) -> QPoly {
        self.div_rem(divisor).1
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd_monic(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading().clone();
            a.mul_scalar(&lead.recip())
        }
    }

    /// Extended gcd: returns (g, s, t) with g = s*self + t*other, g monic (or zero).
    pub fn xgcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = r0.leading().clone();
        let inv = lead.recip();
        (r0.mul_scalar(&inv), s0.mul_scalar(&inv), t0.mul_scalar(&inv))
    }

    /// self / gcd(self, self'): same roots, all simple.
    pub fn squarefree_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let g = self.gcd_monic(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Integer coefficient vector, if all coefficients are integers.
    pub fn to_int_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coeffs.iter().map(|c| c.numer().clone()).collect())
    }

    /// 1 + max |a_i|/|a_n|: every complex root has modulus below this.
    pub fn cauchy_root_bound(&self) -> Rat {
        let lead = self.leading().abs();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs() / &lead;
            if q > m {
                m = q;
            }
        }
        m + Rat::one()
    }
}

fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of a squarefree polynomial: p, p', then negated remainders.
pub fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            return chain;
        }
        chain.push(r);
    }
}

fn sign_variations(chain: &[QPoly], x: &Rat) -> usize {
    let mut var = 0;
    let mut last = 0i8;
    for p in chain {
        let s = sign_of(&p.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            var += 1;
        }
        last = s;
    }
    var
}

/// Number of distinct real roots of the chain's polynomial in (lo, hi].
pub fn sturm_count(chain: &[QPoly], lo: &Rat, hi: &Rat) -> usize {
    let a = sign_variations(chain, lo);
    let b = sign_variations(chain, hi);
    a.saturating_sub(b)
}

/// Isolating intervals for every real root of a squarefree polynomial,
/// sorted in increasing order. Rational roots come back as point
/// intervals; irrational ones as open intervals with non-root endpoints.
pub fn isolate_real_roots(p: &QPoly) -> Vec<(Rat, Rat)> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let chain = sturm_chain(p);
    let bound = p.cauchy_root_bound();
    let lo = -&bound - Rat::one();
    let hi = &bound + Rat::one();
    let total = sturm_count(&chain, &lo, &hi);
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(lo, hi, total)];
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            // tighten far enough that the interval cannot contain a second
            // root of anything we later compare against; callers refine more
            out.push((a, b));
            continue;
        }
        let mid = (&a + &b) / rat_int(2);
        if p.eval(&mid).is_zero() {
            // rational root: record the exact point and split around it
            out.push((mid.clone(), mid.clone()));
            let gap = (&b - &a) / rat_int(1024);
            let left_hi = &mid - &gap;
            let right_lo = &mid + &gap;
            let nl = sturm_count(&chain, &a, &left_hi);
            let nr = sturm_count(&chain, &right_lo, &b);
            stack.push((a, left_hi, nl));
            stack.push((right_lo, b, nr));
            continue;
        }
        let nl = sturm_count(&chain, &a, &mid);
        stack.push((a, mid.clone(), nl));
        stack.push((mid, b, n - nl));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Shrink an isolating interval of a simple real root by sign bisection
/// until `hi - lo <= width`. The endpoints never hit the root unless the
/// root itself is rational (then a point interval comes back).
pub fn refine_root_interval(p: &QPoly, lo: &Rat, hi: &Rat, width: &Rat) -> (Rat, Rat) {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    if lo == hi {
        return (lo, hi);
    }
    let slo = sign_of(&p.eval(&lo));
    debug_assert!(slo != 0 && sign_of(&p.eval(&hi)) != 0);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / rat_int(2);
        let sm = sign_of(&p.eval(&mid));
        if sm == 0 {
            return (mid.clone(), mid);
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Cauchy index of A/B over [lo, hi] via the Sturm–Tarski chain (B, A).
/// Requires B(lo) != 0 and B(hi) != 0.
pub fn cauchy_index(den: &QPoly, num: &QPoly, lo: &Rat, hi: &Rat) -> i64 {
    debug_assert!(!den.eval(lo).is_zero() && !den.eval(hi).is_zero());
    let mut chain = vec![den.clone(), num.clone()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    sign_variations(&chain, lo) as i64 - sign_variations(&chain, hi) as i64
}

/// Monic, content-one test for irreducibility over Q of an integer
/// polynomial. Complete: rational-root test settles degrees 2 and 3,
/// Kronecker factor interpolation settles the rest.
pub fn is_irreducible_over_q(p: &QPoly) -> bool {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let ints = match p.to_int_coeffs() {
        Some(v) => v,
        None => {
            // clear denominators first
            let mut lcm = BigInt::one();
            for c in p.coeffs() {
                lcm = lcm.lcm(c.denom());
            }
            return is_irreducible_over_q(&p.mul_scalar(&Rat::from_integer(lcm)));
        }
    };
    if d == 1 {
        return true;
    }
    if has_rational_root(&ints) {
        return false;
    }
    if d <= 3 {
        return true;
    }
    // Kronecker: search for a factor of degree 2..=d/2
    for k in 2..=d / 2 {
        if kronecker_has_factor(p, k) {
            return false;
        }
    }
    true
}

fn divisors_of(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = vec![];
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            let j = &n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    let mut all = Vec::with_capacity(out.len() * 2);
    for d in out {
        all.push(-&d);
        all.push(d);
    }
    all
}

fn has_rational_root(ints: &[BigInt]) -> bool {
    // p/q with p | constant term, q | leading coefficient
    let c0 = &ints[0];
    let lead = ints.last().unwrap();
    if c0.is_zero() {
        return true; // X divides
    }
    for p in divisors_of(c0) {
        for q in divisors_of(lead) {
            if q.is_negative() {
                continue;
            }
            let cand = Rat::new(p.clone(), q.clone());
            let poly = QPoly::from_bigint_coeffs(ints);
            if poly.eval(&cand).is_zero() {
                return true;
            }
        }
    }
    false
}

fn kronecker_has_factor(p: &QPoly, k: usize) -> bool {
    // evaluation points 0, 1, -1, 2, -2, ...
    let mut points = Vec::with_capacity(k + 1);
    let mut v = 0i64;
    while points.len() < k + 1 {
        points.push(rat_int(v));
        v = if v > 0 { -v } else { -v + 1 };
    }
    let values: Vec<BigInt> = points
        .iter()
        .map(|x| p.eval(x).numer().clone())
        .collect();
    if values.iter().any(|v| v.is_zero()) {
        return true; // linear factor through that point
    }
    let divisor_lists: Vec<Vec<BigInt>> = values.iter().map(divisors_of).collect();
    let mut index = vec![0usize; k + 1];
    loop {
        let samples: Vec<Rat> = index
            .iter()
            .enumerate()
            .map(|(i, &j)| Rat::from_integer(divisor_lists[i][j].clone()))
            .collect();
        let g = lagrange_interpolate(&points, &samples);
        if g.degree() == Some(k) && g.is_integral() {
            let (_, r) = p.div_rem(&g);
            if r.is_zero() {
                return true;
            }
        }
        // advance the odometer
        let mut pos = 0;
        loop {
            if pos > k {
                return false;
            }
            index[pos] += 1;
            if index[pos] < divisor_lists[pos].len() {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}

fn lagrange_interpolate(xs: &[Rat], ys: &[Rat]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, y) in ys.iter().enumerate() {
        let mut term = QPoly::constant(y.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = &xs[i] - xj;
            let lin = QPoly::new(vec![-xj / &denom, denom.recip()]);
            term = term.mul(&lin);
        }
        acc = acc.add(&term);
    }
    acc
}

/// Characteristic polynomial of a square rational matrix
/// (Faddeev–LeVerrier), returned monic.
pub fn char_poly(m: &[Vec<Rat>]) -> QPoly {
    let n = m.len();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut mk: Vec<Vec<Rat>> = identity(n);
    let mut c = Rat::one();
    for k in 1..=n {
        if k > 1 {
            // mk = m * (mk_prev + c * I)
            let mut adj = mk.clone();
            for (i, row) in adj.iter_mut().enumerate() {
                row[i] += &c;
            }
            mk = mat_mul(m, &adj);
        } else {
            mk = m.to_vec();
        }
        let tr: Rat = (0..n).map(|i| mk[i][i].clone()).sum();
        c = -tr / rat_int(k as i64);
        coeffs[n - k] = c.clone();
    }
    QPoly::new(coeffs)
}

fn identity(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut out = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let prod = &a[i][k] * &b[k][j];
                out[i][j] += prod;
            }
        }
    }
    out
}

/// Kronecker product of two square matrices.
pub fn kron(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let m = b.len();
    let mut out = vec![vec![Rat::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// Resultant of two integer polynomials via Bareiss elimination on the
/// Sylvester matrix.
pub fn resultant(f: &QPoly, g: &QPoly) -> BigInt {
    let fi = f.to_int_coeffs().expect("integer coefficients");
    let gi = g.to_int_coeffs().expect("integer coefficients");
    let n = fi.len() - 1;
    let m = gi.len() - 1;
    if n == 0 {
        return fi[0].pow(m as u32);
    }
    if m == 0 {
        return gi[0].pow(n as u32);
    }
    let size = n + m;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for r in 0..m {
        for (j, c) in fi.iter().rev().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..n {
        for (j, c) in gi.iter().rev().enumerate() {
            mat[m + r][r + j] = c.clone();
        }
    }
    // Bareiss fraction-free elimination
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            let swap = (k + 1..size).find(|&r| !mat[r][k].is_zero());
            match swap {
                Some(r) => {
                    mat.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = num / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    sign * mat[size - 1][size - 1].clone()
}

/// Rational lower bound on the distance between distinct roots of a
/// squarefree integer polynomial (Mahler).
pub fn root_separation_lower_bound(p: &QPoly) -> Rat {
    let d = p.degree().expect("nonzero polynomial");
    if d <= 1 {
        return Rat::one();
    }
    let disc = resultant(p, &p.derivative()).abs();
    assert!(!disc.is_zero(), "polynomial not squarefree");
    let num = (BigInt::from(3) * disc).sqrt().max(BigInt::one());
    let norm2: BigInt = p
        .to_int_coeffs()
        .expect("integer coefficients")
        .iter()
        .map(|c| c * c)
        .sum();
    let norm_up: BigInt = norm2.sqrt() + BigInt::one();
    let dd = BigInt::from(d).pow(((d + 2) / 2 + 1) as u32);
    Rat::new(num, dd * norm_up.pow((d - 1) as u32))
}
