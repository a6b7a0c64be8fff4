//! Brute-force checks of the soft-photon combinatorics.
//!
//! Three identities are exercised here:
//!
//! * the permutation sum of nested eikonal denominators collapses to a
//!   product, `Σ_σ Π_j 1/(a_σ1 + … + a_σj) = Π_j 1/a_j`;
//! * the lower-branch ("2-vertex") brackets vanish as the `i0`
//!   regulator is removed;
//! * the multinomial double sum over lines attached to the incoming,
//!   outgoing and both electron legs resums to `(d₁₁ + d₂₂ + 2d₁₂)^N / (N! 2^N)`,
//!   and hence the series to an exponential.

use num_complex::{Complex, Complex64};
use num_traits::{FromPrimitive, Num};
use rand::Rng;
use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{invalid, Error, Result};

/// Largest weight count enumerated over all permutations (8! = 40320).
pub const MAX_ENUMERATION: usize = 8;
/// Largest order accepted by [`i_n_bruteforce`] and [`resummed_series`].
pub const MAX_SERIES_ORDER: u32 = 20;

/// Eikonal weights `a_j = w_j·q` with an optional `+iε` regulator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EikonalWeights {
    a: Vec<f64>,
    epsilon: f64,
}

impl EikonalWeights {
    pub fn new(a: Vec<f64>, epsilon: f64) -> Result<Self> {
        if a.is_empty() {
            return Err(invalid("a", "need at least one weight"));
        }
        if a.iter().any(|x| *x == 0.0 || !x.is_finite()) {
            return Err(invalid("a", "weights must be finite and nonzero"));
        }
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(invalid("epsilon", "must be finite and non-negative"));
        }
        Ok(Self { a, epsilon })
    }

    pub fn weights(&self) -> &[f64] {
        &self.a
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(self.a.clone(), epsilon)
    }

    /// Smallest |Σ_{j∈S} a_j| over nonempty subsets S. Every permutation
    /// prefix is such a subset, and every subset is some prefix.
    pub fn min_partial_sum(&self) -> f64 {
        let n = self.a.len();
        (1u32..(1 << n))
            .map(|mask| {
                self.a
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask & (1 << j) != 0)
                    .map(|(_, x)| x)
                    .sum::<f64>()
                    .abs()
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn has_singular_prefix(&self) -> bool {
        self.min_partial_sum() == 0.0
    }
}

/// Visits every permutation of `items` in Heap's order.
fn for_each_permutation<T: Copy>(items: &[T], mut visit: impl FnMut(&[T])) {
    let mut p = items.to_vec();
    let n = p.len();
    let mut c = vec![0usize; n];
    visit(&p);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            visit(&p);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn check_enumerable(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION {
        Err(Error::TooLarge {
            n,
            max: MAX_ENUMERATION,
        })
    } else {
        Ok(())
    }
}

/// Σ over all orderings of Π_j 1/(a_σ1 + … + a_σj + iε).
/// Accumulated in double-double precision.
pub fn perm_sum(weights: &EikonalWeights) -> Result<Complex64> {
    check_enumerable(weights.len())?;
    if weights.epsilon == 0.0 && weights.has_singular_prefix() {
        return Err(Error::SingularPrefix);
    }
    let eps = TwoFloat::from(weights.epsilon);
    let zero = TwoFloat::from(0.0);
    let one = Complex::new(TwoFloat::from(1.0), zero);
    let mut total = Complex::new(zero, zero);
    for_each_permutation(&weights.a, |order| {
        let mut partial = zero;
        let mut term = one;
        for a in order {
            partial += *a;
            term /= Complex::new(partial, eps);
        }
        total += term;
    });
    Ok(Complex64::new(total.re.into(), total.im.into()))
}

/// Π_j 1/(a_j + iε).
pub fn eikonal_product(weights: &EikonalWeights) -> Complex64 {
    weights.a.iter().fold(Complex64::new(1.0, 0.0), |acc, a| {
        acc / Complex64::new(*a, weights.epsilon)
    })
}

/// Value of a lower-branch bracket together with the size of its largest
/// single permutation term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BracketValue {
    pub value: Complex64,
    pub largest_term: f64,
}

/// The bracket for `m` lower-branch vertices on one electron line.
///
/// With prefix sums `S_j` of the weights, each term is
///
/// ```text
/// Π_{j<m} 1/(S_j − iε) · [1/(S_m + iε) − 1/(S_m − iε)] · Π_{j>m} 1/(S_j + iε)
/// ```
///
/// summed over all orderings of the first `m` weights; the remaining
/// weights keep their order.
pub fn two_term_bracket_detailed(weights: &EikonalWeights, m: usize) -> Result<BracketValue> {
    let n = weights.len();
    if m == 0 || m > n {
        return Err(invalid("m", format!("must lie in 1..={n}")));
    }
    if !(weights.epsilon > 0.0) {
        return Err(invalid("epsilon", "the bracket needs a finite regulator"));
    }
    check_enumerable(m)?;
    let eps = weights.epsilon;
    let (head, tail) = weights.a.split_at(m);
    let head_sum: f64 = head.iter().sum();

    // The difference factor and the tail depend only on S_m, which every
    // ordering of the head shares.
    let difference = Complex64::new(head_sum, eps).inv() - Complex64::new(head_sum, -eps).inv();
    let mut partial = head_sum;
    let mut tail_factor = Complex64::new(1.0, 0.0);
    for a in tail {
        partial += a;
        tail_factor /= Complex64::new(partial, eps);
    }
    let common = difference * tail_factor;

    let mut value = Complex64::new(0.0, 0.0);
    let mut largest_term = 0.0f64;
    for_each_permutation(head, |order| {
        let mut s = 0.0;
        let mut term = common;
        for a in &order[..m - 1] {
            s += a;
            term /= Complex64::new(s, -eps);
        }
        largest_term = largest_term.max(term.norm());
        value += term;
    });
    Ok(BracketValue {
        value,
        largest_term,
    })
}

pub fn two_term_bracket(weights: &EikonalWeights, m: usize) -> Result<Complex64> {
    two_term_bracket_detailed(weights, m).map(|b| b.value)
}

/// One Richardson step towards ε → 0 for a quantity linear in ε:
/// `2 f(ε/2) − f(ε)`.
pub fn richardson_to_zero<F>(f: F, epsilon: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    Ok(2.0 * f(0.5 * epsilon)? - f(epsilon)?)
}

/// Soft-photon integrals d₁₁, d₂₂, d₁₂ with e² factored out.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DstTriple {
    pub d11: Complex64,
    pub d22: Complex64,
    pub d12: Complex64,
}

impl DstTriple {
    pub fn new(d11: Complex64, d22: Complex64, d12: Complex64) -> Self {
        Self { d11, d22, d12 }
    }

    pub fn real(d11: f64, d22: f64, d12: f64) -> Self {
        Self::new(d11.into(), d22.into(), d12.into())
    }

    /// d₁₁ + d₂₂ + 2d₁₂
    pub fn combination(&self) -> Complex64 {
        self.d11 + self.d22 + 2.0 * self.d12
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.d22, self.d11, self.d12)
    }
}

// x^k / (k! · 2^k) if `halve`, else x^k / k!, built one factor at a time.
fn scaled_power<T: Clone + Num + FromPrimitive>(x: &T, k: u32, halve: bool) -> T {
    let mut acc = T::one();
    for i in 1..=k as u64 {
        let d = if halve { 2 * i } else { i };
        acc = acc * x.clone() / T::from_u64(d).expect("small integer");
    }
    acc
}

/// The double sum over (n_i, n_f) with n₀ = N − n_i − n_f, for any field
/// type. With exact rationals the identity against
/// [`multinomial_closed_form`] holds exactly.
pub fn multinomial_sum<T: Clone + Num + FromPrimitive>(d11: &T, d22: &T, d12: &T, order: u32) -> T {
    let mut total = T::zero();
    for n_i in 0..=order {
        let left = scaled_power(d11, n_i, true);
        for n_f in 0..=(order - n_i) {
            let n_0 = order - n_i - n_f;
            total =
                total + left.clone() * scaled_power(d22, n_f, true) * scaled_power(d12, n_0, false);
        }
    }
    total
}

/// (d₁₁ + d₂₂ + 2d₁₂)^N / (N! 2^N)
pub fn multinomial_closed_form<T: Clone + Num + FromPrimitive>(
    d11: &T,
    d22: &T,
    d12: &T,
    order: u32,
) -> T {
    let combined = d11.clone() + d22.clone() + d12.clone() + d12.clone();
    scaled_power(&combined, order, true)
}

fn check_order(order: u32) -> Result<()> {
    if order > MAX_SERIES_ORDER {
        Err(invalid(
            "N",
            format!("order {order} exceeds {MAX_SERIES_ORDER}"),
        ))
    } else {
        Ok(())
    }
}

/// N-th coefficient of the soft-photon series by explicit double sum.
pub fn i_n_bruteforce(d: &DstTriple, order: u32) -> Result<Complex64> {
    check_order(order)?;
    Ok(multinomial_sum(&d.d11, &d.d22, &d.d12, order))
}

/// Σ_{N=0}^{N_max} (e²)^N I_N, which tends to exp{(e²/2)(d₁₁ + d₂₂ + 2d₁₂)}.
pub fn resummed_series(d: &DstTriple, e_sq: f64, n_max: u32) -> Result<Complex64> {
    check_order(n_max)?;
    let mut total = Complex64::new(0.0, 0.0);
    let mut coupling = 1.0;
    for order in 0..=n_max {
        total += coupling * i_n_bruteforce(d, order)?;
        coupling *= e_sq;
    }
    Ok(total)
}

/// The exponential the series resums to.
pub fn resummed_exponential(d: &DstTriple, e_sq: f64) -> Complex64 {
    (0.5 * e_sq * d.combination()).exp()
}

/// Lagrange bound on the tail of the exponential series:
/// |x|^{N+1}/(N+1)! · e^{|x|}.
pub fn taylor_remainder_bound(x: Complex64, n_max: u32) -> f64 {
    let r = x.norm();
    let mut bound = r.exp();
    for k in 1..=(n_max + 1) {
        bound *= r / k as f64;
    }
    bound
}

/// Random weights with every partial sum bounded away from zero
/// (|partial| > 1e-3 · max|a_j|), drawn by rejection.
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    assert!((1..=MAX_ENUMERATION).contains(&n));
    loop {
        let a: Vec<f64> = (0..n)
            .map(|_| {
                let magnitude = rng.random_range(0.1..2.0);
                if rng.random_bool(0.5) {
                    magnitude
                } else {
                    -magnitude
                }
            })
            .collect();
        let max = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let weights = EikonalWeights::new(a, 0.0).expect("nonzero by construction");
        if weights.min_partial_sum() > 1e-3 * max {
            return weights.a;
        }
    }
}
