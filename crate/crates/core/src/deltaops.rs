//! Delta operators `Q = g(D)` and their basic polynomial sequences.
//!
//! Two independent constructions are provided: a generic triangular solve that
//! works for any delta operator, and the closed form for `aD - bD^{p+1}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::rational::{binomial, factorial, powi, rational_str};
use crate::exact::{FormalPowerSeries, Poly, Rational, SeriesError};
use crate::fusscat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error("not a delta operator: constant term of g must vanish")]
    NonzeroConstant,
    #[error("not a delta operator: c_1 = 0")]
    ZeroLinearTerm,
    #[error("a must be nonzero")]
    ZeroA,
    #[error("p must be at least 1")]
    ZeroP,
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `Q = sum_k g_k D^k` where `g_k = c_k / k!`. Coefficients past the stored
/// order of `g` are taken to be zero, so infinite operators such as `e^D - 1`
/// must be truncated above the degree of every polynomial they act on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaOperator {
    g: FormalPowerSeries,
}

impl DeltaOperator {
    pub fn new(g: FormalPowerSeries) -> Result<Self, DeltaError> {
        if !g.constant_term().is_zero() {
            return Err(DeltaError::NonzeroConstant);
        }
        if g.order() == 0 || g.coeff(1).is_zero() {
            return Err(DeltaError::ZeroLinearTerm);
        }
        Ok(DeltaOperator { g })
    }

    /// The derivative `D` itself.
    pub fn derivative() -> Self {
        DeltaOperator {
            g: FormalPowerSeries::x(1),
        }
    }

    /// `aD - bD^{p+1}`.
    pub fn from_triple(abp: &AbTriple) -> Self {
        DeltaOperator { g: abp.g_series(abp.p as usize + 1) }
    }

    /// Forward difference `e^D - 1`, truncated at `order`.
    pub fn forward_difference(order: usize) -> Self {
        let g = FormalPowerSeries::from_coeffs(
            (0..=order)
                .map(|k| {
                    if k == 0 {
                        Rational::zero()
                    } else {
                        Rational::new(BigInt::one(), factorial(k as u64))
                    }
                })
                .collect(),
            order.max(1),
        );
        DeltaOperator { g }
    }

    pub fn g(&self) -> &FormalPowerSeries {
        &self.g
    }

    /// `sum_k g_k D^k p`; finite because `D^{deg p + 1} p = 0`.
    pub fn apply(&self, p: &Poly) -> Poly {
        let Some(deg) = p.degree() else {
            return Poly::zero();
        };
        let mut acc = Poly::zero();
        let mut dk = p.clone();
        for k in 1..=deg.min(self.g.order()) {
            dk = dk.diff();
            let gk = self.g.coeff(k);
            if !gk.is_zero() {
                acc = &acc + &dk.scale(gk);
            }
        }
        acc
    }
}

/// Parameters of `Q = aD - bD^{p+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbTriple {
    #[serde(with = "rational_str")]
    a: Rational,
    #[serde(with = "rational_str")]
    b: Rational,
    p: u32,
}

impl AbTriple {
    pub fn new(a: Rational, b: Rational, p: u32) -> Result<Self, DeltaError> {
        if a.is_zero() {
            return Err(DeltaError::ZeroA);
        }
        if p == 0 {
            return Err(DeltaError::ZeroP);
        }
        Ok(AbTriple { a, b, p })
    }

    /// `(1, 1/2, 1)`, i.e. `D - D^2/2`.
    pub fn carlitz() -> Self {
        AbTriple {
            a: Rational::one(),
            b: Rational::new(1.into(), 2.into()),
            p: 1,
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `g(x) = ax - bx^{p+1}` truncated at `order`.
    pub fn g_series(&self, order: usize) -> FormalPowerSeries {
        let mut cs = vec![Rational::zero(); order + 1];
        if order >= 1 {
            cs[1] = self.a.clone();
        }
        let top = self.p as usize + 1;
        if top <= order {
            cs[top] = -self.b.clone();
        }
        FormalPowerSeries::new(cs)
    }
}

impl fmt::Display for AbTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, p={})", self.a, self.b, self.p)
    }
}

/// `count` triples with `|num| <= 5`, `1 <= den <= 5`, `a != 0` and
/// `1 <= p <= 4`, reproducible from `seed`.
pub fn seeded_triples(seed: u64, count: usize) -> Vec<AbTriple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut small = |nonzero: bool| loop {
        let num: i64 = rng.random_range(-5..=5);
        let den: i64 = rng.random_range(1..=5);
        if !(nonzero && num == 0) {
            return Rational::new(num.into(), den.into());
        }
    };
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let a = small(true);
        let b = small(false);
        out.push((a, b));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    out.into_iter()
        .map(|(a, b)| AbTriple {
            a,
            b,
            p: rng.random_range(1..=4),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceSource {
    ClosedForm,
    Generic,
    Egf,
}

/// `polys[n] = w_n(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialSequence {
    polys: Vec<Poly>,
    source: SequenceSource,
}

/// One serialized term: `{ "n": k, "coeffs": ["p/q", ...] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub n: usize,
    pub coeffs: Poly,
}

impl BinomialSequence {
    pub fn new(polys: Vec<Poly>, source: SequenceSource) -> Self {
        BinomialSequence { polys, source }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> Option<&Poly> {
        self.polys.get(n)
    }

    pub fn source(&self) -> SequenceSource {
        self.source
    }

    pub fn nmax(&self) -> usize {
        self.polys.len().saturating_sub(1)
    }

    pub fn records(&self) -> Vec<SequenceRecord> {
        self.polys
            .iter()
            .enumerate()
            .map(|(n, p)| SequenceRecord {
                n,
                coeffs: p.clone(),
            })
            .collect()
    }
}

/// Solves `Q w_n = n w_{n-1}`, `w_n(0) = 0` for the coefficients of `w_n`,
/// highest degree first. The system is triangular because `Q` lowers degree
/// by exactly one.
pub fn basic_sequence_generic(q: &DeltaOperator, nmax: usize) -> BinomialSequence {
    let g = q.g();
    let g_at = |j: usize| -> Option<&Rational> {
        (j <= g.order()).then(|| g.coeff(j)).filter(|c| !c.is_zero())
    };
    let g1 = g.coeff(1).clone();
    let fact: Vec<Rational> = (0..=nmax as u64)
        .map(|k| Rational::from_integer(factorial(k)))
        .collect();

    let mut polys = vec![Poly::one()];
    for n in 1..=nmax {
        let prev = &polys[n - 1];
        let n_rat = Rational::from_integer(n.into());
        let mut x = vec![Rational::zero(); n + 1];
        for m in (0..n).rev() {
            let mut rhs = &n_rat * prev.coeff(m);
            for k in (m + 2)..=n {
                if let Some(gj) = g_at(k - m) {
                    rhs -= &x[k] * gj * &fact[k] / &fact[m];
                }
            }
            x[m + 1] = rhs / (&g1 * Rational::from_integer((m + 1).into()));
        }
        polys.push(Poly::new(x));
    }
    BinomialSequence::new(polys, SequenceSource::Generic)
}

/// Closed form for `aD - bD^{p+1}`:
/// `w_n(t) = sum_j (n+j-1)! b^j / (j! (n-jp-1)! a^{n+j}) t^{n-jp}`.
pub fn basic_sequence_closed(abp: &AbTriple, nmax: usize) -> BinomialSequence {
    let p = abp.p as usize;
    let mut polys = vec![Poly::one()];
    for n in 1..=nmax {
        let mut cs = vec![Rational::zero(); n + 1];
        for j in 0..=(n - 1) / p {
            let num = factorial((n + j - 1) as u64);
            let den = factorial(j as u64) * factorial((n - j * p - 1) as u64);
            let coeff = Rational::new(num, den)
                * powi(&abp.b, j as i64)
                * powi(&abp.a, -((n + j) as i64));
            cs[n - j * p] = coeff;
        }
        polys.push(Poly::new(cs));
    }
    BinomialSequence::new(polys, SequenceSource::ClosedForm)
}

/// `f(x) = (x/a) B_{p+1}(b x^p / a^{p+1})`, the compositional inverse of
/// `ax - bx^{p+1}`.
pub fn f_series(abp: &AbTriple, order: usize) -> Result<FormalPowerSeries, DeltaError> {
    if order == 0 {
        return Err(DeltaError::ZeroOrder);
    }
    let p = abp.p as usize;
    let inner_order = order - 1;
    let fuss = fusscat::fuss_series(abp.p as i64 + 1, inner_order as i64)
        .expect("p + 1 >= 2 and order >= 0 are valid Fuss parameters");
    let scale = &abp.b * powi(&abp.a, -(abp.p as i64 + 1));
    let inner = FormalPowerSeries::monomial(scale, p, inner_order);
    let composed = fuss.series().compose(&inner)?;
    Ok(composed.mul_x().scale(&abp.a.recip()))
}

/// `w_n(s+t) = sum_k C(n,k) w_k(s) w_{n-k}(t)`, checked exactly on the grid
/// `s, t in {0..=n}`. Each side has degree at most `n` in each variable, so
/// agreement on the grid proves the bivariate identity. Returns `false` when
/// `n` is past the end of the sequence.
pub fn binomial_identity_check(seq: &BinomialSequence, n: usize) -> bool {
    if n > seq.nmax() || seq.polys.is_empty() {
        return false;
    }
    let grid: Vec<Rational> = (0..=n).map(|v| Rational::from_integer(v.into())).collect();
    // values[k][s] = w_k(s)
    let values: Vec<Vec<Rational>> = seq.polys[..=n]
        .iter()
        .map(|w| grid.iter().map(|s| w.eval(s)).collect())
        .collect();
    let binoms: Vec<Rational> = (0..=n)
        .map(|k| Rational::from_integer(binomial(n as u64, k as u64)))
        .collect();
    let wn = &seq.polys[n];
    for (si, s) in grid.iter().enumerate() {
        let shifted = wn.taylor_shift(s);
        for (ti, t) in grid.iter().enumerate() {
            let lhs = shifted.eval(t);
            let rhs = (0..=n).fold(Rational::zero(), |acc, k| {
                acc + &binoms[k] * &values[k][si] * &values[n - k][ti]
            });
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}
