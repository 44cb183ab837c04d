//! The transition polynomial Q(Z; x⃗, y), its unweighted form Q₁, and the graph
//! polynomials (interlace, global interlace, bracket) that specialize it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde_json::json;

use crate::bits::{iter_bits, submasks};
use crate::isotropic::Graph;
use crate::matroid::Matroid;
use crate::multimatroid::{zm, Multimatroid};
use crate::{exec, limits, Error, Result};

/// Dense univariate polynomial in y; `coeffs[d]` is the coefficient of yᵈ.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Polynomial<BigInt>;
pub type RatPoly = Polynomial<BigRational>;

/// Coefficient ring requirements.
pub trait Coeff: Clone + Zero + One + FromPrimitive + PartialEq + Neg<Output = Self> {}
impl<T: Clone + Zero + One + FromPrimitive + PartialEq + Neg<Output = T>> Coeff for T {}

impl<T: Coeff> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// c · yᵈ
    pub fn monomial(c: T, d: usize) -> Self {
        let mut v = vec![T::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    /// y + c
    pub fn linear(c: T) -> Self {
        Self::new(vec![c, T::one()])
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| T::from_i64(c).expect("representable")).collect())
    }

    /// Σ counts[d] yᵈ
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| T::from_u64(c).expect("representable")).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> T {
        self.coeffs.get(d).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, y: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * y.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(T::one()), |acc, _| &acc * self)
    }

    /// p(y + c), expanded back into the y basis.
    pub fn shift(&self, c: &T) -> Self {
        let lin = Self::linear(c.clone());
        self.coeffs.iter().rev().fold(Self::zero(), |acc, k| &(&acc * &lin) + &Self::constant(k.clone()))
    }

    /// Σ counts[d] (y + c)ᵈ
    pub fn from_shifted_counts(counts: &[u64], c: i64) -> Self {
        Self::from_counts(counts).shift(&T::from_i64(c).expect("representable"))
    }
}

impl<T: Coeff> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, o: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|d| self.coeff(d) + o.coeff(d)).collect())
    }
}

impl<T: Coeff> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, o: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|d| self.coeff(d) + -o.coeff(d)).collect())
    }
}

impl<T: Coeff> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, o: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(v)
    }
}

impl<T: Coeff + fmt::Display + Signed> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}")?,
            }
            match d {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{d}")?,
            }
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn eval_rational(&self, y: &BigRational) -> BigRational {
        self.to_rational().eval(y)
    }

    /// `{"coeffs":["c0",...],"var":"y"}`
    pub fn to_json(&self) -> serde_json::Value {
        json!({ "var": "y", "coeffs": self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<IntPoly> {
        let bad = |m: &str| Error::Parse(format!("polynomial: {m}"));
        if v.get("var").and_then(|x| x.as_str()) != Some("y") {
            return Err(bad("var must be \"y\""));
        }
        let cs = v.get("coeffs").and_then(|x| x.as_array()).ok_or_else(|| bad("coeffs must be an array"))?;
        let coeffs = cs
            .iter()
            .map(|c| c.as_str().and_then(|s| s.parse::<BigInt>().ok()).ok_or_else(|| bad("coefficient is not a decimal string")))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

impl RatPoly {
    /// The integer polynomial, if every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect::<Option<Vec<_>>>().map(IntPoly::new)
    }
}

fn check_order(z: &Multimatroid) -> Result<()> {
    limits::check_order("multimatroid order", z.order(), limits::MM_ORDER)?;
    limits::check("skew class size", z.carrier().max_class_size(), limits::MM_CLASS_SIZE)
}

/// How many transversals have each nullity.
pub fn nullity_histogram(z: &Multimatroid) -> Result<Vec<u64>> {
    check_order(z)?;
    let car = z.carrier();
    Ok(exec::histogram(car.transversal_count(), z.order() + 1, |i| z.nullity(car.transversal(i))))
}

/// Q₁(Z; y) = Σ_T y^{n_Z(T)}.
pub fn q1(z: &Multimatroid) -> Result<IntPoly> {
    Ok(IntPoly::from_counts(&nullity_histogram(z)?))
}

/// Q(Z; x⃗, y) with `weights[e]` the weight of global element e.
pub fn transition_poly(z: &Multimatroid, weights: &[BigRational]) -> Result<RatPoly> {
    check_order(z)?;
    let car = z.carrier();
    if weights.len() < car.total() {
        return Err(Error::IncompleteWeights(weights.len()));
    }
    let terms = exec::map_range(car.transversal_count(), |i| {
        let t = car.transversal(i);
        let w = iter_bits(t).fold(BigRational::one(), |acc, e| acc * &weights[e]);
        (z.nullity(t), w)
    });
    let mut coeffs = vec![BigRational::zero(); z.order() + 1];
    for (d, w) in terms {
        coeffs[d] += w;
    }
    Ok(RatPoly::new(coeffs))
}

/// Q(Z; x⃗, y) at a single point.
pub fn transition_eval(z: &Multimatroid, weights: &[BigRational], y: &BigRational) -> Result<BigRational> {
    Ok(transition_poly(z, weights)?.eval(y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expansion {
    /// Q₁(Z − T; y) = Σ_{F ⊆ T} (−1)^{|F|} y^{n_Z(F)} Q₁(Z|F; y)
    Minus,
    /// Q₁(Z; y) = Σ_{F ⊆ T} y^{n_Z(F)} Q₁((Z|F) − (T \ F); y)
    Plus,
}

/// Evaluates one of the subset expansions over a transversal T.
pub fn q1_expansion(z: &Multimatroid, t: u64, direction: Expansion) -> Result<IntPoly> {
    if !z.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    if !z.carrier().is_transversal(t) {
        return Err(Error::NotTransversal);
    }
    check_order(z)?;
    let fs: Vec<u64> = submasks(t).collect();
    let terms = exec::map_range(fs.len() as u64, |i| -> Result<IntPoly> {
        let f = fs[i as usize];
        let minor = z.minor(f)?;
        let inner = match direction {
            Expansion::Minus => q1(&minor)?,
            Expansion::Plus => {
                let rest = crate::bits::pext(t & !f, z.minor_kept(f));
                q1(&minor.delete(rest)?)?
            }
        };
        let mut term = &IntPoly::monomial(BigInt::one(), z.nullity(f)) * &inner;
        if direction == Expansion::Minus && f.count_ones() % 2 == 1 {
            term = term.scale(&BigInt::from(-1));
        }
        Ok(term)
    });
    terms.into_iter().try_fold(IntPoly::zero(), |acc, p| Ok(&acc + &p?))
}

/// q(G; y) = Σ_{X ⊆ V} (y − 1)^{n(A(G[X]))}.
pub fn interlace(g: &Graph) -> Result<IntPoly> {
    limits::check_order("graph vertices", g.n(), limits::INTERLACE_VERTICES)?;
    let h = exec::histogram(1 << g.n(), g.n() + 1, |x| g.nullity_of(x, 0));
    Ok(IntPoly::from_shifted_counts(&h, -1))
}

/// Q(G; y) = Σ_{X ⊆ V} Σ_{Y ⊆ X} (y − 2)^{n(A(G+Y[X]))}.
pub fn global_interlace(g: &Graph) -> Result<IntPoly> {
    limits::check_order("graph vertices", g.n(), limits::GLOBAL_INTERLACE_VERTICES)?;
    let n = g.n();
    // Base-3 digit per vertex: 0 outside X, 1 in X \ Y, 2 in Y.
    let h = exec::histogram(3u64.pow(n as u32), n + 1, |mut idx| {
        let (mut x, mut y) = (0u64, 0u64);
        for v in 0..n {
            match idx % 3 {
                1 => x |= 1 << v,
                2 => {
                    x |= 1 << v;
                    y |= 1 << v;
                }
                _ => {}
            }
            idx /= 3;
        }
        g.nullity_of(x, y)
    });
    Ok(IntPoly::from_shifted_counts(&h, -2))
}

/// b(G; y) = Σ_{Y ⊆ V} y^{n(A(G+Y))}.
pub fn bracket(g: &Graph) -> Result<IntPoly> {
    limits::check_order("graph vertices", g.n(), limits::INTERLACE_VERTICES)?;
    let v = g.vertices();
    Ok(IntPoly::from_counts(&exec::histogram(1 << g.n(), g.n() + 1, |y| g.nullity_of(v, y))))
}

/// T(M; x, x) computed as Q₁(𝒵_M; x − 1) and cross-checked against deletion-contraction.
pub fn tutte_diagonal(m: &Matroid, x: &BigRational) -> Result<BigRational> {
    limits::check("matroid elements", m.len(), limits::TUTTE_DIAGONAL_ELEMENTS)?;
    let via_q = q1(&zm(m)?)?.eval_rational(&(x - BigRational::one()));
    let direct = m.tutte(x, x)?;
    if via_q != direct {
        return Err(Error::InternalInconsistency(format!("Q₁(𝒵_M; x−1) = {via_q} but T(M; x, x) = {direct}")));
    }
    Ok(via_q)
}

/// Exact rational as "p/q", or "p" when integral.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
