//! Period lattices of flat tori and the binary quadratic forms that give the
//! frequencies of Fourier modes on them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

/// Which quadratic form to use for mode frequencies.
///
/// `Paper` is the form built from the periods themselves,
/// `a = 1/|w1|^2, b = 2 w1.w2 / (|w1|^2 |w2|^2), c = 1/|w2|^2`.
/// `Dual` is `|k u + l v|^2` for the basis `(u, v)` dual to `(w1, w2)`, which
/// indexes the exponentials that are genuinely doubly periodic. The two agree
/// exactly when the periods are orthogonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Paper,
    Dual,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Paper, Variant::Dual];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Paper => "paper",
            Variant::Dual => "dual",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(Variant::Paper),
            "dual" => Ok(Variant::Dual),
            other => Err(Error::InvalidArgument(format!("unknown variant `{other}`"))),
        }
    }
}

/// Periods `w1`, `w2` of a flat torus `C / (Z w1 + Z w2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusLattice<S> {
    omega1: Complex<S>,
    omega2: Complex<S>,
    tol: Tolerance,
}

impl<S: Scalar> TorusLattice<S> {
    /// Checks that the periods are finite and linearly independent over R.
    pub fn new(omega1: Complex<S>, omega2: Complex<S>, tol: Tolerance) -> Result<Self> {
        let finite = [&omega1.re, &omega1.im, &omega2.re, &omega2.im]
            .iter()
            .all(|v| v.to_f64().is_finite());
        if !finite {
            return Err(Error::NonFinite);
        }
        let lat = Self { omega1, omega2, tol };
        let cross = lat.cross();
        let degenerate = if S::EXACT {
            cross.is_zero()
        } else {
            let (g11, _, g22) = lat.gram();
            // |cross| <= tol |w1| |w2|
            let bound = S::from_f64(tol.0 * tol.0).unwrap_or_else(S::zero) * g11 * g22;
            cross.clone() * cross <= bound
        };
        if degenerate {
            return Err(Error::DegenerateLattice);
        }
        Ok(lat)
    }

    pub fn omega1(&self) -> &Complex<S> {
        &self.omega1
    }

    pub fn omega2(&self) -> &Complex<S> {
        &self.omega2
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// Signed area `Im(conj(w1) w2)` of the fundamental parallelogram.
    pub fn cross(&self) -> S {
        self.omega1.re.clone() * self.omega2.im.clone()
            - self.omega1.im.clone() * self.omega2.re.clone()
    }

    pub fn area(&self) -> S {
        self.cross().abs()
    }

    /// `|conj(w2) w1 - w2 conj(w1)|`, twice the area.
    pub fn period_gap(&self) -> S {
        S::from_int(2) * self.area()
    }

    /// Euclidean inner product `w1 . w2` of the periods as plane vectors.
    pub fn dot(&self) -> S {
        self.omega1.re.clone() * self.omega2.re.clone()
            + self.omega1.im.clone() * self.omega2.im.clone()
    }

    /// Gram matrix entries `(|w1|^2, w1.w2, |w2|^2)`.
    pub fn gram(&self) -> (S, S, S) {
        (self.omega1.norm_sqr(), self.dot(), self.omega2.norm_sqr())
    }

    /// Angle between the periods, in `(0, pi)`.
    pub fn angle(&self) -> f64 {
        let (g11, g12, g22) = self.gram();
        let cos = g12.to_f64() / (g11.to_f64() * g22.to_f64()).sqrt();
        cos.clamp(-1.0, 1.0).acos()
    }

    pub fn is_rectangular(&self) -> bool {
        let dot = self.dot();
        if S::EXACT {
            return dot.is_zero();
        }
        let (g11, _, g22) = self.gram();
        let bound = S::from_f64(self.tol.0 * self.tol.0).unwrap_or_else(S::zero) * g11 * g22;
        dot.clone() * dot <= bound
    }

    /// The lattice spanned by `c w1, c w2`.
    pub fn scaled(&self, c: &Complex<S>) -> Result<Self> {
        Self::new(
            self.omega1.clone() * c.clone(),
            self.omega2.clone() * c.clone(),
            self.tol,
        )
    }

    /// The same lattice in the basis `(p w1 + q w2, r w1 + s w2)`.
    pub fn change_basis(&self, [[p, q], [r, s]]: [[i64; 2]; 2]) -> Result<Self> {
        if (p * s - q * r).abs() != 1 {
            return Err(Error::InvalidArgument(format!(
                "basis change [[{p},{q}],[{r},{s}]] is not unimodular"
            )));
        }
        let lin = |a: i64, b: i64| -> Complex<S> {
            self.omega1.scale(S::from_int(a)) + self.omega2.scale(S::from_int(b))
        };
        Self::new(lin(p, q), lin(r, s), self.tol)
    }

    /// Frequency vector (as `x + iy`) of mode `(k, l)` under `variant`;
    /// its squared length is the form value `theta(k, l)`.
    pub fn wave_vector(&self, variant: Variant, k: i64, l: i64) -> Complex<S> {
        let (g11, g12, g22) = self.gram();
        let (k, l) = (S::from_int(k), S::from_int(l));
        match variant {
            Variant::Paper => {
                self.omega1.scale(k / g11) + self.omega2.scale(l / g22)
            }
            Variant::Dual => {
                let det = self.cross() * self.cross();
                let u = (self.omega1.scale(g22.clone()) - self.omega2.scale(g12.clone()))
                    .unscale(det.clone());
                let v = (self.omega2.scale(g11) - self.omega1.scale(g12)).unscale(det);
                u.scale(k) + v.scale(l)
            }
        }
    }

    pub fn theta_form(&self, variant: Variant) -> ThetaForm<S> {
        let (g11, g12, g22) = self.gram();
        let two = S::from_int(2);
        let (a, b, c) = match variant {
            Variant::Paper => {
                let b = two * g12 / (g11.clone() * g22.clone());
                (S::one() / g11, b, S::one() / g22)
            }
            Variant::Dual => {
                // Inverse Gram matrix.
                let det = self.cross() * self.cross();
                let b = -(two * g12) / det.clone();
                (g22 / det.clone(), b, g11 / det)
            }
        };
        ThetaForm {
            a,
            b,
            c,
            variant,
        }
    }
}

/// Positive-definite binary quadratic form `a k^2 + b k l + c l^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaForm<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub variant: Variant,
}

impl<S: Scalar> ThetaForm<S> {
    pub fn new(a: S, b: S, c: S, variant: Variant) -> Result<Self> {
        let form = Self { a, b, c, variant };
        form.check_definite()?;
        Ok(form)
    }

    /// `D = 4ac - b^2`.
    pub fn discriminant(&self) -> S {
        S::from_int(4) * self.a.clone() * self.c.clone() - self.b.clone() * self.b.clone()
    }

    pub(crate) fn check_definite(&self) -> Result<()> {
        let d = self.discriminant();
        if self.a.is_positive() && d.is_positive() {
            Ok(())
        } else {
            Err(Error::NonPositiveDefinite(d.to_string()))
        }
    }

    pub fn value(&self, k: i64, l: i64) -> S {
        let (k, l) = (S::from_int(k), S::from_int(l));
        self.a.clone() * k.clone() * k.clone()
            + self.b.clone() * k * l.clone()
            + self.c.clone() * l.clone() * l
    }

    /// Half-widths `(K, L)` of a box containing every `(k, l)` with
    /// `value(k, l) <= level`.
    pub fn bounding_box(&self, level: &S) -> (i64, i64) {
        let d = self.discriminant();
        let four = S::from_int(4);
        let kk = four.clone() * self.c.clone() * level.clone() / d.clone();
        let ll = four * self.a.clone() * level.clone() / d;
        (
            crate::scalar::ceil_sqrt_bound(&kk),
            crate::scalar::ceil_sqrt_bound(&ll),
        )
    }
}

impl<S: Scalar> fmt::Display for ThetaForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k^2 + {} kl + {} l^2", self.a, self.b, self.c)
    }
}
