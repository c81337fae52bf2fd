use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Polynomial in π with rational coefficients; `0[k]` multiplies `π^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiPoly(pub Vec<BigRational>);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PiPoly {
    pub fn constant(c: BigRational) -> PiPoly {
        PiPoly(vec![c]).trimmed()
    }

    /// `c · π^k`
    pub fn monomial(c: BigRational, k: usize) -> PiPoly {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        PiPoly(v).trimmed()
    }

    fn trimmed(mut self) -> PiPoly {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &PiPoly) -> PiPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        PiPoly(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&z) + o.0.get(k).unwrap_or(&z))
                .collect(),
        )
        .trimmed()
    }

    pub fn mul(&self, o: &PiPoly) -> PiPoly {
        if self.is_zero() || o.is_zero() {
            return PiPoly::default();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        PiPoly(v).trimmed()
    }

    pub fn scale(&self, c: &BigRational) -> PiPoly {
        PiPoly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    pub fn to_f64(&self) -> f64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * PI.powi(k as i32))
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Kind {
    Sin,
    Cos,
}

/// Finite sums of `c · sin(πkx)` and `c · cos(πkx)` with `k ≥ 0` and
/// coefficients in ℚ[π].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrigPoly(BTreeMap<(Kind, u64), PiPoly>);

impl TrigPoly {
    fn monomial(kind: Kind, k: i64, c: PiPoly) -> TrigPoly {
        let mut out = TrigPoly::default();
        let (c, k) = match (kind, k < 0) {
            (Kind::Sin, true) => (c.scale(&q(-1)), -k),
            (_, true) => (c, -k),
            _ => (c, k),
        };
        if kind == Kind::Sin && k == 0 {
            return out;
        }
        out.add_term(kind, k.unsigned_abs(), c);
        out
    }

    /// `sin(πkx)`
    pub fn sin(k: i64) -> TrigPoly {
        TrigPoly::monomial(Kind::Sin, k, PiPoly::constant(q(1)))
    }

    /// `cos(πkx)`
    pub fn cos(k: i64) -> TrigPoly {
        TrigPoly::monomial(Kind::Cos, k, PiPoly::constant(q(1)))
    }

    fn add_term(&mut self, kind: Kind, k: u64, c: PiPoly) {
        let e = self.0.entry((kind, k)).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.0.remove(&(kind, k));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (&(kind, k), c) in &o.0 {
            out.add_term(kind, k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &PiPoly) -> TrigPoly {
        let mut out = TrigPoly::default();
        for (&(kind, k), x) in &self.0 {
            out.add_term(kind, k, x.mul(c));
        }
        out
    }

    pub fn neg(&self) -> TrigPoly {
        self.scale(&PiPoly::constant(q(-1)))
    }

    /// Exact `d/dx`.
    pub fn derivative(&self) -> TrigPoly {
        let mut out = TrigPoly::default();
        for (&(kind, k), c) in &self.0 {
            let f = c.mul(&PiPoly::monomial(q(k as i64), 1));
            match kind {
                Kind::Sin => out.add_term(Kind::Cos, k, f),
                Kind::Cos => out.add_term(Kind::Sin, k, f.scale(&q(-1))),
            }
        }
        out
    }

    /// Product through the product-to-sum formulas.
    pub fn mul(&self, o: &TrigPoly) -> TrigPoly {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut out = TrigPoly::default();
        for (&(ka, a), ca) in &self.0 {
            for (&(kb, b), cb) in &o.0 {
                let c = ca.mul(cb).scale(&half);
                let (a, b) = (a as i64, b as i64);
                let terms = match (ka, kb) {
                    (Kind::Cos, Kind::Cos) => [(Kind::Cos, a - b, 1), (Kind::Cos, a + b, 1)],
                    (Kind::Sin, Kind::Sin) => [(Kind::Cos, a - b, 1), (Kind::Cos, a + b, -1)],
                    (Kind::Sin, Kind::Cos) => [(Kind::Sin, a + b, 1), (Kind::Sin, a - b, 1)],
                    (Kind::Cos, Kind::Sin) => [(Kind::Sin, a + b, 1), (Kind::Sin, b - a, 1)],
                };
                for (kind, k, sign) in terms {
                    out = out.add(&TrigPoly::monomial(kind, k, c.scale(&q(sign))));
                }
            }
        }
        out
    }

    /// Exact value at an integer point `x`.
    pub fn at_integer(&self, x: i64) -> PiPoly {
        let mut out = PiPoly::default();
        for (&(kind, k), c) in &self.0 {
            if kind == Kind::Cos {
                let sign = if (k as i64 * x).rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                };
                out = out.add(&c.scale(&q(sign)));
            }
        }
        out
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0
            .iter()
            .map(|(&(kind, k), c)| {
                let t = PI * k as f64 * x;
                c.to_f64() * if kind == Kind::Sin { t.sin() } else { t.cos() }
            })
            .sum()
    }

    /// `∫₀¹` exactly, as `a + b/π` with `a, b ∈ ℚ[π]`.
    pub fn integral(&self) -> (PiPoly, PiPoly) {
        let mut a = PiPoly::default();
        let mut b = PiPoly::default();
        for (&(kind, k), c) in &self.0 {
            match kind {
                Kind::Cos if k == 0 => a = a.add(c),
                Kind::Cos => {}
                // (1 − cos(πk)) / (πk)
                Kind::Sin if k % 2 == 1 => {
                    b = b.add(&c.scale(&BigRational::new(BigInt::from(2), BigInt::from(k))))
                }
                Kind::Sin => {}
            }
        }
        (a, b)
    }
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out
}

fn quadrature(f: &TrigPoly, nodes: &[(f64, f64)]) -> f64 {
    nodes.iter().map(|&(x, w)| w * f.eval(x)).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub k: i64,
    /// The eigenvalue is `eigenvalue_over_pi · π`.
    pub eigenvalue_over_pi: i64,
    pub eigen_equation: bool,
    pub boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    pub n: i64,
    pub quadrature_points: usize,
    pub entries: Vec<EigenEntry>,
    /// Integrals whose exact value matched the closed form.
    pub integrals_checked: usize,
    pub exact_mismatches: Vec<String>,
    pub max_quadrature_error: f64,
    pub passed: bool,
}

/// `D₀(f, g) = (−g′, f′)` on pairs of trigonometric polynomials.
fn d0(f: &TrigPoly, g: &TrigPoly) -> (TrigPoly, TrigPoly) {
    (g.derivative().neg(), f.derivative())
}

/// Checks that `(sin(πk·), cos(πk·))` is an eigenvector of `D₀` with
/// eigenvalue `πk` for `|k| ≤ n`, that its first component vanishes at both
/// endpoints, and that the basis integrals agree with their closed forms and
/// with Gauss–Legendre quadrature within `1e-10`.
pub fn verify_segments_eigenbasis(n: i64, quadrature_points: usize) -> EigenReport {
    let nodes = gauss_legendre(quadrature_points);
    let mut entries = Vec::new();
    for k in -n..=n {
        let (f, g) = (TrigPoly::sin(k), TrigPoly::cos(k));
        let (df, dg) = d0(&f, &g);
        let lambda = PiPoly::monomial(q(k), 1);
        let eigen_equation = df == f.scale(&lambda) && dg == g.scale(&lambda);
        let boundary = f.at_integer(0).is_zero() && f.at_integer(1).is_zero();
        entries.push(EigenEntry {
            k,
            eigenvalue_over_pi: k,
            eigen_equation,
            boundary,
        });
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut checked = 0;
    let mut mismatches = Vec::new();
    let mut max_err: f64 = 0.0;
    let mut check = |name: String, prod: TrigPoly, expected: Option<BigRational>| {
        let (a, b) = prod.integral();
        let exact = a.to_f64() + b.to_f64() / PI;
        if let Some(e) = expected {
            if !(b.is_zero() && a == PiPoly::constant(e)) {
                mismatches.push(name);
                return;
            }
        }
        checked += 1;
        max_err = max_err.max((quadrature(&prod, &nodes) - exact).abs());
    };
    for a in 0..=n {
        for b in 0..=n {
            let cc = if a != b {
                BigRational::zero()
            } else if a == 0 {
                q(1)
            } else {
                half.clone()
            };
            let ss = if a == b && a != 0 {
                half.clone()
            } else {
                BigRational::zero()
            };
            check(
                format!("cos{a}·cos{b}"),
                TrigPoly::cos(a).mul(&TrigPoly::cos(b)),
                Some(cc),
            );
            check(
                format!("sin{a}·sin{b}"),
                TrigPoly::sin(a).mul(&TrigPoly::sin(b)),
                Some(ss),
            );
            check(
                format!("sin{a}·cos{b}"),
                TrigPoly::sin(a).mul(&TrigPoly::cos(b)),
                None,
            );
        }
    }
    for a in -n..=n {
        for b in -n..=n {
            let gram = TrigPoly::sin(a)
                .mul(&TrigPoly::sin(b))
                .add(&TrigPoly::cos(a).mul(&TrigPoly::cos(b)));
            check(format!("<e{a}|e{b}>"), gram, Some(q(i64::from(a == b))));
        }
    }
    let passed = entries.iter().all(|e| e.eigen_equation && e.boundary)
        && mismatches.is_empty()
        && max_err < 1e-10;
    EigenReport {
        n,
        quadrature_points,
        entries,
        integrals_checked: checked,
        exact_mismatches: mismatches,
        max_quadrature_error: max_err,
        passed,
    }
}
