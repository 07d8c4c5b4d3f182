//! Arithmetic in the truncated polynomial ring `Z[h]/(h^{n+1})` and the
//! obstruction computations built on it: total Chern classes of twisted
//! (co)tangent bundles, the kernel/cokernel Whitney products for pencils,
//! the rank-two cokernel constraint chain, the dimension-five candidate
//! sieve, and the cubic obstruction with its triple enumeration.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{binomial, elementary_symmetric_3};

/// Total Chern class truncated at h^{n+1}: coefficients c_0 ... c_n.
///
/// The truncation order is carried by every value and checked on every
/// binary operation; there is no implicit re-truncation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChernPoly {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl ChernPoly {
    pub fn one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::one();
        ChernPoly { n, coeffs }
    }

    /// Build from low-order coefficients; missing high coefficients are zero.
    pub fn from_ints(n: usize, coeffs: &[i64]) -> Self {
        assert!(coeffs.len() <= n + 1, "too many coefficients for order {n}");
        let mut full = vec![BigInt::zero(); n + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            full[i] = BigInt::from(c);
        }
        ChernPoly { n, coeffs: full }
    }

    pub fn from_bigints(n: usize, coeffs: Vec<BigInt>) -> Self {
        assert!(coeffs.len() <= n + 1, "too many coefficients for order {n}");
        let mut full = coeffs;
        full.resize(n + 1, BigInt::zero());
        ChernPoly { n, coeffs: full }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Product truncated at h^{n+1}.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "truncation order mismatch");
        let mut out = vec![BigInt::zero(); self.n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > self.n {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        ChernPoly {
            n: self.n,
            coeffs: out,
        }
    }

    /// Multiplicative inverse in the truncated ring; requires c_0 = 1.
    pub fn inverse(&self) -> Self {
        assert!(self.coeffs[0].is_one(), "inverse requires c_0 = 1");
        let mut out = vec![BigInt::zero(); self.n + 1];
        out[0] = BigInt::one();
        for k in 1..=self.n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -acc;
        }
        ChernPoly {
            n: self.n,
            coeffs: out,
        }
    }
}

/// `(1 + e*h)^a` truncated at h^{n+1}; `a >= 0`.
pub fn line_power(e: i64, a: i64, n: usize) -> ChernPoly {
    assert!(a >= 0, "line_power: negative exponent {a}");
    let mut coeffs = Vec::with_capacity(n + 1);
    let e = BigInt::from(e);
    let mut epow = BigInt::one();
    for k in 0..=n {
        coeffs.push(binomial(a, k as i64) * &epow);
        epow *= &e;
    }
    ChernPoly::from_bigints(n, coeffs)
}

/// Total Chern class of the twisted tangent bundle T(t) on P^n, from the
/// Euler sequence: `(1 + (t+1)h)^{n+1} * (1 + t*h)^{-1}`.
pub fn twisted_tangent(n: usize, twist: i64) -> ChernPoly {
    assert!(n >= 1);
    line_power(twist + 1, (n + 1) as i64, n).mul(&line_power(twist, 1, n).inverse())
}

/// Total Chern class of the twisted cotangent bundle Omega(t) on P^n:
/// `(1 + (t-1)h)^{n+1} * (1 + t*h)^{-1}`.
pub fn twisted_cotangent(n: usize, twist: i64) -> ChernPoly {
    assert!(n >= 1);
    line_power(twist - 1, (n + 1) as i64, n).mul(&line_power(twist, 1, n).inverse())
}

/// Whitney product for the kernel of a constant-rank pencil of a matrices:
/// `C(F) = C(E) * (1-h)^a`, where E is the cokernel bundle.
pub fn kernel_chern(c_e: &ChernPoly, a: i64) -> ChernPoly {
    c_e.mul(&line_power(-1, a, c_e.order()))
}

/// Solutions (t1, t2) of the rank-two cokernel constraints on P^n: every
/// coefficient of h^3 ... h^n of `(1 + t1*h + t2*h^2)(1-h)^a` must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rank2Solutions {
    /// No integer pair satisfies the constraints.
    Empty,
    /// Finitely many solutions (always the case for n >= 4).
    Points(Vec<(BigInt, BigInt)>),
    /// On P^3 only the h^3 coefficient constrains the pair, leaving t1 free
    /// in the listed parity classes with t2 = (a-1)(3*t1 - a + 2)/6.
    OneParameter { t1_parities: Vec<u8> },
}

impl Serialize for Rank2Solutions {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        match self {
            Rank2Solutions::Empty => {
                let mut st = serializer.serialize_struct("Rank2Solutions", 1)?;
                st.serialize_field("kind", "empty")?;
                st.end()
            }
            Rank2Solutions::Points(points) => {
                let mut st = serializer.serialize_struct("Rank2Solutions", 2)?;
                st.serialize_field("kind", "points")?;
                let as_strings: Vec<[String; 2]> = points
                    .iter()
                    .map(|(t1, t2)| [t1.to_string(), t2.to_string()])
                    .collect();
                st.serialize_field("points", &as_strings)?;
                st.end()
            }
            Rank2Solutions::OneParameter { t1_parities } => {
                let mut st = serializer.serialize_struct("Rank2Solutions", 2)?;
                st.serialize_field("kind", "one-parameter")?;
                st.serialize_field("t1_parities", t1_parities)?;
                st.end()
            }
        }
    }
}

fn bigint_as_string<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Solve the constraint chain coefficient by coefficient: h^3 determines t2
/// as a rational function of t1 (integrality filter), h^4 pins t1 to
/// (a-2)/2, and the h^5 coefficient is unsatisfiable, so the set is empty
/// whenever n >= 5.
pub fn rank2_cokernel_constraints(a: i64, n: usize) -> Rank2Solutions {
    assert!(a >= 3 && n >= 3);
    let coeff = |t1: &BigInt, t2: &BigInt, m: i64| -> BigInt {
        // h^m coefficient of (1 + t1 h + t2 h^2)(1-h)^a
        let sign = |k: i64| if k % 2 == 0 { 1 } else { -1 };
        binomial(a, m) * sign(m)
            + t1 * binomial(a, m - 1) * sign(m - 1)
            + t2 * binomial(a, m - 2) * sign(m - 2)
    };
    // t2 = (a-1)(3*t1 - a + 2)/6, integral only for t1 in certain parities.
    let t2_of = |t1: &BigInt| -> Option<BigInt> {
        let num = BigInt::from(a - 1) * (BigInt::from(3) * t1 - BigInt::from(a - 2));
        let (q, r) = num_integer::Integer::div_rem(&num, &BigInt::from(6));
        r.is_zero().then_some(q)
    };
    if n == 3 {
        let parities: Vec<u8> = (0u8..2)
            .filter(|&par| t2_of(&BigInt::from(par)).is_some())
            .collect();
        return if parities.is_empty() {
            Rank2Solutions::Empty
        } else {
            Rank2Solutions::OneParameter {
                t1_parities: parities,
            }
        };
    }
    // h^4 forces (a+1)(a - 2 - 2*t1) = 0, so t1 = (a-2)/2; a must be even.
    if a % 2 != 0 {
        return Rank2Solutions::Empty;
    }
    let t1 = BigInt::from((a - 2) / 2);
    let Some(t2) = t2_of(&t1) else {
        return Rank2Solutions::Empty;
    };
    debug_assert!(coeff(&t1, &t2, 3).is_zero() && coeff(&t1, &t2, 4).is_zero());
    for m in 5..=(n as i64) {
        if !coeff(&t1, &t2, m).is_zero() {
            return Rank2Solutions::Empty;
        }
    }
    Rank2Solutions::Points(vec![(t1, t2)])
}

/// Integrality condition for a rank-two bundle on P^4 with c_1 = 0:
/// `c_2 (c_2 + 1) = 0 (mod 12)`.
pub fn schwarzenberger(c2: &BigInt) -> bool {
    (c2 * (c2 + BigInt::one())) % BigInt::from(12) == BigInt::zero()
}

/// The rank-two Chern data forced on P^4 when the cokernel of an
/// (a-2)-rank pencil has rank two, together with the c_1-normalized c_2
/// and its integrality verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Dim5Profile {
    pub a: i64,
    #[serde(serialize_with = "bigint_as_string")]
    pub t1: BigInt,
    #[serde(serialize_with = "bigint_as_string")]
    pub t2: BigInt,
    /// c_2 of the twist E(-t1/2), i.e. t2 - (t1/2)^2.
    #[serde(serialize_with = "bigint_as_string")]
    pub c2_normalized: BigInt,
    pub passes: bool,
}

/// Profile of a candidate `a = 2, 10 (mod 12)`; None outside those classes
/// (for all other a the constraints already have no integer solution).
pub fn dim5_profile(a: i64) -> Option<Dim5Profile> {
    if a < 3 || (a % 12 != 2 && a % 12 != 10) {
        return None;
    }
    let t1 = BigInt::from((a - 2) / 2);
    let t2 = BigInt::from(a - 1) * BigInt::from(a - 2) / BigInt::from(12);
    let half = &t1 / BigInt::from(2);
    debug_assert_eq!(&half * BigInt::from(2), t1, "t1 must be even here");
    let c2 = &t2 - &half * &half;
    let passes = schwarzenberger(&c2);
    Some(Dim5Profile {
        a,
        t1,
        t2,
        c2_normalized: c2,
        passes,
    })
}

/// All a <= max_a for which a five-dimensional space of constant rank a-2
/// is not excluded: a = 2, 10 (mod 12) and the normalized c_2 satisfies the
/// integrality condition. Degenerate a <= 2 are excluded (rank a-2 < 1).
pub fn dim5_candidates(max_a: i64) -> Vec<i64> {
    assert!(max_a >= 3);
    (3..=max_a)
        .filter(|&a| dim5_profile(a).is_some_and(|p| p.passes))
        .collect()
}

/// Parameters of the cubic obstruction: a is the matrix size and (s, d, t)
/// are the elementary symmetric functions of the kernel twist roots
/// (f1, f2, f3).
#[derive(Clone, Debug)]
pub struct PsiParams {
    pub a: i64,
    pub s: BigInt,
    pub d: BigInt,
    pub t: BigInt,
}

impl PsiParams {
    pub fn from_triple(a: i64, f: [i64; 3]) -> Self {
        let (s, d, t) = elementary_symmetric_3(f);
        PsiParams { a, s, d, t }
    }
}

/// The cubic `psi(a) = a^3 - a^2 (4s+6) + a (12d + 12s + 11) - 12d - 8s -
/// 24t - 6`, whose vanishing is necessary for the h^4 coefficient of the
/// cokernel class to be zero when the kernel has rank three.
pub fn psi(p: &PsiParams) -> BigInt {
    let a = BigInt::from(p.a);
    let four_s6 = BigInt::from(4) * &p.s + BigInt::from(6);
    let lin = BigInt::from(12) * &p.d + BigInt::from(12) * &p.s + BigInt::from(11);
    &a * &a * &a - &a * &a * four_s6 + &a * lin
        - BigInt::from(12) * &p.d
        - BigInt::from(8) * &p.s
        - BigInt::from(24) * &p.t
        - BigInt::from(6)
}

/// For fixed a and s the cubic is linear in (d, t): it vanishes iff
/// `d_coeff * d + t_coeff * t = rhs`. The returned condition is divided by
/// the gcd of its coefficients (at a = 9, s = 3 it reads 4d - t = 14).
#[derive(Clone, Debug, Serialize)]
pub struct PsiCondition {
    pub s: i64,
    #[serde(serialize_with = "bigint_as_string")]
    pub d_coeff: BigInt,
    #[serde(serialize_with = "bigint_as_string")]
    pub t_coeff: BigInt,
    #[serde(serialize_with = "bigint_as_string")]
    pub rhs: BigInt,
}

pub fn psi_reduced_condition(a: i64, s: i64) -> PsiCondition {
    let base = psi(&PsiParams {
        a,
        s: BigInt::from(s),
        d: BigInt::zero(),
        t: BigInt::zero(),
    });
    let d_coeff = BigInt::from(12) * BigInt::from(a) - BigInt::from(12);
    let t_coeff = BigInt::from(-24);
    // d_coeff*d + t_coeff*t + base = 0
    let rhs = -base;
    let g = crate::exact::content(&[d_coeff.clone(), t_coeff.clone(), rhs.clone()]);
    if g > BigInt::one() {
        PsiCondition {
            s,
            d_coeff: d_coeff / &g,
            t_coeff: t_coeff / &g,
            rhs: rhs / &g,
        }
    } else {
        PsiCondition {
            s,
            d_coeff,
            t_coeff,
            rhs,
        }
    }
}

/// All non-negative triples f1 <= f2 <= f3 with s_min <= f1+f2+f3 <= s_max
/// whose elementary symmetric functions satisfy psi(a) = 0, in ascending
/// order.
pub fn psi_feasible_triples(a: i64, s_min: u32, s_max: u32) -> Vec<[i64; 3]> {
    let mut found = Vec::new();
    for s in s_min..=s_max {
        let s = s as i64;
        for f1 in 0..=s / 3 {
            for f2 in f1..=(s - f1) / 2 {
                let f3 = s - f1 - f2;
                let params = PsiParams::from_triple(a, [f1, f2, f3]);
                if psi(&params).is_zero() {
                    found.push([f1, f2, f3]);
                }
            }
        }
    }
    found
}

/// Coefficients of h^{n-1} and h^n of `(1+h)(1-h)^a` on P^n. The top
/// coefficient vanishes exactly when a = 2n-1, and the next one down is
/// then still nonzero, which is the kernel obstruction for cotangent-type
/// cokernels.
pub fn omega_kernel_obstruction(n: usize, a: i64) -> (BigInt, BigInt) {
    assert!(n >= 2 && a >= n as i64);
    let c = line_power(1, 1, n).mul(&line_power(-1, a, n));
    (c.coeff(n - 1).clone(), c.coeff(n).clone())
}

/// Render a truncated class as a readable polynomial in h.
pub fn pretty(c: &ChernPoly) -> String {
    let mut parts = Vec::new();
    for (k, v) in c.coeffs().iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mag = v.abs().to_string();
        let term = match k {
            0 => mag,
            1 if mag == "1" => "h".to_string(),
            1 => format!("{mag}h"),
            _ if mag == "1" => format!("h^{k}"),
            _ => format!("{mag}h^{k}"),
        };
        if parts.is_empty() {
            parts.push(if v.is_negative() {
                format!("-{term}")
            } else {
                term
            });
        } else if v.is_negative() {
            parts.push(format!("- {term}"));
        } else {
            parts.push(format!("+ {term}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}
