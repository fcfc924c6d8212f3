//! The rank-one abelian group L(p) generated by x_1..x_t with p_i x_i = c.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Rational;

/// Weights p_1..p_t, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSequence(Vec<i64>);

impl WeightSequence {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights(format!(
                "need at least two weights, got {}",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w < 2) {
            return Err(Error::InvalidWeights(format!("weight {w} is below 2")));
        }
        Ok(Self(weights))
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    /// Number of arms t.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, arm: usize) -> i64 {
        self.0[arm - 1]
    }

    pub fn zero(&self) -> LElement {
        LElement {
            c: 0,
            coeffs: vec![0; self.len()],
            weights: self.clone(),
        }
    }

    /// The canonical element c.
    pub fn canonical(&self) -> LElement {
        LElement {
            c: 1,
            ..self.zero()
        }
    }

    /// The generator x_i (1-based arm index).
    pub fn generator(&self, arm: usize) -> LElement {
        let mut raw = vec![0; self.len()];
        raw[arm - 1] = 1;
        normal_form(0, &raw, self).expect("length matches")
    }

    /// ω = (t-2)c - Σ x_i.
    pub fn dualizing_element(&self) -> LElement {
        let t = self.len() as i64;
        normal_form(t - 2, &vec![-1; self.len()], self).expect("length matches")
    }

    /// χ = (2 - t) + Σ 1/p_i.
    pub fn euler_characteristic(&self) -> Rational {
        let t = self.len() as i64;
        self.0
            .iter()
            .fold(Rational::from_integer((2 - t).into()), |acc, &p| {
                acc + Rational::new(1.into(), p.into())
            })
    }

    pub fn is_wild(&self) -> bool {
        self.euler_characteristic() < Rational::from_integer(0.into())
    }
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for WeightSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("invalid weight `{w}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }
}

/// An element a·c + Σ a_i x_i of L(p), always stored with 0 <= a_i < p_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LElement {
    c: i64,
    coeffs: Vec<i64>,
    weights: WeightSequence,
}

/// Reduces a·c + Σ raw_i x_i to normal form.
pub fn normal_form(a: i64, raw: &[i64], weights: &WeightSequence) -> Result<LElement> {
    if raw.len() != weights.len() {
        return Err(Error::LengthMismatch {
            expected: weights.len(),
            got: raw.len(),
        });
    }
    let mut c = a;
    let coeffs = raw
        .iter()
        .zip(weights.weights())
        .map(|(&r, &p)| {
            c += r.div_euclid(p);
            r.rem_euclid(p)
        })
        .collect();
    Ok(LElement {
        c,
        coeffs,
        weights: weights.clone(),
    })
}

impl LElement {
    /// Coefficient of c in normal form.
    pub fn c_coeff(&self) -> i64 {
        self.c
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    pub fn add(&self, other: &LElement) -> Result<LElement> {
        if self.weights != other.weights {
            return Err(Error::WeightMismatch);
        }
        let raw: Vec<i64> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        normal_form(self.c + other.c, &raw, &self.weights)
    }

    pub fn neg(&self) -> LElement {
        let raw: Vec<i64> = self.coeffs.iter().map(|a| -a).collect();
        normal_form(-self.c, &raw, &self.weights).expect("same length")
    }

    pub fn sub(&self, other: &LElement) -> Result<LElement> {
        self.add(&other.neg())
    }

    /// n·self for any integer n.
    pub fn scale(&self, n: i64) -> LElement {
        let raw: Vec<i64> = self.coeffs.iter().map(|a| a * n).collect();
        normal_form(self.c * n, &raw, &self.weights).expect("same length")
    }

    /// The order on L(p): e >= 0 iff the normal-form c-coefficient is >= 0.
    pub fn is_nonnegative(&self) -> bool {
        self.c >= 0
    }

    /// Determinant shifted n times by the dualizing element: d + n·ω.
    pub fn tau_det(&self, n: i64) -> LElement {
        assert!(n >= 0, "tau_det expects n >= 0");
        self.add(&self.weights.dualizing_element().scale(n))
            .expect("same weights")
    }

    /// `"a;a_1,...,a_t"`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|a| a.to_string()).collect();
        format!("{};{}", self.c, parts.join(","))
    }

    /// Parses `"a;a_1,...,a_t"`, normalizing the coefficients.
    pub fn parse(text: &str, weights: &WeightSequence) -> Result<LElement> {
        let (a, rest) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing `;` in `{text}`")))?;
        let a = a
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("invalid c-coefficient `{a}`")))?;
        let raw = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("invalid coefficient `{x}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        normal_form(a, &raw, weights)
    }
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Closed-form shift bound N = max_j ⌊(1 - a_j)(t - 2)⌋ + 1 over the
/// c-coefficients a_j of the given determinants.
///
/// This bound ignores the carries produced when the x_i-coefficients of
/// -(n-1)ω wrap past p_i, so for weighted types it can be too small; see
/// [`sufficient_translation_bound`] for a bound that is always valid.
pub fn translation_bound(dets: &[LElement], weights: &WeightSequence) -> Result<i64> {
    if dets.is_empty() {
        return Err(Error::Invalid(
            "translation bound of an empty family".into(),
        ));
    }
    let t = weights.len() as i64;
    let mut best = i64::MIN;
    for d in dets {
        if d.weights() != weights {
            return Err(Error::WeightMismatch);
        }
        // (1 - a)(t - 2) is an integer, so the floor is the identity here.
        let value = (1 - d.c_coeff()) * (t - 2) + 1;
        best = best.max(value);
    }
    Ok(best)
}

/// True iff c + ω - det(τⁿ L) is not >= 0, i.e. the shifted line bundle has
/// no extensions from the top projective.
pub fn shifted_is_negative(det: &LElement, n: i64) -> bool {
    let w = det.weights();
    let lhs = w
        .canonical()
        .add(&w.dualizing_element())
        .and_then(|e| e.sub(&det.tau_det(n)))
        .expect("same weights");
    !lhs.is_nonnegative()
}

/// Smallest N such that `shifted_is_negative(det, n)` holds for every
/// n > N and every det of the family. `None` unless the weights are wild,
/// where no finite bound exists.
///
/// Writing m = n - 1, the c-coefficient of c + ω - τⁿdet is
/// 1 - a - m(t - 2) + Σ ⌊(m - b_i)/p_i⌋ <= 1 - a + mχ, with χ < 0 in the
/// wild case, so every m > (1 - a)/|χ| works; the exact threshold is found
/// by scanning below that point.
pub fn sufficient_translation_bound(
    dets: &[LElement],
    weights: &WeightSequence,
) -> Result<Option<i64>> {
    if dets.is_empty() {
        return Err(Error::Invalid(
            "translation bound of an empty family".into(),
        ));
    }
    if !weights.is_wild() {
        return Ok(None);
    }
    let chi = -weights.euler_characteristic();
    let mut best = 0i64;
    for d in dets {
        if d.weights() != weights {
            return Err(Error::WeightMismatch);
        }
        let slack = Rational::from_integer((1 - d.c_coeff()).max(0).into()) / chi.clone();
        let m_max = slack.ceil().to_integer();
        let m_max: i64 =
            i64::try_from(m_max).map_err(|_| Error::Invalid("bound overflow".into()))?;
        let n_max = m_max + 2;
        let mut last_fail = 0i64;
        for n in 1..=n_max {
            if !shifted_is_negative(d, n) {
                last_fail = n;
            }
        }
        best = best.max(last_fail);
    }
    Ok(Some(best))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[i64]) -> WeightSequence {
        WeightSequence::new(p.to_vec()).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let p = w(&[2, 3, 7]);
        assert_eq!(normal_form(0, &[0, 0, 0], &p).unwrap().to_text(), "0;0,0,0");
        assert_eq!(normal_form(0, &[2, 0, 0], &p).unwrap().to_text(), "1;0,0,0");
        assert_eq!(
            normal_form(1, &[-1, -1, -1], &p).unwrap().to_text(),
            "-2;1,2,6"
        );
        assert!(matches!(
            normal_form(0, &[1, 2], &p),
            Err(Error::LengthMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn add_examples() {
        let p = w(&[2, 3, 7]);
        let e = normal_form(3, &[1, 2, 5], &p).unwrap();
        assert_eq!(p.zero().add(&e).unwrap(), e);
        let x1 = p.generator(1);
        assert_eq!(x1.add(&x1).unwrap().to_text(), "1;0,0,0");
        let a = LElement::parse("-2;1,2,6", &p).unwrap();
        let b = LElement::parse("1;1,1,1", &p).unwrap();
        assert_eq!(a.add(&b).unwrap().to_text(), "2;0,0,0");
        let sum_x = LElement::parse("0;1,1,1", &p).unwrap();
        assert_eq!(a.add(&sum_x).unwrap(), p.canonical());
        let q = w(&[2, 3, 5]);
        assert_eq!(a.add(&q.zero()), Err(Error::WeightMismatch));
    }

    #[test]
    fn order_examples() {
        let p = w(&[2, 3, 7]);
        assert!(p.zero().is_nonnegative());
        assert!(p.canonical().is_nonnegative());
        assert!(!p.dualizing_element().is_nonnegative());
    }

    #[test]
    fn dualizing_examples() {
        assert_eq!(w(&[2, 3, 7]).dualizing_element().to_text(), "-2;1,2,6");
        assert_eq!(w(&[2, 3]).dualizing_element().to_text(), "-2;1,2");
        assert_eq!(w(&[2, 2, 2, 2]).dualizing_element().to_text(), "-2;1,1,1,1");
    }

    #[test]
    fn euler_characteristic_examples() {
        use num_traits::Zero;
        assert_eq!(
            w(&[2, 3, 7]).euler_characteristic(),
            Rational::new((-1).into(), 42.into())
        );
        assert!(w(&[2, 2, 2, 2]).euler_characteristic().is_zero());
        assert_eq!(
            w(&[2, 3, 5]).euler_characteristic(),
            Rational::new(1.into(), 30.into())
        );
        assert!(w(&[2, 3, 7]).is_wild());
        assert!(!w(&[3, 3, 3]).is_wild());
        assert!(!w(&[2, 3, 5]).is_wild());
    }

    #[test]
    fn tau_det_examples() {
        let p = w(&[2, 3, 7]);
        let d = LElement::parse("1;1,0,3", &p).unwrap();
        assert_eq!(d.tau_det(0), d);
        assert_eq!(p.zero().tau_det(1).to_text(), "-2;1,2,6");
        assert_eq!(d.tau_det(2).tau_det(3), d.tau_det(5));
    }

    #[test]
    fn closed_form_bound_values() {
        let p = w(&[2, 3, 7]);
        assert_eq!(translation_bound(&[p.zero()], &p).unwrap(), 2);
        let d = LElement::parse("-1;0,0,0", &p).unwrap();
        assert_eq!(translation_bound(std::slice::from_ref(&d), &p).unwrap(), 3);
        assert_eq!(translation_bound(&[p.zero(), d], &p).unwrap(), 3);
        assert!(translation_bound(&[], &p).is_err());
    }

    // The closed-form bound is not sufficient once carries occur:
    // c + ω - 3ω = c - 2ω = 2x_2 + 2x_3 >= 0 over (2,3,7).
    #[test]
    fn closed_form_bound_counterexample() {
        let p = w(&[2, 3, 7]);
        let n = translation_bound(&[p.zero()], &p).unwrap();
        assert_eq!(n, 2);
        assert!(!shifted_is_negative(&p.zero(), 3));
    }

    #[test]
    fn sufficient_bound_is_tight() {
        let p = w(&[2, 3, 7]);
        for a in -2..=1 {
            let d = normal_form(a, &[1, 2, 3], &p).unwrap();
            let n = sufficient_translation_bound(std::slice::from_ref(&d), &p)
                .unwrap()
                .unwrap();
            for k in n + 1..=n + 60 {
                assert!(shifted_is_negative(&d, k), "a={a} n={k}");
            }
            if n > 0 {
                assert!(!shifted_is_negative(&d, n));
            }
        }
        assert_eq!(
            sufficient_translation_bound(&[p.zero()], &w(&[2, 3, 5])).unwrap(),
            None
        );
    }

    #[test]
    fn weights_validation() {
        assert!(WeightSequence::new(vec![2]).is_err());
        assert!(WeightSequence::new(vec![2, 1, 3]).is_err());
        assert_eq!(
            "2, 3,7".parse::<WeightSequence>().unwrap().weights(),
            &[2, 3, 7]
        );
    }
}
