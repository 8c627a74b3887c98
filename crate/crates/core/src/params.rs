//! Parameter coordinates `h`, `θ` and `(m, r)`, GIT walls, alcoves and the
//! ℓ = 2 alcove classifier.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Permutation;
use crate::rational::{format_list, parse_list, Rational};
use crate::tau::{act_charge, Charge};

/// `h = (h, H_1, …, H_{ℓ−1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParamH {
    pub h: Rational,
    #[serde(rename = "H")]
    pub big_h: Vec<Rational>,
}

impl ParamH {
    pub fn new(h: Rational, big_h: Vec<Rational>) -> Self {
        ParamH { h, big_h }
    }

    /// Parses `h,H_1,…,H_{ℓ−1}`.
    pub fn parse(s: &str) -> Result<Self> {
        let v = parse_list(s)?;
        let (h, rest) = v.split_first().ok_or_else(|| Error::Parse("empty parameter".into()))?;
        Ok(ParamH { h: *h, big_h: rest.to_vec() })
    }

    pub fn level(&self) -> usize {
        self.big_h.len() + 1
    }

    /// `H_0 = −(H_1 + ⋯ + H_{ℓ−1})`.
    pub fn h0(&self) -> Rational {
        -self.big_h.iter().sum::<Rational>()
    }
}

impl fmt::Display for ParamH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut all = vec![self.h];
        all.extend_from_slice(&self.big_h);
        f.write_str(&format_list(&all))
    }
}

/// `θ = (θ_0, …, θ_{ℓ−1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ParamTheta(pub Vec<Rational>);

impl ParamTheta {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(ParamTheta(parse_list(s)?))
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `θ̄ = (−θ_0, −θ_{ℓ−1}, …, −θ_1)`.
    pub fn bar(&self) -> ParamTheta {
        let mut v = vec![-self.0[0]];
        v.extend(self.0[1..].iter().rev().map(|&t| -t));
        ParamTheta(v)
    }
}

impl fmt::Display for ParamTheta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_list(&self.0))
    }
}

/// `(m, r)` with `r ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParamMR {
    pub m: Vec<Rational>,
    pub r: Rational,
}

impl ParamMR {
    pub fn new(m: Vec<Rational>, r: Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroR);
        }
        Ok(ParamMR { m, r })
    }
}

/// `θ = (−h + H_0, H_1, …, H_{ℓ−1})`.
pub fn h_to_theta(p: &ParamH) -> ParamTheta {
    let mut v = vec![-p.h + p.h0()];
    v.extend_from_slice(&p.big_h);
    ParamTheta(v)
}

pub fn theta_to_h(t: &ParamTheta) -> ParamH {
    ParamH { h: -t.sum(), big_h: t.0[1..].to_vec() }
}

/// `h = r`, `H_i = r(m^i − m^{i−1})`.
pub fn mr_to_h(p: &ParamMR) -> ParamH {
    let big_h = p.m.windows(2).map(|w| p.r * (w[1] - w[0])).collect();
    ParamH { h: p.r, big_h }
}

/// `r = h`, `m^i = (H_1 + ⋯ + H_i)/r + normalization`.
pub fn h_to_mr(p: &ParamH, normalization: Rational) -> Result<ParamMR> {
    if p.h.is_zero() {
        return Err(Error::ZeroR);
    }
    let mut m = vec![normalization];
    let mut acc = Rational::ZERO;
    for &big in &p.big_h {
        acc += big;
        m.push(acc / p.h + normalization);
    }
    Ok(ParamMR { m, r: p.h })
}

/// A GIT wall containing a parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Wall {
    /// `h = 0`.
    HZero,
    /// `(H_i + ⋯ + H_j) + m h = 0`.
    Hyperplane { i: usize, j: usize, m: i64 },
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wall::HZero => write!(f, "h=0"),
            Wall::Hyperplane { i, j, m } if i == j => write!(f, "H_{i} + ({m})h = 0 (i={i}, j={j}, m={m})"),
            Wall::Hyperplane { i, j, m } => write!(f, "H_{i}+..+H_{j} + ({m})h = 0 (i={i}, j={j}, m={m})"),
        }
    }
}

/// Every wall from the list `h = 0`, `(H_i+⋯+H_j) + m h = 0`
/// (`1 ≤ i ≤ j ≤ ℓ−1`, `1−n ≤ m ≤ n−1`) that contains `p`.
pub fn git_walls(p: &ParamH, n: u32) -> Vec<Wall> {
    let mut out = Vec::new();
    if p.h.is_zero() {
        out.push(Wall::HZero);
    }
    let l = p.level();
    let n = n as i64;
    for i in 1..l {
        let mut partial = Rational::ZERO;
        for j in i..l {
            partial += p.big_h[j - 1];
            for m in (1 - n)..=(n - 1) {
                if (partial + p.h * m).is_zero() {
                    out.push(Wall::Hyperplane { i, j, m });
                }
            }
        }
    }
    out
}

pub fn is_regular(p: &ParamH, n: u32) -> bool {
    git_walls(p, n).is_empty()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("bad sign `{other}`"))),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The alcove `α(s, w, ±)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alcove {
    pub s: Charge,
    pub w: Permutation,
    pub sign: Sign,
}

impl Alcove {
    pub fn new(s: Charge, w: Permutation, sign: Sign) -> Result<Self> {
        if !s.is_integral() {
            return Err(Error::MalformedCharge(format!("alcove charge ({s}) is not integral")));
        }
        if w.degree() != s.level() {
            return Err(Error::LevelMismatch { expected: s.level(), got: w.degree() });
        }
        Ok(Alcove { s, w, sign })
    }

    pub fn level(&self) -> usize {
        self.s.level()
    }

    /// `A_i` at level 2: `α((i/2, −i/2), id, +)` for even `i`, otherwise
    /// `α(((1−i)/2, (i−1)/2), σ, +)`.
    pub fn l2(i: i64) -> Alcove {
        let (s, w) = if i.rem_euclid(2) == 0 {
            ([i / 2, -i / 2], Permutation::identity(2))
        } else {
            ([(1 - i) / 2, (i - 1) / 2], Permutation::transposition(2, 1, 2))
        };
        Alcove { s: Charge::from_ints(&s).expect("sums to zero"), w, sign: Sign::Plus }
    }

    pub fn with_sign(&self, sign: Sign) -> Alcove {
        Alcove { sign, ..self.clone() }
    }
}

impl fmt::Debug for Alcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Alcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α(({}),({}),{})", self.s, self.w, self.sign)
    }
}

impl Serialize for Alcove {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Alcove", 3)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("w", self.w.images())?;
        st.serialize_field("sign", &self.sign)?;
        st.end()
    }
}

/// `1 + (s_0 − s_{ℓ−1}, s_1 − s_0, …, s_{ℓ−1} − s_{ℓ−2})`.
fn theta_plus(s: &[Rational]) -> Vec<Rational> {
    let l = s.len();
    let unit = Rational::new(1, l as i64);
    (0..l).map(|k| unit + s[k] - s[(k + l - 1) % l]).collect()
}

/// A point of the chamber of `α(s, w, ±)`.
///
/// Uses `α(s, w, ±) = α(w⁻¹·s, id, ±)` with the twisted charge action, then
/// the `w = id` representative; `θ_0^−` is the bar of `θ_0^+`.
pub fn alcove_rep(a: &Alcove) -> ParamTheta {
    rep_of(&a.s, &a.w, a.sign)
}

/// Representative for a possibly fractional charge.
fn rep_of(s: &Charge, w: &Permutation, sign: Sign) -> ParamTheta {
    let s = act_charge(&w.inverse(), s);
    let plus = ParamTheta(theta_plus(s.components()));
    match sign {
        Sign::Plus => plus,
        Sign::Minus => plus.bar(),
    }
}

/// Result of locating a level-2 parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `θ` lies in `A_index` (sign `+`) or in its bar image (sign `−`).
    Alcove { index: i64, alcove: Alcove },
    /// `θ` lies on the wall `θ_1 = d` of the normalized slice.
    Wall { d: Rational, sign: Sign },
    /// `Σθ = 0`, the `h = 0` wall.
    Degenerate,
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        match self {
            Classification::Alcove { index, alcove } => {
                map.serialize_entry("kind", "alcove")?;
                map.serialize_entry("index", index)?;
                map.serialize_entry("alcove", alcove)?;
            }
            Classification::Wall { d, sign } => {
                map.serialize_entry("kind", "wall")?;
                map.serialize_entry("d", d)?;
                map.serialize_entry("sign", sign)?;
            }
            Classification::Degenerate => map.serialize_entry("kind", "degenerate")?,
        }
        map.end()
    }
}

/// Locates `θ` among the level-2 alcoves `A_i = {(d, 1−d) : i < d < i+1}`
/// after scaling to `Σθ = ±1`.
pub fn classify_theta_l2(theta: &ParamTheta) -> Result<Classification> {
    if theta.level() != 2 {
        return Err(Error::WrongLevel(theta.level()));
    }
    let total = theta.sum();
    if total.is_zero() {
        return Ok(Classification::Degenerate);
    }
    let (slice, sign) = if total.is_positive() {
        (theta.clone(), Sign::Plus)
    } else {
        (theta.bar(), Sign::Minus)
    };
    let scale = total.abs();
    let t0 = slice.0[0] / scale;
    let t1 = slice.0[1] / scale;
    if t0.is_integer() {
        return Ok(Classification::Wall { d: t1, sign });
    }
    let index = t0.floor();
    Ok(Classification::Alcove { index, alcove: Alcove::l2(index).with_sign(sign) })
}

/// The two alcoves bordering the level-2 wall `θ_1 = d`, in increasing
/// order of `θ_0`: `(A_{−d}, A_{1−d})`.
pub fn wall_adjacent_alcoves_l2(d: Rational) -> Result<(Alcove, Alcove)> {
    let d = d
        .to_integer()
        .ok_or_else(|| Error::Invalid(format!("{d} is not a level-2 wall index")))?;
    Ok((Alcove::l2(-d), Alcove::l2(1 - d)))
}

/// The `m`-parameter `(d, 0)` attached to the level-2 wall `θ_1 = d`.
pub fn wall_m_l2(d: Rational) -> Vec<Rational> {
    vec![d, Rational::ZERO]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Vec<Rational> {
        parse_list(s).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn theta_dictionary() {
        assert_eq!(h_to_theta(&ParamH::parse("1,0").unwrap()).0, q("-1,0"));
        assert_eq!(h_to_theta(&ParamH::parse("0,0").unwrap()).0, q("0,0"));
        assert_eq!(h_to_theta(&ParamH::parse("-1,1").unwrap()).0, q("0,1"));
        for s in ["1,0", "-1,1", "2/3,1/2,-5", "7"] {
            let p = ParamH::parse(s).unwrap();
            let t = h_to_theta(&p);
            assert_eq!(t.sum(), -p.h);
            assert_eq!(theta_to_h(&t), p);
        }
    }

    #[test]
    fn mr_dictionary() {
        let h = mr_to_h(&ParamMR::new(q("1/2,0"), Rational::ONE).unwrap());
        assert_eq!(h, ParamH::new(Rational::ONE, q("-1/2")));
        let h = mr_to_h(&ParamMR::new(q("3,3,3"), r(-2, 3)).unwrap());
        assert!(h.big_h.iter().all(Rational::is_zero));
        let mr = h_to_mr(&ParamH::parse("1,0").unwrap(), Rational::ZERO).unwrap();
        assert_eq!(mr, ParamMR { m: q("0,0"), r: Rational::ONE });
        assert_eq!(h_to_mr(&ParamH::parse("0,1").unwrap(), Rational::ZERO), Err(Error::ZeroR));
        for s in ["1,0", "-1,1", "2/3,1/2,-5"] {
            let p = ParamH::parse(s).unwrap();
            for norm in [Rational::ZERO, r(7, 3)] {
                assert_eq!(mr_to_h(&h_to_mr(&p, norm).unwrap()), p);
            }
        }
    }

    #[test]
    fn wall_examples() {
        let walls = git_walls(&ParamH::parse("1,0").unwrap(), 2);
        assert_eq!(walls, vec![Wall::Hyperplane { i: 1, j: 1, m: 0 }]);
        assert!(is_regular(&ParamH::parse("1,1/3").unwrap(), 2));
        assert!(git_walls(&ParamH::parse("0,0").unwrap(), 2).contains(&Wall::HZero));
    }

    #[test]
    fn rep_examples() {
        let a0 = Alcove::l2(0);
        assert_eq!(alcove_rep(&a0).0, q("1/2,1/2"));
        assert_eq!(alcove_rep(&a0.with_sign(Sign::Minus)).0, q("-1/2,-1/2"));
        let a = Alcove::new(Charge::from_ints(&[1, -1]).unwrap(), Permutation::identity(2), Sign::Plus)
            .unwrap();
        assert_eq!(alcove_rep(&a).0, q("5/2,-3/2"));
    }

    #[test]
    fn reps_are_regular() {
        for l in 2..=3 {
            for s in Charge::integral_grid(l, 2) {
                for w in Permutation::all(l) {
                    for sign in [Sign::Plus, Sign::Minus] {
                        let a = Alcove::new(s.clone(), w.clone(), sign).unwrap();
                        let h = theta_to_h(&alcove_rep(&a));
                        assert!(is_regular(&h, 4), "{a} at {}", alcove_rep(&a));
                    }
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify_theta_l2(&ParamTheta(q("1/2,1/2"))).unwrap();
        assert_eq!(c, Classification::Alcove { index: 0, alcove: Alcove::l2(0) });
        let c = classify_theta_l2(&ParamTheta(q("0,1"))).unwrap();
        assert_eq!(c, Classification::Wall { d: Rational::ONE, sign: Sign::Plus });
        assert_eq!(classify_theta_l2(&ParamTheta(q("0,0"))).unwrap(), Classification::Degenerate);
        assert_eq!(classify_theta_l2(&ParamTheta(q("1,2,3"))), Err(Error::WrongLevel(3)));
        // scaling does not matter
        let c = classify_theta_l2(&ParamTheta(q("3/2,3/2"))).unwrap();
        assert!(matches!(c, Classification::Alcove { index: 0, .. }));
    }

    #[test]
    fn classify_inverts_rep() {
        for i in -4..=4 {
            for sign in [Sign::Plus, Sign::Minus] {
                let a = Alcove::l2(i).with_sign(sign);
                let c = classify_theta_l2(&alcove_rep(&a)).unwrap();
                assert_eq!(c, Classification::Alcove { index: i, alcove: a });
            }
        }
    }

    #[test]
    fn alcove_labels_are_equivariant() {
        let sigma = Permutation::transposition(2, 1, 2);
        for s in Charge::integral_grid(2, 3) {
            for w in Permutation::all(2) {
                for sign in [Sign::Plus, Sign::Minus] {
                    let a = Alcove { s: s.clone(), w: w.clone(), sign };
                    let moved = act_charge(&sigma, &s);
                    let rep = rep_of(&moved, &sigma.compose(&w), sign);
                    assert_eq!(
                        classify_theta_l2(&rep).unwrap(),
                        classify_theta_l2(&alcove_rep(&a)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn adjacent_alcoves() {
        let (a, b) = wall_adjacent_alcoves_l2(Rational::ONE).unwrap();
        assert_eq!((a, b), (Alcove::l2(-1), Alcove::l2(0)));
        assert_eq!(
            Alcove::l2(-1),
            Alcove::new(
                Charge::from_ints(&[1, -1]).unwrap(),
                Permutation::transposition(2, 1, 2),
                Sign::Plus
            )
            .unwrap()
        );
        let (a, b) = wall_adjacent_alcoves_l2(Rational::ZERO).unwrap();
        assert_eq!((a, b), (Alcove::l2(0), Alcove::l2(1)));
        // each wall sits between the representatives of its two alcoves
        for d in -3..=3 {
            let (a, b) = wall_adjacent_alcoves_l2(Rational::from(d)).unwrap();
            let (ta, tb) = (alcove_rep(&a).0[0], alcove_rep(&b).0[0]);
            assert!(ta < Rational::from(1 - d) && Rational::from(1 - d) < tb);
        }
        assert!(wall_adjacent_alcoves_l2(r(1, 2)).is_err());
    }
}
