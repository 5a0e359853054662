use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{CoxError, Result};

/// Points `p_i = (t_i : 0 : 1)` on the line `Y = {y = 0}` and an auxiliary point
/// `q` off `Y`. The sections `s_i` are the lines through `q` and `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    t: Vec<BigRational>,
    q: [BigRational; 3],
    /// Affine `(x, y)` of each point in the chart `z = 1`. Equal to `(t_i, 0)`
    /// unless built by [`PointConfig::from_points_unchecked`].
    points: Vec<(BigRational, BigRational)>,
}

impl PointConfig {
    pub fn new(t: Vec<BigRational>, q: [BigRational; 3]) -> Result<Self> {
        if t.len() < 2 {
            return Err(CoxError::UnsupportedPointCount(t.len()));
        }
        for i in 0..t.len() {
            for j in 0..i {
                if t[i] == t[j] {
                    return Err(CoxError::InvalidConfig(format!(
                        "points {} and {} coincide (t = {})",
                        j + 1,
                        i + 1,
                        t[i]
                    )));
                }
            }
        }
        if q[1].is_zero() {
            return Err(CoxError::InvalidConfig(format!(
                "q = ({} : {} : {}) lies on the line y = 0",
                q[0], q[1], q[2]
            )));
        }
        let points = t.iter().map(|ti| (ti.clone(), BigRational::zero())).collect();
        Ok(Self { t, q, points })
    }

    /// `t_i = i - 1`, `q = (0 : 1 : 0)`.
    pub fn default_for(n: usize) -> Result<Self> {
        let t = (0..n).map(|i| BigRational::from_integer(i.into())).collect();
        Self::new(t, [BigRational::zero(), BigRational::one(), BigRational::zero()])
    }

    /// Builds a configuration from arbitrary affine points `(x_i, y_i)` (chart
    /// `z = 1`), skipping the collinearity requirement. Only meant for negative
    /// controls: the theory does not apply to such configurations.
    pub fn from_points_unchecked(points: Vec<(BigRational, BigRational)>, q: [BigRational; 3]) -> Result<Self> {
        if points.len() < 2 {
            return Err(CoxError::UnsupportedPointCount(points.len()));
        }
        let t = points.iter().map(|(x, _)| x.clone()).collect();
        Ok(Self { t, q, points })
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn t(&self) -> &[BigRational] {
        &self.t
    }

    pub fn q(&self) -> &[BigRational; 3] {
        &self.q
    }

    pub fn is_collinear(&self) -> bool {
        self.points.iter().all(|(_, y)| y.is_zero())
    }

    /// Affine coordinates of `p_i` (0-based) in the chart `z = 1`.
    pub fn affine_point(&self, i: usize) -> &(BigRational, BigRational) {
        &self.points[i]
    }

    /// Projective coordinates `(x : y : 1)` of `p_i` (0-based).
    pub fn point(&self, i: usize) -> [BigRational; 3] {
        let (x, y) = &self.points[i];
        [x.clone(), y.clone(), BigRational::one()]
    }

    /// Parses the key-value configuration file format:
    ///
    /// ```text
    /// n = 3
    /// t = ["0", "1", "2"]
    /// q = ["0", "1", "0"]
    /// ```
    ///
    /// Rationals are `"p/q"` strings (plain integers are accepted too). Missing
    /// `t` or `q` fall back to the defaults of [`PointConfig::default_for`].
    pub fn parse(text: &str) -> Result<Self> {
        let table: toml::Table = text.parse().map_err(|e| CoxError::Parse(format!("config: {e}")))?;
        for key in table.keys() {
            if !matches!(key.as_str(), "n" | "t" | "q") {
                return Err(CoxError::Parse(format!("config: unknown key {key:?}")));
            }
        }
        let t = table.get("t").map(|v| rational_list(v, "t")).transpose()?;
        let n = match table.get("n") {
            Some(v) => {
                let n = v
                    .as_integer()
                    .filter(|&n| n >= 0)
                    .ok_or_else(|| CoxError::Parse("config: n must be a non-negative integer".into()))?;
                usize::try_from(n).map_err(|_| CoxError::Parse("config: n too large".into()))?
            }
            None => t.as_ref().map(Vec::len).ok_or_else(|| CoxError::Parse("config: need n or t".into()))?,
        };
        let defaults = Self::default_for(n)?;
        let t = t.unwrap_or_else(|| defaults.t.clone());
        if t.len() != n {
            return Err(CoxError::InvalidConfig(format!("n = {n} but t lists {} values", t.len())));
        }
        let q = match table.get("q") {
            Some(v) => {
                let q = rational_list(v, "q")?;
                let q: [BigRational; 3] =
                    q.try_into().map_err(|_| CoxError::Parse("config: q needs exactly three coordinates".into()))?;
                q
            }
            None => defaults.q.clone(),
        };
        Self::new(t, q)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CoxError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let v = BigRational::from_str(s).map_err(|_| CoxError::Parse(format!("not a rational \"p/q\": {s:?}")))?;
    Ok(v)
}

fn rational_list(v: &toml::Value, key: &str) -> Result<Vec<BigRational>> {
    let arr = v.as_array().ok_or_else(|| CoxError::Parse(format!("config: {key} must be a list")))?;
    arr.iter()
        .map(|item| match item {
            toml::Value::String(s) => parse_rational(s),
            toml::Value::Integer(i) => Ok(BigRational::from_integer((*i).into())),
            other => Err(CoxError::Parse(format!("config: {key} entry {other} is not a rational"))),
        })
        .collect()
}

impl Serialize for PointConfig {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PointConfig", 3)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("t", &self.t.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        st.serialize_field("q", &self.q.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        st.end()
    }
}
