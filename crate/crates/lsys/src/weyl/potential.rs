use crate::error::{Error, Result};

/// Shape of the potential q(x) in -y'' + q(x) y = z y.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialForm {
    /// q(x) = (nu^2 - 1/4) / x^2.
    Bessel { nu: f64 },
    /// Piecewise-linear through the samples, constant past the last one.
    Tabulated { xs: Vec<f64>, qs: Vec<f64> },
}

/// A real potential on [left, infinity).
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    form: PotentialForm,
    left: f64,
}

impl Potential {
    pub fn bessel(nu: f64, left: f64) -> Result<Self> {
        if !(nu.is_finite() && nu >= 0.5) {
            return Err(Error::InvalidPotential(format!("Bessel order must be >= 1/2, got {nu}")));
        }
        if !(left.is_finite() && left > 0.0) {
            return Err(Error::InvalidPotential(format!(
                "Bessel potential needs a positive left endpoint, got {left}"
            )));
        }
        Ok(Self { form: PotentialForm::Bessel { nu }, left })
    }

    /// Builds a tabulated potential; the first sample fixes the left endpoint.
    pub fn tabulated(samples: &[(f64, f64)]) -> Result<Self> {
        let Some(&(left, _)) = samples.first() else {
            return Err(Error::InvalidPotential("empty table".into()));
        };
        if let Some((x, q)) = samples.iter().find(|(x, q)| !x.is_finite() || !q.is_finite()) {
            return Err(Error::InvalidPotential(format!("non-finite sample ({x}, {q})")));
        }
        if let Some(w) = samples.windows(2).find(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidPotential(format!(
                "grid must be strictly increasing: {} then {}",
                w[0].0, w[1].0
            )));
        }
        let (xs, qs) = samples.iter().copied().unzip();
        Ok(Self { form: PotentialForm::Tabulated { xs, qs }, left })
    }

    /// Parses the "x q(x)" table format: one pair per line, `#` starts a comment.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut samples = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::InvalidPotential(format!("line {}: cannot parse {s:?}: {e}", lineno + 1)))
            };
            match fields.as_slice() {
                [x, q] => samples.push((parse(x)?, parse(q)?)),
                _ => {
                    return Err(Error::InvalidPotential(format!(
                        "line {}: expected two columns \"x q(x)\", got {:?}",
                        lineno + 1,
                        line
                    )))
                }
            }
        }
        Self::tabulated(&samples)
    }

    pub fn form(&self) -> &PotentialForm {
        &self.form
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.form {
            PotentialForm::Bessel { nu } => (nu * nu - 0.25) / (x * x),
            PotentialForm::Tabulated { xs, qs } => {
                let idx = xs.partition_point(|&s| s <= x);
                if idx == 0 {
                    qs[0]
                } else if idx == xs.len() {
                    qs[xs.len() - 1]
                } else {
                    let (x0, x1) = (xs[idx - 1], xs[idx]);
                    let t = (x - x0) / (x1 - x0);
                    qs[idx - 1] + t * (qs[idx] - qs[idx - 1])
                }
            }
        }
    }
}
