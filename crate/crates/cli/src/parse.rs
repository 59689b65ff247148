//! Point and number syntax.

use brjuno_core::cf1d::{convergents, non_brjuno_cf};
use brjuno_core::point::GOLDEN;
use brjuno_core::scalar::parse_rational;
use brjuno_core::{Fixture, Number, Point, PointSource, Real, Scalar};
use num_rational::BigRational;
use num_traits::Zero;

use crate::CliError;

/// A parsed `--point`.
pub enum PointArg {
    Exact(Point),
    Fixture(Fixture),
}

impl PointArg {
    pub fn source(&self) -> &dyn PointSource {
        match self {
            PointArg::Exact(p) => p,
            PointArg::Fixture(f) => f,
        }
    }

    pub fn dim(&self) -> usize {
        self.source().dim()
    }

    pub fn exact(&self) -> Option<&Point> {
        match self {
            PointArg::Exact(p) => Some(p),
            PointArg::Fixture(_) => None,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn rational(s: &str) -> Result<BigRational, CliError> {
    let t = s.trim().trim_start_matches('+');
    parse_rational(t).map_or_else(|| usage(format!("cannot parse number '{s}'")), Ok)
}

/// A complex coordinate: `a`, `bi`, `a+bi`, `a-bi`, with rational or decimal parts.
pub fn parse_complex(s: &str) -> Result<Scalar, CliError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return usage("empty coordinate");
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Scalar::real(Real::Exact(rational(&s)?)));
    };
    let split = body.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re.is_empty() { BigRational::zero() } else { rational(re)? };
    let im = match im {
        "" | "+" => BigRational::from_integer(1.into()),
        "-" => BigRational::from_integer((-1).into()),
        x => rational(x)?,
    };
    Ok(Scalar::exact(re, im))
}

/// `P_N/Q_N` of the non-Brjuno expansion while it is held exactly.
fn non_brjuno_truncation(depth: usize) -> Result<Number, CliError> {
    if depth == 0 {
        return usage("nonbrjuno depth must be at least 1");
    }
    let cf = non_brjuno_cf(depth).map_err(CliError::Core)?;
    match convergents(&cf) {
        Ok(c) if c.len() == depth => {
            let (p, q) = c[depth - 1].clone();
            Ok(Number::Rational(BigRational::new(p, q)))
        }
        // beyond the exact levels the truncation agrees with the limit to far
        // more bits than any enclosure can carry
        _ => Ok(Number::NonBrjuno),
    }
}

/// A named real number or a real rational.
pub fn parse_number(s: &str) -> Result<Number, CliError> {
    let t = s.trim();
    match t {
        "golden" => Ok(GOLDEN),
        "pi-3" => Ok(Number::PiMinus3),
        "liouville-classical" => Ok(Number::Liouville),
        "nonbrjuno" => Ok(Number::NonBrjuno),
        _ => {
            if let Some(d) = t.strip_prefix("nonbrjuno:depth=") {
                let depth: usize = d.parse().map_err(|_| CliError::Usage(format!("bad depth in '{t}'")))?;
                return non_brjuno_truncation(depth);
            }
            Ok(Number::Rational(rational(t)?))
        }
    }
}

/// Depth requested by a `nonbrjuno:depth=N` token.
pub fn fixture_depth(s: &str) -> Option<usize> {
    s.trim().strip_prefix("nonbrjuno:depth=").and_then(|d| d.parse().ok())
}

fn is_named(t: &str) -> bool {
    let t = t.trim();
    matches!(t, "golden" | "golden-rotation" | "pi-3" | "liouville-classical" | "nonbrjuno") || t.starts_with("nonbrjuno:")
}

pub fn parse_point(s: &str, dim: Option<usize>) -> Result<PointArg, CliError> {
    let mut tokens: Vec<&str> = s.split(',').map(str::trim).collect();
    if tokens.iter().any(|t| t.is_empty()) {
        return usage(format!("empty coordinate in '{s}'"));
    }
    if let Some(n) = dim {
        if n == 0 || n > brjuno_core::lattice::MAX_DIM {
            return usage(format!("--dim must be in 1..={}", brjuno_core::lattice::MAX_DIM));
        }
        if tokens.len() == 1 {
            tokens = vec![tokens[0]; n];
        } else if tokens.len() != n {
            return usage(format!("--dim {n} but the point has {} coordinates", tokens.len()));
        }
    }
    if tokens.len() > brjuno_core::lattice::MAX_DIM {
        return usage(format!("at most {} coordinates", brjuno_core::lattice::MAX_DIM));
    }
    let rotation = tokens.iter().filter(|t| **t == "golden-rotation").count();
    if rotation > 0 {
        if rotation != tokens.len() {
            return usage("golden-rotation cannot be mixed with other coordinates");
        }
        return Ok(PointArg::Fixture(Fixture::golden_rotation(tokens.len())));
    }
    if tokens.iter().any(|t| is_named(t)) {
        let coords = tokens.iter().map(|t| parse_number(t)).collect::<Result<Vec<_>, _>>()?;
        return Ok(PointArg::Fixture(Fixture::new(s.trim(), coords, false)));
    }
    let coords = tokens.iter().map(|t| parse_complex(t)).collect::<Result<Vec<_>, _>>()?;
    Ok(PointArg::Exact(Point::new(coords)))
}

/// An exact point (no fixtures).
pub fn parse_exact_point(s: &str) -> Result<Point, CliError> {
    match parse_point(s, None)? {
        PointArg::Exact(p) => Ok(p),
        PointArg::Fixture(_) => usage(format!("'{s}' must have exact rational coordinates")),
    }
}

pub fn parse_index(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad index entry '{t}'"))))
        .collect()
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad number '{t}'"))))
        .collect()
}
