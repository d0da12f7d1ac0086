//! The E7MAT v1 interchange format for generator sets.
//!
//! ```text
//! #E7MAT v1
//! construction=tits rep=56 count=133 dim=56 scalar=exact
//! @ index=1 label=Y1
//! 0 27 0/1,0/1,0/1,0/1;0/1,0/1,0/1,1/6
//! ...
//!
//! @ index=2 label=Y2
//! ...
//! ```
//!
//! Entries are 0-based, in row-major order. Exact scalars use the
//! [`ExactScalar`] text rendering and floats are written as `re,im` with 17
//! significant digits, so a read followed by a write reproduces the file
//! byte for byte. Lines starting with `#` after the metadata line are kept
//! as manifest lines.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::{Construction, FloatMatrix, GeneratorSet};
use crate::scalars::ExactScalar;
use crate::sparse::SparseMatrix;

pub const HEADER: &str = "#E7MAT v1";

/// Entries `(row, col, value)` of one matrix while it is being read.
type Triplets<T> = Vec<(usize, usize, T)>;

/// Scalar mode of a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarMode {
    Exact,
    Float,
}

impl ScalarMode {
    pub fn tag(self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        }
    }
}

impl FromStr for ScalarMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ScalarMode::Exact),
            "float" => Ok(ScalarMode::Float),
            other => Err(Error::InvalidArgument(format!("unknown scalar mode {other:?}"))),
        }
    }
}

/// Matrices of one file.
#[derive(Clone, Debug, PartialEq)]
pub enum Matrices {
    Exact(Vec<SparseMatrix<ExactScalar>>),
    Float(Vec<FloatMatrix>),
}

impl Matrices {
    pub fn len(&self) -> usize {
        match self {
            Matrices::Exact(m) => m.len(),
            Matrices::Float(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            Matrices::Exact(_) => ScalarMode::Exact,
            Matrices::Float(_) => ScalarMode::Float,
        }
    }
}

/// Contents of an E7MAT file.
#[derive(Clone, Debug, PartialEq)]
pub struct E7Mat {
    pub construction: Construction,
    /// Representation dimension (56 or 133).
    pub rep: usize,
    /// Order of each square matrix.
    pub dim: usize,
    pub labels: Vec<String>,
    pub matrices: Matrices,
    /// Extra `#` lines written after the metadata line.
    pub manifest: Vec<String>,
}

/// Renders a float as `re,im` with 17 significant digits.
pub fn format_complex(z: Complex64) -> String {
    format!("{:.16e},{:.16e}", z.re, z.im)
}

pub fn parse_complex(s: &str) -> Result<Complex64> {
    let (re, im) = s.split_once(',').ok_or_else(|| Error::Parse(format!("expected re,im in {s:?}")))?;
    let f = |t: &str| t.parse::<f64>().map_err(|_| Error::Parse(format!("invalid float {t:?}")));
    Ok(Complex64::new(f(re)?, f(im)?))
}

impl E7Mat {
    /// Wraps a generator set; exact mode needs its exact entries.
    pub fn from_set(set: &GeneratorSet, mode: ScalarMode) -> Result<Self> {
        let matrices = match mode {
            ScalarMode::Exact => Matrices::Exact(
                set.exact
                    .clone()
                    .ok_or_else(|| Error::InvalidArgument("generator set has no exact entries".into()))?,
            ),
            ScalarMode::Float => Matrices::Float(set.mats.clone()),
        };
        Ok(Self {
            construction: set.construction,
            rep: set.rep_dim,
            dim: set.rep_dim,
            labels: set.labels.clone(),
            matrices,
            manifest: Vec::new(),
        })
    }

    /// Turns the file back into a generator set.
    pub fn into_set(self) -> GeneratorSet {
        match self.matrices {
            Matrices::Exact(m) => GeneratorSet::from_exact(self.construction, self.labels, m),
            Matrices::Float(m) => GeneratorSet::from_float(self.construction, self.labels, m),
        }
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(
            out,
            "construction={} rep={} count={} dim={} scalar={}",
            self.construction,
            self.rep,
            self.matrices.len(),
            self.dim,
            self.matrices.mode().tag()
        );
        for line in &self.manifest {
            let _ = writeln!(out, "#{line}");
        }
        for k in 0..self.matrices.len() {
            if k > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "@ index={} label={}", k + 1, self.labels[k]);
            match &self.matrices {
                Matrices::Exact(m) => {
                    for (r, c, v) in m[k].iter() {
                        let _ = writeln!(out, "{r} {c} {v}");
                    }
                }
                Matrices::Float(m) => {
                    for (r, c, v) in m[k].iter() {
                        let _ = writeln!(out, "{r} {c} {}", format_complex(*v));
                    }
                }
            }
        }
        out
    }

    pub fn read(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().peekable();
        let err = |n: usize, msg: &str| Error::Parse(format!("line {}: {msg}", n + 1));
        match lines.next() {
            Some((_, HEADER)) => {}
            _ => return Err(Error::Parse(format!("missing header {HEADER:?}"))),
        }
        let (n, meta) = lines.next().ok_or_else(|| Error::Parse("missing metadata line".into()))?;
        let mut fields = std::collections::HashMap::new();
        for item in meta.split(' ') {
            let (k, v) = item.split_once('=').ok_or_else(|| err(n, "malformed metadata"))?;
            fields.insert(k, v);
        }
        let field = |k: &str| fields.get(k).copied().ok_or_else(|| err(n, &format!("missing {k}")));
        let construction: Construction = field("construction")?.parse()?;
        let num = |k: &str| -> Result<usize> { field(k)?.parse().map_err(|_| err(n, &format!("invalid {k}"))) };
        let (rep, count, dim) = (num("rep")?, num("count")?, num("dim")?);
        let mode: ScalarMode = field("scalar")?.parse()?;
        let mut manifest = Vec::new();
        while let Some((_, l)) = lines.peek() {
            match l.strip_prefix('#') {
                Some(rest) => {
                    manifest.push(rest.to_string());
                    lines.next();
                }
                None => break,
            }
        }
        let mut labels = Vec::with_capacity(count);
        let mut exact = Vec::new();
        let mut float = Vec::new();
        let mut current: Option<(Triplets<ExactScalar>, Triplets<Complex64>)> = None;
        let mut flush = |cur: Option<(Triplets<ExactScalar>, Triplets<Complex64>)>| {
            if let Some((e, f)) = cur {
                match mode {
                    ScalarMode::Exact => exact.push(SparseMatrix::from_triplets(dim, dim, e)),
                    ScalarMode::Float => float.push(SparseMatrix::from_triplets(dim, dim, f)),
                }
            }
        };
        for (n, line) in lines {
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("@ ") {
                flush(current.take());
                let (idx, label) = rest.split_once(' ').ok_or_else(|| err(n, "malformed matrix line"))?;
                let idx: usize = idx
                    .strip_prefix("index=")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(n, "malformed index"))?;
                if idx != labels.len() + 1 {
                    return Err(err(n, "matrix indices out of order"));
                }
                labels.push(label.strip_prefix("label=").ok_or_else(|| err(n, "malformed label"))?.to_string());
                current = Some((Vec::new(), Vec::new()));
                continue;
            }
            let cur = current.as_mut().ok_or_else(|| err(n, "entry before the first matrix"))?;
            let mut parts = line.splitn(3, ' ');
            let mut idx = || -> Result<usize> {
                let v: usize =
                    parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| err(n, "malformed entry index"))?;
                if v >= dim {
                    return Err(err(n, "entry index out of range"));
                }
                Ok(v)
            };
            let (r, c) = (idx()?, idx()?);
            let v = parts.next().ok_or_else(|| err(n, "missing scalar"))?;
            match mode {
                ScalarMode::Exact => cur.0.push((r, c, v.parse()?)),
                ScalarMode::Float => cur.1.push((r, c, parse_complex(v)?)),
            }
        }
        flush(current.take());
        let matrices = match mode {
            ScalarMode::Exact => Matrices::Exact(exact),
            ScalarMode::Float => Matrices::Float(float),
        };
        if matrices.len() != count {
            return Err(Error::Parse(format!("expected {count} matrices, found {}", matrices.len())));
        }
        Ok(Self { construction, rep, dim, labels, matrices, manifest })
    }
}
