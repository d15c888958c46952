use std::fmt;

use super::{Arrow, FinCategory, ObjId};
use crate::error::{Error, Result};

/// A chain of composable arrows, listed in the order they are applied.
/// The empty path is the identity at `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    start: ObjId,
    arrows: Vec<Arrow>,
}

impl Path {
    pub fn identity(at: ObjId) -> Self {
        Path {
            start: at,
            arrows: Vec::new(),
        }
    }

    /// A path starting at the domain of the first arrow.
    pub fn new(c: &FinCategory, arrows: Vec<Arrow>) -> Result<Self> {
        let first = arrows
            .first()
            .ok_or_else(|| Error::structural("an empty path needs an explicit start object"))?;
        let path = Path {
            start: c.dom(first),
            arrows,
        };
        path.end(c)?;
        Ok(path)
    }

    pub fn start(&self) -> ObjId {
        self.start
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// The end object, checking composability along the way.
    pub fn end(&self, c: &FinCategory) -> Result<ObjId> {
        let mut at = self.start;
        for a in &self.arrows {
            c.check_arrow(a)?;
            if c.dom(a) != at {
                return Err(Error::structural(format!(
                    "path is not composable at {}: expected an arrow out of {}",
                    c.arrow_name(a),
                    c.object_name(at)
                )));
            }
            at = c.cod(a);
        }
        Ok(at)
    }

    pub fn composite(&self, c: &FinCategory) -> Result<Arrow> {
        self.end(c)?;
        self.arrows
            .iter()
            .try_fold(c.identity(self.start), |acc, a| c.compose(a, &acc))
    }

    pub fn display<'a>(&'a self, c: &'a FinCategory) -> impl fmt::Display + 'a {
        PathDisplay { path: self, cat: c }
    }
}

struct PathDisplay<'a> {
    path: &'a Path,
    cat: &'a FinCategory,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.arrows.is_empty() {
            return write!(f, "id_{}", self.cat.object_name(self.path.start));
        }
        let names: Vec<String> = self.path.arrows.iter().rev().map(|a| self.cat.arrow_name(a)).collect();
        f.write_str(&names.join(" . "))
    }
}

/// True iff the two paths have the same composite.
pub fn check_commutes(c: &FinCategory, p: &Path, q: &Path) -> Result<bool> {
    let (pe, qe) = (p.end(c)?, q.end(c)?);
    if p.start != q.start || pe != qe {
        return Err(Error::structural("paths do not share start and end objects"));
    }
    Ok(p.composite(c)? == q.composite(c)?)
}
