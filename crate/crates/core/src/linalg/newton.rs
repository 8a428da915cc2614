//! Newton polygons of polynomials over `Q_p`.
//!
//! The lower convex hull of the points `(i, v(a_i))` determines the
//! valuations of the roots in an algebraic closure: an edge of slope `s` and
//! horizontal length `ℓ` accounts for `ℓ` roots of valuation `-s`.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{ExtRational, PAdicScalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub slope: ExtRational,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// Hull vertices, strictly increasing in index.
    pub vertices: Vec<(usize, ExtRational)>,
    pub edges: Vec<Edge>,
    /// Multiplicity of the root `0`, i.e. the number of leading exact-zero
    /// coefficients (valuation `+∞`).
    pub zero_roots: usize,
}

impl NewtonPolygon {
    pub fn degree(&self) -> usize {
        self.zero_roots + self.edges.iter().map(|e| e.length).sum::<usize>()
    }

    /// Root valuations with multiplicity, `+∞` for the root `0`, in
    /// increasing order.
    pub fn root_valuations(&self) -> Vec<ExtRational> {
        let mut out = Vec::with_capacity(self.degree());
        for e in self.edges.iter().rev() {
            out.extend(std::iter::repeat_n(-e.slope, e.length));
        }
        out.extend(std::iter::repeat_n(ExtRational::PosInf, self.zero_roots));
        out
    }

    /// Smallest root valuation; `+∞` when every root is zero.
    pub fn min_root_valuation(&self) -> ExtRational {
        self.edges.last().map(|e| -e.slope).unwrap_or(ExtRational::PosInf)
    }

    /// Height of the polygon above `index` (`None` left of the first vertex).
    pub fn height_at(&self, index: usize) -> Option<Ratio<i64>> {
        let pts = &self.vertices;
        let first = pts.first()?;
        if index < first.0 {
            return None;
        }
        for w in pts.windows(2) {
            let ((i0, v0), (i1, v1)) = (&w[0], &w[1]);
            if index <= *i1 {
                let (v0, v1) = (v0.finite()?, v1.finite()?);
                let t = Ratio::new((index - i0) as i64, (i1 - i0) as i64);
                return Some(v0 + (v1 - v0) * t);
            }
        }
        let last = pts.last()?;
        (index == last.0).then(|| last.1.finite()).flatten()
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Newton polygon of `Σ coeffs[i] t^i`. The leading coefficient must be a
/// certified nonzero ball. Zero balls are admitted only where their lower
/// valuation bound lies strictly above the hull of the certified points.
pub fn newton_polygon(coeffs: &[PAdicScalar]) -> Result<NewtonPolygon> {
    let lead = coeffs.last().ok_or_else(|| Error::InvalidProblem("empty polynomial".into()))?;
    if lead.int_valuation().is_none() {
        return Err(Error::InvalidProblem("leading coefficient must be a certified nonzero".into()));
    }
    let mut certified = Vec::new();
    let mut loose = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if let Some(v) = c.int_valuation() {
            certified.push((i as i64, v));
        } else if !c.is_exact_zero() {
            loose.push((i, c.valuation_lower_bound()));
        }
    }

    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &certified {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }

    let vertices: Vec<(usize, ExtRational)> = hull.iter().map(|&(i, v)| (i as usize, ExtRational::int(v))).collect();
    let edges = hull
        .windows(2)
        .map(|w| Edge { slope: ExtRational::new(w[1].1 - w[0].1, w[1].0 - w[0].0), length: (w[1].0 - w[0].0) as usize })
        .collect();
    let polygon = NewtonPolygon { zero_roots: hull[0].0 as usize, vertices, edges };

    for (i, bound) in loose {
        let above = match polygon.height_at(i) {
            Some(h) => bound > ExtRational::Finite(h),
            None => false,
        };
        if !above {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient of t^{i} is O(p^{bound}) and could be a hull vertex"
            )));
        }
    }
    Ok(polygon)
}

/// `max_{i<d} (v_d − v_i)/(d − i)`, the slope of the last hull edge, i.e.
/// minus the smallest root valuation. Needs only lower bounds for the
/// uncertain coefficients: the value is certified once some certified point
/// attains the max and every uncertain bound stays at or below it.
pub fn dominant_slope(coeffs: &[PAdicScalar]) -> Result<ExtRational> {
    let (lead, rest) = coeffs.split_last().ok_or_else(|| Error::InvalidProblem("empty polynomial".into()))?;
    let d = rest.len() as i64;
    let vd = lead
        .int_valuation()
        .ok_or_else(|| Error::InvalidProblem("leading coefficient must be a certified nonzero".into()))?;
    let mut exact = ExtRational::NegInf;
    let mut loose = ExtRational::NegInf;
    for (i, c) in rest.iter().enumerate() {
        let s = |v: ExtRational| (ExtRational::int(vd) - v).div_int(d - i as i64);
        match c.int_valuation() {
            Some(v) => exact = exact.max(s(ExtRational::int(v))),
            None if c.is_exact_zero() => {}
            None => loose = loose.max(s(c.valuation_lower_bound())),
        }
    }
    if loose > exact {
        return Err(Error::PrecisionExhausted(format!(
            "largest root not separated: a coefficient known only to O(p^k) allows slope {loose}"
        )));
    }
    Ok(exact)
}
