//! Rank-two pictures of the flat: singular planes, the unit lattice, the
//! closed positive chamber and a geodesic ray with its conjugate points.
//!
//! All geometry is exact; conversion to decimals happens only when a
//! coordinate is written, at six fixed decimals.

use std::fmt::Write;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::geodesics;
use crate::rational::{RatVec, Rational};
use crate::rootspace::SymmetricSpaceData;

const DEFAULT_DASHES: [&str; 4] = ["8,4", "2,3", "10,3,2,3", "1,5"];
const CANVAS: f64 = 600.0;
const MARGIN: f64 = 20.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotSpec {
    /// `[x_min, x_max] x [y_min, y_max]` in the coordinates of the flat.
    pub x_range: (Rational, Rational),
    pub y_range: (Rational, Rational),
    /// SVG dash pattern per positive root; `None` draws roots with the default cycle.
    pub plane_styles: Option<Vec<String>>,
    pub dot_radius: Rational,
    pub shade_chamber: bool,
    pub h: RatVec,
    pub output: Option<PathBuf>,
}

impl PlotSpec {
    /// Square box `[-r, r]^2` with the default styling.
    pub fn square(half_width: Rational, h: RatVec) -> Self {
        PlotSpec {
            x_range: (-half_width, half_width),
            y_range: (-half_width, half_width),
            plane_styles: None,
            dot_radius: Rational::new(1, 20),
            shade_chamber: true,
            h,
            output: None,
        }
    }

    fn contains(&self, p: &RatVec) -> bool {
        self.x_range.0 <= p[0]
            && p[0] <= self.x_range.1
            && self.y_range.0 <= p[1]
            && p[1] <= self.y_range.1
    }

    fn corners(&self) -> [RatVec; 4] {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        [
            RatVec(vec![x0, y0]),
            RatVec(vec![x1, y0]),
            RatVec(vec![x1, y1]),
            RatVec(vec![x0, y1]),
        ]
    }

    fn check(&self, space: &SymmetricSpaceData) -> Result<()> {
        if self.x_range.0 >= self.x_range.1 || self.y_range.0 >= self.y_range.1 {
            return Err(Error::InvalidPlot("bounding box is empty".into()));
        }
        if self.h.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.h.dim(),
            });
        }
        if !self.contains(&self.h) {
            return Err(Error::InvalidPlot(format!(
                "H = {} lies outside the box",
                self.h
            )));
        }
        if !self.dot_radius.is_positive() {
            return Err(Error::InvalidPlot("dot radius must be positive".into()));
        }
        if let Some(styles) = &self.plane_styles {
            if styles.len() != space.num_roots() {
                return Err(Error::InvalidPlot(format!(
                    "{} plane styles for {} roots",
                    styles.len(),
                    space.num_roots()
                )));
            }
        }
        Ok(())
    }
}

struct Canvas {
    x0: Rational,
    y1: Rational,
    scale: f64,
    width: f64,
    height: f64,
}

impl Canvas {
    fn new(spec: &PlotSpec) -> Self {
        let w = (spec.x_range.1 - spec.x_range.0).to_f64();
        let h = (spec.y_range.1 - spec.y_range.0).to_f64();
        let scale = CANVAS / w.max(h);
        Canvas {
            x0: spec.x_range.0,
            y1: spec.y_range.1,
            scale,
            width: w * scale + 2.0 * MARGIN,
            height: h * scale + 2.0 * MARGIN,
        }
    }

    fn x(&self, x: Rational) -> String {
        fmt6((x - self.x0).to_f64() * self.scale + MARGIN)
    }

    fn y(&self, y: Rational) -> String {
        fmt6((self.y1 - y).to_f64() * self.scale + MARGIN)
    }

    fn point(&self, p: &RatVec) -> String {
        format!("{},{}", self.x(p[0]), self.y(p[1]))
    }
}

fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Segment of `w . x = level` inside the box, if it has positive length.
fn clip_line(spec: &PlotSpec, w: &RatVec, level: Rational) -> Option<(RatVec, RatVec)> {
    let mut pts: Vec<RatVec> = Vec::new();
    let (x0, x1) = spec.x_range;
    let (y0, y1) = spec.y_range;
    if !w[1].is_zero() {
        for x in [x0, x1] {
            let y = (level - w[0] * x) / w[1];
            pts.push(RatVec(vec![x, y]));
        }
    }
    if !w[0].is_zero() {
        for y in [y0, y1] {
            let x = (level - w[1] * y) / w[0];
            pts.push(RatVec(vec![x, y]));
        }
    }
    pts.retain(|p| spec.contains(p));
    pts.sort();
    pts.dedup();
    match (pts.first(), pts.last()) {
        (Some(a), Some(b)) if a != b => Some((a.clone(), b.clone())),
        _ => None,
    }
}

/// Sutherland-Hodgman clip of a convex polygon to `w . x >= 0`.
fn clip_halfplane(poly: &[RatVec], w: &RatVec) -> Vec<RatVec> {
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        let (fp, fq) = (w.dot(p), w.dot(q));
        if !fp.is_negative() {
            out.push(p.clone());
        }
        if (fp.is_negative() && fq.is_positive()) || (fp.is_positive() && fq.is_negative()) {
            let t = fp / (fp - fq);
            out.push(p.add(&q.sub(p).scale(t)));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Parameter interval of `t -> tH` inside the box, clipped to `[0, 1]`.
fn ray_interval(spec: &PlotSpec) -> Option<(Rational, Rational)> {
    let (mut lo, mut hi) = (Rational::ZERO, Rational::ONE);
    for (axis, (a, b)) in [(0, spec.x_range), (1, spec.y_range)] {
        let d = spec.h[axis];
        if d.is_zero() {
            if a > Rational::ZERO || b < Rational::ZERO {
                return None;
            }
            continue;
        }
        let (ta, tb) = (a / d, b / d);
        let (ta, tb) = if ta <= tb { (ta, tb) } else { (tb, ta) };
        lo = lo.max(ta);
        hi = hi.min(tb);
    }
    (lo < hi).then_some((lo, hi))
}

pub fn emit_svg(space: &SymmetricSpaceData, spec: &PlotSpec) -> Result<String> {
    if space.rank() != 2 {
        return Err(Error::Unsupported(format!(
            "plotting needs rank 2, {} has rank {}",
            space.name(),
            space.rank()
        )));
    }
    spec.check(space)?;
    let canvas = Canvas::new(spec);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fmt6(canvas.width),
        fmt6(canvas.height),
        fmt6(canvas.width),
        fmt6(canvas.height)
    );
    let _ = writeln!(s, "<title>{} H = {}</title>", space.name(), spec.h);
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        fmt6(canvas.width),
        fmt6(canvas.height)
    );

    if spec.shade_chamber {
        let chamber = (0..space.num_roots()).fold(spec.corners().to_vec(), |poly, r| {
            if poly.is_empty() {
                poly
            } else {
                clip_halfplane(&poly, space.covector(r))
            }
        });
        if chamber.len() >= 3 {
            let pts: Vec<String> = chamber.iter().map(|p| canvas.point(p)).collect();
            let _ = writeln!(
                s,
                r##"<polygon class="chamber" points="{}" fill="#dde8f4" stroke="none"/>"##,
                pts.join(" ")
            );
        }
    }

    let corners = spec.corners();
    for r in 0..space.num_roots() {
        let w = space.covector(r);
        let values: Vec<Rational> = corners.iter().map(|c| w.dot(c)).collect();
        let lo = values
            .iter()
            .min()
            .copied()
            .unwrap_or(Rational::ZERO)
            .ceil();
        let hi = values
            .iter()
            .max()
            .copied()
            .unwrap_or(Rational::ZERO)
            .floor();
        let dash = match &spec.plane_styles {
            Some(styles) => styles[r].clone(),
            None => DEFAULT_DASHES[r % DEFAULT_DASHES.len()].to_string(),
        };
        for n in lo..=hi {
            let Some((a, b)) = clip_line(spec, w, Rational::from(n)) else {
                continue;
            };
            let _ = writeln!(
                s,
                r##"<line class="plane" data-root="{r}" data-level="{n}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555555" stroke-width="1" stroke-dasharray="{dash}"/>"##,
                canvas.x(a[0]),
                canvas.y(a[1]),
                canvas.x(b[0]),
                canvas.y(b[1])
            );
        }
    }

    let lattice = space.lattice();
    let coord_corners: Vec<RatVec> = corners.iter().map(|c| lattice.rational_coords(c)).collect();
    let bound = |i: usize| {
        let vals: Vec<Rational> = coord_corners.iter().map(|c| c[i]).collect();
        (
            vals.iter().min().copied().unwrap_or(Rational::ZERO).floor(),
            vals.iter().max().copied().unwrap_or(Rational::ZERO).ceil(),
        )
    };
    let ((a0, a1), (b0, b1)) = (bound(0), bound(1));
    let radius = fmt6(spec.dot_radius.to_f64() * canvas.scale);
    for i in a0..=a1 {
        for j in b0..=b1 {
            let p = lattice.point(&[i, j]);
            if spec.contains(&p) {
                let _ = writeln!(
                    s,
                    r#"<circle class="lattice" cx="{}" cy="{}" r="{radius}" fill="black"/>"#,
                    canvas.x(p[0]),
                    canvas.y(p[1])
                );
            }
        }
    }

    if !spec.h.is_zero() {
        if let Some((t0, t1)) = ray_interval(spec) {
            let a = spec.h.scale(t0);
            let b = spec.h.scale(t1);
            let _ = writeln!(
                s,
                r##"<line class="ray" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#b22222" stroke-width="2"/>"##,
                canvas.x(a[0]),
                canvas.y(a[1]),
                canvas.x(b[0]),
                canvas.y(b[1])
            );
        }
        for c in geodesics::crossing_times(space, &spec.h)? {
            let p = spec.h.scale(c.t);
            if spec.contains(&p) {
                let _ = writeln!(
                    s,
                    r##"<circle class="conjugate" data-t="{}" data-multiplicity="{}" cx="{}" cy="{}" r="{}" fill="none" stroke="#b22222" stroke-width="2"/>"##,
                    c.t,
                    c.multiplicity,
                    canvas.x(p[0]),
                    canvas.y(p[1]),
                    fmt6(spec.dot_radius.to_f64() * canvas.scale * 2.0)
                );
            }
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootspace::catalog;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn ray_markers() {
        let g = catalog("gr2c4").unwrap();
        let svg = emit_svg(&g, &PlotSpec::square(r(3, 1), RatVec::from_ints(&[2, 1]))).unwrap();
        assert_eq!(svg.matches(r#"class="conjugate""#).count(), 5);
        assert_eq!(svg.matches(r#"class="chamber""#).count(), 1);
        assert!(svg.matches(r#"class="plane""#).count() > 10);
        assert!(svg.matches(r#"class="lattice""#).count() > 20);
        let again = emit_svg(&g, &PlotSpec::square(r(3, 1), RatVec::from_ints(&[2, 1]))).unwrap();
        assert_eq!(svg, again);
    }

    #[test]
    fn tiny_box_has_no_planes() {
        let g = catalog("gr2c4").unwrap();
        let h = RatVec(vec![r(7, 10), r(1, 10)]);
        let spec = PlotSpec {
            x_range: (r(69, 100), r(71, 100)),
            y_range: (r(9, 100), r(11, 100)),
            ..PlotSpec::square(Rational::ONE, h)
        };
        let svg = emit_svg(&g, &spec).unwrap();
        assert_eq!(svg.matches(r#"class="plane""#).count(), 0);
        assert_eq!(svg.matches(r#"class="conjugate""#).count(), 0);
        assert_eq!(svg.matches(r#"class="lattice""#).count(), 0);
        assert_eq!(svg.matches(r#"class="chamber""#).count(), 1);
    }

    #[test]
    fn rejects_bad_specs() {
        let g = catalog("gr2c4").unwrap();
        let s = catalog("sphere(3)").unwrap();
        let spec = PlotSpec::square(r(3, 1), RatVec::from_ints(&[2, 1]));
        assert!(matches!(emit_svg(&s, &spec), Err(Error::Unsupported(_))));
        let outside = PlotSpec::square(r(1, 1), RatVec::from_ints(&[2, 1]));
        assert!(matches!(emit_svg(&g, &outside), Err(Error::InvalidPlot(_))));
        let empty = PlotSpec::square(Rational::ZERO, RatVec::from_ints(&[0, 0]));
        assert!(matches!(emit_svg(&g, &empty), Err(Error::InvalidPlot(_))));
    }

    #[test]
    fn chamber_clip() {
        let square = vec![
            RatVec::from_ints(&[-1, -1]),
            RatVec::from_ints(&[1, -1]),
            RatVec::from_ints(&[1, 1]),
            RatVec::from_ints(&[-1, 1]),
        ];
        let half = clip_halfplane(&square, &RatVec::from_ints(&[1, -1]));
        assert_eq!(half.len(), 3);
        assert!(half.iter().all(|p| p[0] >= p[1]));
    }
}
