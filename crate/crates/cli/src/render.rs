//! ASCII, JSON and SVG renderings of lattice point sets and configurations.
//!
//! SVG output uses x rightward and y upward on a unit grid, filled dots for
//! points and concentric double circles for markers. All numbers are printed
//! with fixed precision so identical input gives identical bytes.

use std::fmt::Write as _;

use fibonadic::farey::{genealogy, PointSet};
use fibonadic::{Config, Error, LatticePoint, ZeckWord};
use serde_json::json;

const UNIT: f64 = 60.0;
const MARGIN: f64 = 40.0;
const DOT: f64 = 4.0;

fn mother_in(v: LatticePoint) -> Result<Option<LatticePoint>, Error> {
    if v == LatticePoint::ROOT {
        return Ok(None);
    }
    Ok(Some(genealogy(v)?.mother))
}

/// Tree edges `M(v) → v` for every non-root `v` in `c`.
fn tree_edges(c: &PointSet) -> Result<Vec<(LatticePoint, LatticePoint)>, Error> {
    let mut edges = Vec::new();
    for v in c {
        if let Some(m) = mother_in(*v)? {
            if c.contains(&m) {
                edges.push((m, *v));
            }
        }
    }
    Ok(edges)
}

pub fn tree_ascii(c: &PointSet) -> Result<String, Error> {
    fn walk(v: LatticePoint, c: &PointSet, prefix: &str, last: bool, root: bool, out: &mut String) -> Result<(), Error> {
        if root {
            writeln!(out, "{v}").unwrap();
        } else {
            writeln!(out, "{prefix}{}{v}", if last { "└── " } else { "├── " }).unwrap();
        }
        let (lo, hi) = v.children()?;
        let kids: Vec<_> = [lo, hi].into_iter().filter(|k| c.contains(k)).collect();
        let next = if root { String::new() } else { format!("{prefix}{}", if last { "    " } else { "│   " }) };
        for (i, k) in kids.iter().enumerate() {
            walk(*k, c, &next, i + 1 == kids.len(), false, out)?;
        }
        Ok(())
    }
    if !c.contains(&LatticePoint::ROOT) {
        return Ok("(empty)".into());
    }
    let mut out = String::new();
    walk(LatticePoint::ROOT, c, "", true, true, &mut out)?;
    out.pop();
    Ok(out)
}

pub fn tree_json(c: &PointSet) -> Result<serde_json::Value, Error> {
    let points: Vec<_> = c.iter().map(|v| json!({"x": v.x(), "y": v.y()})).collect();
    let edges: Vec<_> = tree_edges(c)?
        .into_iter()
        .map(|(a, b)| json!({"from": {"x": a.x(), "y": a.y()}, "to": {"x": b.x(), "y": b.y()}}))
        .collect();
    Ok(json!({"points": points, "edges": edges}))
}

/// A canvas covering `1..=extent` on both axes.
struct Canvas {
    extent: u64,
    body: String,
}

impl Canvas {
    fn new(extent: u64) -> Self {
        let mut c = Canvas { extent: extent.max(3), body: String::new() };
        c.axes();
        c
    }

    fn size(&self) -> f64 {
        2.0 * MARGIN + (self.extent as f64 + 0.6) * UNIT
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + x * UNIT, self.size() - MARGIN - y * UNIT)
    }

    fn axes(&mut self) {
        let top = self.extent as f64 + 0.6;
        let (ox, oy) = self.px(0.0, 0.0);
        let (xx, _) = self.px(top, 0.0);
        let (_, yy) = self.px(0.0, top);
        writeln!(self.body, r#"<line x1="{ox:.1}" y1="{oy:.1}" x2="{xx:.1}" y2="{oy:.1}" stroke="black" marker-end="url(#arrow)"/>"#).unwrap();
        writeln!(self.body, r#"<line x1="{ox:.1}" y1="{oy:.1}" x2="{ox:.1}" y2="{yy:.1}" stroke="black" marker-end="url(#arrow)"/>"#).unwrap();
        for i in 1..=self.extent {
            let (tx, ty) = self.px(i as f64, 0.0);
            writeln!(
                self.body,
                r#"<line x1="{tx:.1}" y1="{ty:.1}" x2="{tx:.1}" y2="{:.1}" stroke="black"/><text x="{tx:.1}" y="{:.1}" font-size="12" text-anchor="middle">{i}</text>"#,
                ty + 5.0,
                ty + 20.0
            )
            .unwrap();
            let (lx, ly) = self.px(0.0, i as f64);
            writeln!(
                self.body,
                r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" font-size="12" text-anchor="end">{i}</text>"#,
                lx - 5.0,
                lx - 9.0,
                ly + 4.0
            )
            .unwrap();
        }
    }

    fn segment(&mut self, a: LatticePoint, b: LatticePoint, width: f64) {
        let (x1, y1) = self.px(a.x() as f64, a.y() as f64);
        let (x2, y2) = self.px(b.x() as f64, b.y() as f64);
        writeln!(self.body, r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="black" stroke-width="{width:.1}"/>"#).unwrap();
    }

    fn dot(&mut self, v: LatticePoint) {
        let (x, y) = self.px(v.x() as f64, v.y() as f64);
        writeln!(self.body, r#"<circle cx="{x:.1}" cy="{y:.1}" r="{DOT:.1}" fill="black"/>"#).unwrap();
    }

    fn double_circle(&mut self, v: LatticePoint) {
        let (x, y) = self.px(v.x() as f64, v.y() as f64);
        for r in [DOT + 3.0, DOT + 0.5] {
            writeln!(self.body, r#"<circle cx="{x:.1}" cy="{y:.1}" r="{r:.1}" fill="white" stroke="black" stroke-width="1.2"/>"#).unwrap();
        }
    }

    fn caption(&mut self, text: &str) {
        writeln!(self.body, r#"<text x="{:.1}" y="{:.1}" font-size="13">{text}</text>"#, MARGIN, MARGIN * 0.6).unwrap();
    }

    fn finish(self) -> String {
        let s = self.size();
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s:.0}" height="{s:.0}" viewBox="0 0 {s:.0} {s:.0}">"#,
                "\n",
                r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#,
                "\n",
                r#"<rect width="100%" height="100%" fill="white"/>"#,
                "\n{body}</svg>\n"
            ),
            s = s,
            body = self.body
        )
    }
}

fn extent(points: impl Iterator<Item = LatticePoint>) -> u64 {
    points.map(|v| v.x().max(v.y())).max().unwrap_or(1)
}

pub fn tree_svg(c: &PointSet) -> Result<String, Error> {
    let mut canvas = Canvas::new(extent(c.iter().copied()));
    for (a, b) in tree_edges(c)? {
        canvas.segment(a, b, 1.0);
    }
    for v in c {
        canvas.dot(*v);
    }
    Ok(canvas.finish())
}

/// One configuration: each level drawn as a path through its points in
/// slope order, markers as double circles.
pub fn config_svg(c: &Config, breakpoint: &ZeckWord) -> String {
    let mut canvas = Canvas::new(extent(c.levels().keys().copied()));
    canvas.caption(&format!("b({}, z), z from {}", c.height(), breakpoint));
    for n in 1..=c.height() {
        let layer: Vec<LatticePoint> = c.layer(n).into_iter().collect();
        for w in layer.windows(2) {
            canvas.segment(w[0], w[1], 2.5);
        }
    }
    for v in c.levels().keys() {
        if c.markers().contains(v) {
            canvas.double_circle(*v);
        } else {
            canvas.dot(*v);
        }
    }
    canvas.finish()
}
