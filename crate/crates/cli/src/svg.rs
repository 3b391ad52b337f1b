//! Flat 2D figures. Vectors keep their first two coordinates, scalars sit on
//! the horizontal axis, graph points use a schematic layout.

use std::collections::VecDeque;
use std::fmt::Write as _;

use convexa_core::polytope::hull_2d;
use convexa_core::rational::to_f64;
use convexa_core::{GraphPoint, MetricGraph, Point, Region, SpaceModel, Q};

type Xy = [f64; 2];

enum Shape {
    Polygon(Vec<Xy>),
    Polyline(Vec<Xy>),
    Dot(Xy),
}

struct Layer {
    stroke: &'static str,
    fill: &'static str,
    width: f64,
    shapes: Vec<Shape>,
}

pub struct Figure {
    title: String,
    notes: Vec<String>,
    layers: Vec<Layer>,
    /// Vertex positions for graph models.
    layout: Option<Layout>,
}

struct Layout {
    pos: Vec<Xy>,
    ends: Vec<(usize, usize)>,
}

/// Horizontal position is the distance from vertex 0 along a breadth-first
/// tree; leaves of that tree are stacked vertically.
fn layout(g: &MetricGraph) -> Layout {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut depth = vec![0.0; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(e, w) in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                depth[w] = depth[v] + to_f64(&g.edge(e).length);
                queue.push_back(w);
            }
        }
    }
    let mut children = vec![Vec::new(); n];
    for &v in &order[1..] {
        children[parent[v]].push(v);
    }
    let mut y = vec![0.0; n];
    let mut next_leaf = 0.0;
    for &v in order.iter().rev() {
        if children[v].is_empty() {
            y[v] = next_leaf;
            next_leaf += 1.0;
        } else {
            y[v] = children[v].iter().map(|&c| y[c]).sum::<f64>() / children[v].len() as f64;
        }
    }
    Layout {
        pos: (0..n).map(|v| [depth[v], y[v]]).collect(),
        ends: g.edges().iter().map(|e| (e.u, e.v)).collect(),
    }
}

fn lerp(a: Xy, b: Xy, t: f64) -> Xy {
    [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t]
}

impl Figure {
    pub fn new(title: impl Into<String>, space: &SpaceModel) -> Figure {
        let mut f = Figure { title: title.into(), notes: Vec::new(), layers: Vec::new(), layout: None };
        match space {
            SpaceModel::Euclidean { n, bounds } => {
                if *n > 2 {
                    f.notes.push(format!("projection: first two of {n} coordinates"));
                }
                if let Some(b) = bounds {
                    let pts: Vec<Vec<Q>> = b.vertices().to_vec();
                    let poly = f.polygon_of(&pts);
                    f.layer("#999999", "none", 1.0, vec![poly]);
                }
            }
            SpaceModel::Interval { a, b } => {
                f.notes.push("interval drawn on the horizontal axis".into());
                f.layer("#999999", "none", 1.0, vec![Shape::Polyline(vec![[to_f64(a), 0.0], [to_f64(b), 0.0]])]);
            }
            SpaceModel::Tree(g) | SpaceModel::Polyhedral { graph: g, .. } => {
                f.notes.push("schematic layout: horizontal = distance from vertex 0".into());
                let lay = layout(g);
                let edges = lay.ends.iter().map(|&(u, v)| Shape::Polyline(vec![lay.pos[u], lay.pos[v]])).collect();
                f.layout = Some(lay);
                f.layer("#cccccc", "none", 1.0, edges);
            }
        }
        f
    }

    fn layer(&mut self, stroke: &'static str, fill: &'static str, width: f64, shapes: Vec<Shape>) {
        self.layers.push(Layer { stroke, fill, width, shapes });
    }

    fn xy(&self, p: &Point) -> Xy {
        match p {
            Point::Scalar(x) => [to_f64(x), 0.0],
            Point::Vector(v) => [to_f64(&v[0]), v.get(1).map(to_f64).unwrap_or(0.0)],
            Point::Graph(g) => {
                let lay = self.layout.as_ref().expect("graph points need a graph space");
                match g {
                    GraphPoint::Vertex { vertex } => lay.pos[*vertex],
                    GraphPoint::Edge { edge, t } => {
                        let (u, v) = lay.ends[*edge];
                        lerp(lay.pos[u], lay.pos[v], to_f64(t))
                    }
                }
            }
        }
    }

    fn polygon_of(&self, pts: &[Vec<Q>]) -> Shape {
        let flat: Vec<Vec<Q>> =
            pts.iter().map(|v| vec![v[0].clone(), v.get(1).cloned().unwrap_or_default()]).collect();
        let ring: Vec<Xy> = hull_2d(&flat).iter().map(|v| [to_f64(&v[0]), to_f64(&v[1])]).collect();
        match ring.len() {
            1 => Shape::Dot(ring[0]),
            2 => Shape::Polyline(ring),
            _ => Shape::Polygon(ring),
        }
    }

    fn region_shapes(&self, r: &Region) -> Vec<Shape> {
        match r {
            Region::Polytopes(ps) => ps.iter().map(|p| self.polygon_of(p.vertices())).collect(),
            Region::Intervals(s) => s
                .parts()
                .iter()
                .map(|iv| {
                    if iv.lo == iv.hi {
                        Shape::Dot([to_f64(&iv.lo), 0.0])
                    } else {
                        Shape::Polyline(vec![[to_f64(&iv.lo), 0.0], [to_f64(&iv.hi), 0.0]])
                    }
                })
                .collect(),
            Region::Graph(gr) => {
                let Some(lay) = &self.layout else { return Vec::new() };
                let mut out: Vec<Shape> = gr.vertices.iter().map(|&v| Shape::Dot(lay.pos[v])).collect();
                for (&e, set) in &gr.edges {
                    let (u, v) = lay.ends[e];
                    for iv in set.parts() {
                        let (a, b) = (lerp(lay.pos[u], lay.pos[v], to_f64(&iv.lo)), lerp(lay.pos[u], lay.pos[v], to_f64(&iv.hi)));
                        out.push(Shape::Polyline(vec![a, b]));
                    }
                }
                out
            }
        }
    }

    pub fn region(&mut self, r: &Region, stroke: &'static str, fill: &'static str) {
        let shapes = self.region_shapes(r);
        self.layer(stroke, fill, 2.0, shapes);
    }

    /// Straight polyline through the points; graph regions are drawn with `region`.
    pub fn polyline(&mut self, pts: &[Point], stroke: &'static str, width: f64) {
        let line = pts.iter().map(|p| self.xy(p)).collect();
        self.layer(stroke, "none", width, vec![Shape::Polyline(line)]);
    }

    /// Dots of radius `r` pixels.
    pub fn dots(&mut self, pts: &[Point], fill: &'static str, r: f64) {
        let shapes = pts.iter().map(|p| Shape::Dot(self.xy(p))).collect();
        self.layer("none", fill, r, shapes);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn render(&self) -> String {
        const W: f64 = 640.0;
        const M: f64 = 40.0;
        let all = self.layers.iter().flat_map(|l| &l.shapes).flat_map(|s| match s {
            Shape::Polygon(v) | Shape::Polyline(v) => v.clone(),
            Shape::Dot(p) => vec![*p],
        });
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in all {
            for i in 0..2 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        if !lo[0].is_finite() {
            (lo, hi) = ([0.0; 2], [1.0; 2]);
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let k = (W - 2.0 * M) / span;
        let map = |p: Xy| [M + (p[0] - lo[0]) * k, W - M - (p[1] - lo[1]) * k];
        let pts = |v: &[Xy]| v.iter().map(|&p| map(p)).map(|[x, y]| format!("{x:.2},{y:.2}")).collect::<Vec<_>>().join(" ");
        let text_h = 18.0 * (1 + self.notes.len()) as f64;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{h}" viewBox="0 0 {W} {h}">"#,
            h = W + text_h
        );
        let _ = writeln!(s, r#"<!-- convexa {} -->"#, env!("CARGO_PKG_VERSION"));
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for l in &self.layers {
            let _ = writeln!(s, r#"<g stroke="{}" fill="{}" stroke-width="{}">"#, l.stroke, l.fill, l.width);
            for sh in &l.shapes {
                let _ = match sh {
                    Shape::Polygon(v) => writeln!(s, r#"<polygon points="{}" fill-opacity="0.3"/>"#, pts(v)),
                    Shape::Polyline(v) => writeln!(s, r#"<polyline points="{}" fill="none"/>"#, pts(v)),
                    Shape::Dot(p) => {
                        let [x, y] = map(*p);
                        let fill = if l.fill == "none" { l.stroke } else { l.fill };
                        let r = if l.stroke == "none" { l.width } else { 2.5 };
                        writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}" stroke="none"/>"#)
                    }
                };
            }
            let _ = writeln!(s, "</g>");
        }
        let mut y = W + 4.0;
        for line in std::iter::once(&self.title).chain(&self.notes) {
            let esc = line.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
            let _ = writeln!(s, r#"<text x="{M}" y="{y:.0}" font-family="monospace" font-size="13">{esc}</text>"#);
            y += 18.0;
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use convexa_core::models;

    #[test]
    fn projection_is_noted() {
        let f = Figure::new("t", &models::make_euclidean(3, None).unwrap());
        assert!(f.render().contains("projection: first two of 3 coordinates"));
    }

    #[test]
    fn tree_layout_places_root_left() {
        let space = models::branching_tree(2, 2).unwrap();
        let mut f = Figure::new("tree", &space);
        f.dots(&[Point::vertex(0)], "red", 3.0);
        let lay = f.layout.as_ref().unwrap();
        assert!(lay.pos.iter().all(|p| p[0] >= lay.pos[0][0]));
        assert!(f.render().starts_with("<svg"));
    }
}
