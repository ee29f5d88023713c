//! Plane embeddings of graph nodes: circular (ellipse), spiral, and seeded
//! uniform-random placement, plus the affine fit from layout space onto a
//! pixel canvas.

use crate::rng::SplitMix64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LayoutError {
    #[error("ellipse parameters must be positive (a={a}, b={b})")]
    NonPositiveAxis { a: f64, b: f64 },
}

/// Per-node 2D coordinates, in layout units until fitted to a canvas.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    coords: Vec<(f64, f64)>,
}

impl Layout {
    pub fn new(coords: Vec<(f64, f64)>) -> Layout {
        debug_assert!(coords.iter().all(|c| c.0.is_finite() && c.1.is_finite()));
        Layout { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[(f64, f64)] {
        &self.coords
    }
}

/// Which embedding family to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayoutKind {
    Circular,
    Spiral,
    Random,
}

/// Embedding parameters. `a`/`b` shape the circular layout's ellipse
/// x²/a + y²/b = 1, `r` is the spiral offset in radians per step, and `seed`
/// drives the random layout.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutSpec {
    pub kind: LayoutKind,
    pub a: f64,
    pub b: f64,
    pub r: f64,
    pub seed: u64,
}

impl Default for LayoutSpec {
    fn default() -> Self {
        LayoutSpec {
            kind: LayoutKind::Circular,
            a: 1.0,
            b: 1.0,
            r: 0.3,
            seed: 0,
        }
    }
}

impl LayoutSpec {
    /// Lays out `n` nodes according to this spec.
    pub fn layout(&self, n: usize) -> Result<Layout, LayoutError> {
        match self.kind {
            LayoutKind::Circular => circular_layout(n, self.a, self.b),
            LayoutKind::Spiral => Ok(spiral_layout(n, self.r)),
            LayoutKind::Random => Ok(random_layout(n, self.seed)),
        }
    }
}

/// Places `n` nodes uniformly (by angle) on the ellipse x²/a + y²/b = 1,
/// starting at angle 0 and proceeding counterclockwise.
pub fn circular_layout(n: usize, a: f64, b: f64) -> Result<Layout, LayoutError> {
    if !(a > 0.0 && b > 0.0) {
        return Err(LayoutError::NonPositiveAxis { a, b });
    }
    let (sa, sb) = (a.sqrt(), b.sqrt());
    let coords = (0..n)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            (sa * theta.cos(), sb * theta.sin())
        })
        .collect();
    Ok(Layout::new(coords))
}

/// Archimedean spiral: node i (1-based) sits at (i·cos(i·r), i·sin(i·r)).
pub fn spiral_layout(n: usize, r: f64) -> Layout {
    let coords = (1..=n)
        .map(|i| {
            let t = i as f64;
            ((t * r).cos() * t, (t * r).sin() * t)
        })
        .collect();
    Layout::new(coords)
}

/// Coordinates i.i.d. uniform on [0,1)², drawn from the seeded generator.
pub fn random_layout(n: usize, seed: u64) -> Layout {
    let mut rng = SplitMix64::stream(seed, 0x4c41_594f_5554); // "LAYOUT"
    let coords = (0..n).map(|_| (rng.next_f64(), rng.next_f64())).collect();
    Layout::new(coords)
}

/// Maps a layout into pixel coordinates: uniform scale (aspect preserved),
/// centered on the canvas, with the bounding box fitted inside the canvas
/// minus a fractional margin on each side. A degenerate bounding box lands on
/// the canvas center.
pub fn fit_to_canvas(layout: &Layout, width: u32, height: u32, margin_frac: f64) -> Layout {
    assert!(width >= 2 && height >= 2, "canvas must be at least 2x2");
    assert!(
        (0.0..0.5).contains(&margin_frac),
        "margin_frac must be in [0, 0.5)"
    );
    let (cx, cy) = (width as f64 / 2.0, height as f64 / 2.0);
    if layout.is_empty() {
        return Layout::new(Vec::new());
    }
    let xs = layout.coords().iter().map(|c| c.0);
    let ys = layout.coords().iter().map(|c| c.1);
    let (min_x, max_x) = min_max(xs);
    let (min_y, max_y) = min_max(ys);
    let (w_box, h_box) = (max_x - min_x, max_y - min_y);
    let usable_w = width as f64 * (1.0 - 2.0 * margin_frac);
    let usable_h = height as f64 * (1.0 - 2.0 * margin_frac);
    let mut scale = f64::INFINITY;
    if w_box > 0.0 {
        scale = scale.min(usable_w / w_box);
    }
    if h_box > 0.0 {
        scale = scale.min(usable_h / h_box);
    }
    if !scale.is_finite() {
        // Single point (or all points coincident).
        return Layout::new(vec![(cx, cy); layout.len()]);
    }
    let (mid_x, mid_y) = ((min_x + max_x) / 2.0, (min_y + max_y) / 2.0);
    let coords = layout
        .coords()
        .iter()
        .map(|&(x, y)| (cx + (x - mid_x) * scale, cy + (y - mid_y) * scale))
        .collect();
    Layout::new(coords)
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}
