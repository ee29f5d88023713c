//! Rendering graphs to RGB pixel buffers: nodes as solid discs, edges as
//! solid line segments (capsules), hard edges with no anti-aliasing.
//!
//! Rendering is a pure function of its inputs. Coordinates are quantized to
//! 1/256 px before rasterization so that last-ulp differences in transcendental
//! functions across platforms can never flip a pixel coverage test; identical
//! inputs therefore produce byte-identical buffers everywhere.

use crate::graph::Graph;
use crate::layout::{fit_to_canvas, Layout, LayoutSpec};
use crate::rng::SplitMix64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RasterError {
    #[error("layout has {layout} coordinates but the graph has {nodes} nodes")]
    LayoutMismatch { layout: usize, nodes: usize },
    #[error("invalid render spec: {reason}")]
    InvalidSpec { reason: String },
}

/// Entity coloring rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorScheme {
    /// Every entity in one fixed dark gray.
    Gray,
    /// All nodes one fixed color, all edges another.
    Uniform,
    /// An independent saturated color per entity, drawn from `color_seed`.
    Random,
}

pub const GRAY_ENTITY: [u8; 3] = [80, 80, 80];
pub const UNIFORM_NODE: [u8; 3] = [31, 119, 180];
pub const UNIFORM_EDGE: [u8; 3] = [255, 127, 14];
pub const WHITE: [u8; 3] = [255, 255, 255];

/// Rasterization parameters. At scale 1 a node disc has diameter 2 px and an
/// edge segment is 2 px thick; the scale factors multiply those sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub node_scale: f64,
    pub edge_scale: f64,
    pub scheme: ColorScheme,
    pub color_seed: u64,
    pub background: [u8; 3],
    /// Fraction of the canvas kept clear on each side when fitting layouts.
    pub margin_frac: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 224,
            height: 224,
            node_scale: 1.0,
            edge_scale: 1.0,
            scheme: ColorScheme::Gray,
            color_seed: 0,
            background: WHITE,
            margin_frac: 0.05,
        }
    }
}

impl RenderSpec {
    fn validate(&self) -> Result<(), RasterError> {
        if self.width < 16 || self.height < 16 {
            return Err(RasterError::InvalidSpec {
                reason: format!("canvas {}x{} is below the 16x16 minimum", self.width, self.height),
            });
        }
        if !(self.node_scale > 0.0) || !(self.edge_scale > 0.0) {
            return Err(RasterError::InvalidSpec {
                reason: "node_scale and edge_scale must be positive".into(),
            });
        }
        if !(0.0..0.5).contains(&self.margin_frac) {
            return Err(RasterError::InvalidSpec {
                reason: "margin_frac must be in [0, 0.5)".into(),
            });
        }
        Ok(())
    }
}

/// Dense 8-bit RGB image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl Image {
    pub fn new(width: u32, height: u32, fill: [u8; 3]) -> Image {
        let mut pixels = vec![0u8; width as usize * height as usize * 3];
        for px in pixels.chunks_exact_mut(3) {
            px.copy_from_slice(&fill);
        }
        Image {
            width,
            height,
            pixels,
        }
    }

    pub fn from_pixels(width: u32, height: u32, pixels: Vec<u8>) -> Image {
        assert_eq!(pixels.len(), width as usize * height as usize * 3);
        Image {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        let i = (y as usize * self.width as usize + x as usize) * 3;
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    fn put(&mut self, x: u32, y: u32, color: [u8; 3]) {
        let i = (y as usize * self.width as usize + x as usize) * 3;
        self.pixels[i..i + 3].copy_from_slice(&color);
    }
}

/// Colors for every drawable entity: one per node, one per edge (edges in the
/// graph's sorted edge order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityColors {
    pub node_colors: Vec<[u8; 3]>,
    pub edge_colors: Vec<[u8; 3]>,
}

/// Assigns a color to every node and edge under the given scheme.
/// Deterministic in `(g, scheme, color_seed)`.
pub fn assign_colors(g: &Graph, scheme: ColorScheme, color_seed: u64) -> EntityColors {
    let m = g.edge_count();
    match scheme {
        ColorScheme::Gray => EntityColors {
            node_colors: vec![GRAY_ENTITY; g.n()],
            edge_colors: vec![GRAY_ENTITY; m],
        },
        ColorScheme::Uniform => EntityColors {
            node_colors: vec![UNIFORM_NODE; g.n()],
            edge_colors: vec![UNIFORM_EDGE; m],
        },
        ColorScheme::Random => {
            let mut rng = SplitMix64::stream(color_seed, 0x434f_4c4f_52); // "COLOR"
            let node_colors = (0..g.n()).map(|_| random_saturated(&mut rng)).collect();
            let edge_colors = (0..m).map(|_| random_saturated(&mut rng)).collect();
            EntityColors {
                node_colors,
                edge_colors,
            }
        }
    }
}

/// Fully saturated, full-value color with a uniform hue.
fn random_saturated(rng: &mut SplitMix64) -> [u8; 3] {
    hsv_to_rgb(rng.next_f64() * 360.0, 1.0, 1.0)
}

fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [u8; 3] {
    let c = v * s;
    let hp = (h / 60.0) % 6.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    [
        ((r + m) * 255.0).round() as u8,
        ((g + m) * 255.0).round() as u8,
        ((b + m) * 255.0).round() as u8,
    ]
}

/// Paints every pixel whose center lies within `radius` of `center`
/// (inclusive). Out-of-canvas portions are clipped.
pub fn draw_disc(img: &mut Image, center: (f64, f64), radius: f64, color: [u8; 3]) {
    debug_assert!(center.0.is_finite() && center.1.is_finite() && radius > 0.0);
    let (cx, cy) = center;
    let r2 = radius * radius;
    let x_lo = clamp_px(cx - radius - 1.0, img.width);
    let x_hi = clamp_px(cx + radius + 1.0, img.width);
    let y_lo = clamp_px(cy - radius - 1.0, img.height);
    let y_hi = clamp_px(cy + radius + 1.0, img.height);
    for py in y_lo..y_hi {
        let dy = (py as f64 + 0.5) - cy;
        for px in x_lo..x_hi {
            let dx = (px as f64 + 0.5) - cx;
            if dx * dx + dy * dy <= r2 {
                img.put(px, py, color);
            }
        }
    }
}

/// Paints the capsule of the given thickness around the segment `p0`-`p1`:
/// every pixel whose center is within `thickness / 2` of the segment. A
/// zero-length segment degenerates to a disc.
pub fn draw_segment(img: &mut Image, p0: (f64, f64), p1: (f64, f64), thickness: f64, color: [u8; 3]) {
    debug_assert!(thickness > 0.0);
    let half = thickness / 2.0;
    let h2 = half * half;
    let (dx, dy) = (p1.0 - p0.0, p1.1 - p0.1);
    let len2 = dx * dx + dy * dy;
    let x_lo = clamp_px(p0.0.min(p1.0) - half - 1.0, img.width);
    let x_hi = clamp_px(p0.0.max(p1.0) + half + 1.0, img.width);
    let y_lo = clamp_px(p0.1.min(p1.1) - half - 1.0, img.height);
    let y_hi = clamp_px(p0.1.max(p1.1) + half + 1.0, img.height);
    for py in y_lo..y_hi {
        let cy = py as f64 + 0.5;
        for px in x_lo..x_hi {
            let cx = px as f64 + 0.5;
            let (ux, uy) = (cx - p0.0, cy - p0.1);
            let t = if len2 > 0.0 {
                ((ux * dx + uy * dy) / len2).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let (ex, ey) = (ux - t * dx, uy - t * dy);
            if ex * ex + ey * ey <= h2 {
                img.put(px, py, color);
            }
        }
    }
}

/// Clamps a bounding-box coordinate to a valid pixel index range.
fn clamp_px(v: f64, limit: u32) -> u32 {
    if v.is_nan() {
        return 0;
    }
    v.max(0.0).min(limit as f64) as u32
}

/// Renders a graph over a pixel-space layout: background fill, then all edges
/// in sorted (u, v) order, then all nodes in index order on top.
///
/// Node discs get diameter `2 * node_scale` px; edge segments get thickness
/// `2 * edge_scale` px. Output bytes are identical for identical inputs.
pub fn render(g: &Graph, layout: &Layout, spec: &RenderSpec) -> Result<Image, RasterError> {
    spec.validate()?;
    if layout.len() != g.n() {
        return Err(RasterError::LayoutMismatch {
            layout: layout.len(),
            nodes: g.n(),
        });
    }
    let colors = assign_colors(g, spec.scheme, spec.color_seed);
    let mut img = Image::new(spec.width, spec.height, spec.background);
    let pts: Vec<(f64, f64)> = layout
        .coords()
        .iter()
        .map(|&(x, y)| (quantize(x), quantize(y)))
        .collect();
    let thickness = 2.0 * spec.edge_scale;
    for (k, (u, v)) in g.edges().enumerate() {
        draw_segment(&mut img, pts[u], pts[v], thickness, colors.edge_colors[k]);
    }
    let radius = spec.node_scale;
    for (v, &p) in pts.iter().enumerate() {
        draw_disc(&mut img, p, radius, colors.node_colors[v]);
    }
    Ok(img)
}

/// Quantizes a pixel coordinate to the nearest 1/256 px.
fn quantize(x: f64) -> f64 {
    (x * 256.0).round() / 256.0
}

/// Convenience path for the full second pipeline stage: lay out the graph,
/// fit to the canvas, and render.
pub fn render_graph(g: &Graph, layout_spec: &LayoutSpec, spec: &RenderSpec) -> Result<Image, RasterError> {
    spec.validate()?;
    let layout = layout_spec
        .layout(g.n())
        .map_err(|e| RasterError::InvalidSpec {
            reason: e.to_string(),
        })?;
    let fitted = fit_to_canvas(&layout, spec.width, spec.height, spec.margin_frac);
    render(g, &fitted, spec)
}
