//! Grayscale images as pixel adjacency graphs, and saliency maps rendered
//! back as interpixel images.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{normalize_weights, Graph, WeightMap};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    maxval: u16,
    pixels: Vec<u16>,
}

impl GrayImage {
    /// Row-major pixels, each in `0..=maxval`.
    pub fn new(width: usize, height: usize, maxval: u16, pixels: Vec<u16>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage("zero width or height"));
        }
        if maxval == 0 {
            return Err(Error::InvalidImage("maxval must be positive"));
        }
        if width.checked_mul(height) != Some(pixels.len()) {
            return Err(Error::InvalidImage("pixel count does not match dimensions"));
        }
        if pixels.iter().any(|&p| p > maxval) {
            return Err(Error::InvalidImage("pixel value above maxval"));
        }
        Ok(GrayImage { width, height, maxval, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn maxval(&self) -> u16 {
        self.maxval
    }

    pub fn pixels(&self) -> &[u16] {
        &self.pixels
    }

    pub fn get(&self, col: usize, row: usize) -> u16 {
        self.pixels[row * self.width + col]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjacency {
    Four,
    Eight,
}

/// Layout of a pixel graph. Vertex `row * width + col`; edges are listed as
/// all horizontal pairs in raster order, then all vertical pairs, then (for
/// 8-adjacency) all down-right and then all down-left diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelGraphMeta {
    pub width: usize,
    pub height: usize,
    pub adjacency: Adjacency,
}

impl PixelGraphMeta {
    pub fn edge_count(&self) -> usize {
        let (w, h) = (self.width, self.height);
        let straight = h * (w - 1) + w * (h - 1);
        match self.adjacency {
            Adjacency::Four => straight,
            Adjacency::Eight => straight + 2 * (w - 1) * (h - 1),
        }
    }

    /// Index of the edge between `(col, row)` and `(col + 1, row)`.
    pub fn right_edge(&self, col: usize, row: usize) -> usize {
        row * (self.width - 1) + col
    }

    /// Index of the edge between `(col, row)` and `(col, row + 1)`.
    pub fn down_edge(&self, col: usize, row: usize) -> usize {
        self.height * (self.width - 1) + row * self.width + col
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        let (w, h) = (self.width, self.height);
        let id = |c: usize, r: usize| (r * w + c) as u32;
        let mut edges = Vec::with_capacity(self.edge_count());
        for r in 0..h {
            edges.extend((0..w - 1).map(|c| (id(c, r), id(c + 1, r))));
        }
        for r in 0..h - 1 {
            edges.extend((0..w).map(|c| (id(c, r), id(c, r + 1))));
        }
        if self.adjacency == Adjacency::Eight {
            for r in 0..h - 1 {
                edges.extend((0..w - 1).map(|c| (id(c, r), id(c + 1, r + 1))));
            }
            for r in 0..h - 1 {
                edges.extend((1..w).map(|c| (id(c, r), id(c - 1, r + 1))));
            }
        }
        edges
    }
}

#[derive(Debug, Clone)]
pub struct PixelGraph {
    pub graph: Graph,
    pub weights: WeightMap,
    pub meta: PixelGraphMeta,
    /// Set for a 1×1 image: the graph is a single vertex without edges.
    pub single_pixel: bool,
}

/// Pixel adjacency graph weighted by absolute intensity differences.
pub fn image_to_graph(image: &GrayImage, adjacency: Adjacency) -> Result<PixelGraph> {
    let meta = PixelGraphMeta { width: image.width, height: image.height, adjacency };
    let edges = meta.edges();
    let px = &image.pixels;
    let raw: Vec<f64> =
        edges.iter().map(|&(x, y)| (px[x as usize] as f64 - px[y as usize] as f64).abs()).collect();
    let graph = Graph::from_trusted(image.width * image.height, edges);
    let weights = normalize_weights(&graph, &raw)?;
    Ok(PixelGraph { graph, weights, meta, single_pixel: image.pixels.len() == 1 })
}

/// An interpixel rendering together with the saliency value mapped to its
/// maxval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedSaliency {
    pub image: GrayImage,
    pub max_saliency: u32,
}

impl RenderedSaliency {
    /// Undoes the display scaling at one rendered position. Exact whenever
    /// `max_saliency <= 65535`.
    pub fn unscale(&self, value: u16) -> u32 {
        let (max, out) = (self.max_saliency as u64, self.image.maxval as u64);
        if max == 0 {
            return 0;
        }
        ((2 * value as u64 * max + out) / (2 * out)) as u32
    }

    /// Saliency values recovered from the inter-pixel positions, in edge
    /// order.
    pub fn edge_values(&self, meta: &PixelGraphMeta) -> Vec<u32> {
        let ow = self.image.width;
        let mut out = vec![0u32; meta.edge_count()];
        for r in 0..meta.height {
            for c in 0..meta.width {
                if c + 1 < meta.width {
                    out[meta.right_edge(c, r)] = self.unscale(self.image.pixels[2 * r * ow + 2 * c + 1]);
                }
                if r + 1 < meta.height {
                    out[meta.down_edge(c, r)] = self.unscale(self.image.pixels[(2 * r + 1) * ow + 2 * c]);
                }
            }
        }
        out
    }
}

/// Renders a saliency map of a 4-adjacency pixel graph as a
/// `(2·width − 1) × (2·height − 1)` image.
///
/// Pixel sites are 0, each site between two pixels holds the saliency of
/// that edge, and each corner site holds the maximum of its (up to four)
/// neighbouring edge sites. Values are then scaled linearly so that the
/// largest saliency maps to the output maxval, which is the largest saliency
/// clamped to `255..=65535`.
pub fn render_saliency(values: &[u32], meta: &PixelGraphMeta) -> Result<RenderedSaliency> {
    if meta.adjacency != Adjacency::Four {
        return Err(Error::UnsupportedAdjacency);
    }
    if values.len() != meta.edge_count() {
        return Err(Error::LengthMismatch { expected: meta.edge_count(), found: values.len() });
    }
    let (w, h) = (meta.width, meta.height);
    let (ow, oh) = (2 * w - 1, 2 * h - 1);
    let mut grid = vec![0u32; ow * oh];
    for r in 0..h {
        for c in 0..w {
            if c + 1 < w {
                grid[2 * r * ow + 2 * c + 1] = values[meta.right_edge(c, r)];
            }
            if r + 1 < h {
                grid[(2 * r + 1) * ow + 2 * c] = values[meta.down_edge(c, r)];
            }
        }
    }
    for r in (1..oh).step_by(2) {
        for c in (1..ow).step_by(2) {
            let around = [grid[(r - 1) * ow + c], grid[(r + 1) * ow + c], grid[r * ow + c - 1], grid[r * ow + c + 1]];
            grid[r * ow + c] = around.into_iter().max().unwrap();
        }
    }

    let max = values.iter().copied().max().unwrap_or(0);
    let out_max = max.clamp(255, 65535) as u64;
    let pixels = grid
        .iter()
        .map(|&v| if max == 0 { 0 } else { ((2 * v as u64 * out_max + max as u64) / (2 * max as u64)) as u16 })
        .collect();
    let image = GrayImage { width: ow, height: oh, maxval: out_max as u16, pixels };
    Ok(RenderedSaliency { image, max_saliency: max })
}
