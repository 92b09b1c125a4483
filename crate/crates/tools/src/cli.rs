//! The `qfz` command line: argument definitions and verb implementations.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use qfz_core::{
    check_mst_via_qfz, image_to_graph, is_saliency_map, kruskal, psi, qfz, render_saliency, saliency_of_hierarchy,
    Adjacency, Error, GrayImage, SpanningSubgraph, WeightMap,
};

use crate::pgm::{self, PgmFormat};
use crate::text::{self, GraphFile};
use crate::verify::{self, Status};

#[derive(Debug, Parser)]
#[command(name = "qfz", version, about = "Quasi-flat zones hierarchies, saliency maps and minimum spanning trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct WeightArgs {
    /// Graph file (`n m`, then `x y w` per edge).
    pub graph: PathBuf,
    /// Take the weight column verbatim as integer ranks instead of ranking
    /// the decimal weights. Needed to feed saliency files back in unchanged.
    #[arg(long)]
    pub ranks: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the quasi-flat zones dendrogram of a weighted graph.
    Qfz {
        #[command(flatten)]
        input: WeightArgs,
        #[arg(short, required = true)]
        o: PathBuf,
    },
    /// Saliency map of a dendrogram over a graph.
    Saliency {
        graph: PathBuf,
        dendrogram: PathBuf,
        #[arg(short, required = true)]
        o: PathBuf,
    },
    /// Saliency map of the quasi-flat zones hierarchy of a weighted graph.
    Psi {
        #[command(flatten)]
        input: WeightArgs,
        /// Write saliency values as the original decimal weights they
        /// correspond to, instead of ranks.
        #[arg(long)]
        raw: bool,
        #[arg(short, required = true)]
        o: PathBuf,
    },
    /// Exit 0 if the weights already form a saliency map, 1 otherwise.
    CheckSaliency {
        #[command(flatten)]
        input: WeightArgs,
    },
    /// Minimum spanning tree (Kruskal), as ascending edge indices.
    Mst {
        #[command(flatten)]
        input: WeightArgs,
        /// Write a graph file restricted to the tree edges instead.
        #[arg(long)]
        as_graph: bool,
        #[arg(short, required = true)]
        o: PathBuf,
    },
    /// Exit 0 if the listed edges form a minimum spanning tree, 1 otherwise.
    CheckMst {
        #[command(flatten)]
        input: WeightArgs,
        /// Edge-index list of the candidate.
        tree: PathBuf,
    },
    /// Pixel adjacency graph of a PGM image weighted by intensity differences.
    ImageGraph {
        image: PathBuf,
        #[arg(long, value_enum, default_value = "4")]
        adjacency: AdjacencyArg,
        #[arg(short, required = true)]
        o: PathBuf,
    },
    /// Interpixel rendering of the saliency map of a 4-adjacency image graph.
    Render {
        image: PathBuf,
        saliency: PathBuf,
        #[arg(long, value_enum, default_value = "p2")]
        format: FormatArg,
        #[arg(short, required = true)]
        o: PathBuf,
    },
    /// Run the full property battery on one weighted graph.
    Verify {
        #[command(flatten)]
        input: WeightArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AdjacencyArg {
    #[value(name = "4")]
    Four,
    #[value(name = "8")]
    Eight,
}

impl From<AdjacencyArg> for Adjacency {
    fn from(a: AdjacencyArg) -> Self {
        match a {
            AdjacencyArg::Four => Adjacency::Four,
            AdjacencyArg::Eight => Adjacency::Eight,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    P2,
    P5,
}

impl From<FormatArg> for PgmFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::P2 => PgmFormat::P2,
            FormatArg::P5 => PgmFormat::P5,
        }
    }
}

/// What a verb concluded. Failures to read, parse or write are errors
/// instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    NegativeCheck,
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> anyhow::Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn load(args: &WeightArgs) -> anyhow::Result<(GraphFile, WeightMap)> {
    let file = text::parse_graph(&read_text(&args.graph)?).with_context(|| args.graph.display().to_string())?;
    let weights = if args.ranks { file.ranks() } else { file.weights() };
    let weights = weights.with_context(|| args.graph.display().to_string())?;
    Ok((file, weights))
}

pub fn read_image(path: &Path) -> anyhow::Result<GrayImage> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    pgm::read_pgm(&bytes).with_context(|| path.display().to_string())
}

/// Graph file of an image, as written by `image-graph`.
pub fn image_graph_text(image: &GrayImage, adjacency: Adjacency) -> qfz_core::Result<String> {
    let pg = image_to_graph(image, adjacency)?;
    Ok(text::write_graph(&pg.graph, pg.weights.raw()))
}

/// Rendering of a saliency file over an image, as written by `render`.
pub fn render_bytes(image: &GrayImage, saliency_text: &str, format: PgmFormat) -> anyhow::Result<Vec<u8>> {
    let (graph, values) = text::parse_saliency(saliency_text)?;
    let pg = image_to_graph(image, Adjacency::Four)?;
    if graph != pg.graph {
        bail!(
            "saliency file does not describe the 4-adjacency graph of a {}x{} image",
            image.width(),
            image.height()
        );
    }
    let rendered = render_saliency(&values, &pg.meta)?;
    let comment = format!("max_saliency {}", rendered.max_saliency);
    Ok(pgm::write_pgm_with_comment(&rendered.image, format, &comment))
}

pub fn run(command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Qfz { input, o } => {
            let (file, w) = load(input)?;
            let d = qfz(&file.graph, &w, None)?;
            write(o, text::write_dendrogram(&d))?;
        }
        Command::Saliency { graph, dendrogram, o } => {
            let file = text::parse_graph(&read_text(graph)?).with_context(|| graph.display().to_string())?;
            let d = text::parse_dendrogram(&read_text(dendrogram)?, file.graph.edge_count())
                .with_context(|| dendrogram.display().to_string())?;
            let s = saliency_of_hierarchy(&d, &file.graph)?;
            write(o, text::write_saliency(&file.graph, s.values()))?;
        }
        Command::Psi { input, raw, o } => {
            let (file, w) = load(input)?;
            let s = psi(&file.graph, &w)?;
            let out = if *raw {
                text::write_graph(&file.graph, &s.to_raw(&w))
            } else {
                text::write_saliency(&file.graph, s.values())
            };
            write(o, out)?;
        }
        Command::CheckSaliency { input } => {
            let (file, w) = load(input)?;
            if !is_saliency_map(&file.graph, &w)? {
                eprintln!("not a saliency map: psi lowers at least one edge");
                return Ok(Outcome::NegativeCheck);
            }
        }
        Command::Mst { input, as_graph, o } => {
            let (file, w) = load(input)?;
            let tree = kruskal(&file.graph, &w)?;
            let out = if *as_graph {
                text::write_subgraph(&file.graph, &file.raw, tree.edges())
            } else {
                text::write_edge_list(tree.edges())
            };
            write(o, out)?;
        }
        Command::CheckMst { input, tree } => {
            let (file, w) = load(input)?;
            let edges = text::parse_edge_list(&read_text(tree)?, file.graph.edge_count())
                .with_context(|| tree.display().to_string())?;
            let candidate = SpanningSubgraph::new(&file.graph, edges)?;
            match check_mst_via_qfz(&file.graph, &w, &candidate) {
                Ok(true) => {}
                Ok(false) => {
                    eprintln!("not a minimum spanning tree");
                    return Ok(Outcome::NegativeCheck);
                }
                Err(Error::NotSpanning { components }) => {
                    eprintln!("not a minimum spanning tree: candidate leaves {components} components");
                    return Ok(Outcome::NegativeCheck);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::ImageGraph { image, adjacency, o } => {
            let img = read_image(image)?;
            if img.pixels().len() == 1 {
                eprintln!("warning: 1x1 image, the graph has no edges");
            }
            write(o, image_graph_text(&img, (*adjacency).into())?)?;
        }
        Command::Render { image, saliency, format, o } => {
            let img = read_image(image)?;
            let bytes = render_bytes(&img, &read_text(saliency)?, (*format).into())
                .with_context(|| saliency.display().to_string())?;
            write(o, bytes)?;
        }
        Command::Verify { input } => {
            let (file, w) = load(input)?;
            let checks = verify::run(&file.graph, &w)?;
            for c in &checks {
                println!("{c}");
            }
            if checks.iter().any(|c| c.status == Status::Fail) {
                return Ok(Outcome::NegativeCheck);
            }
        }
    }
    Ok(Outcome::Success)
}
