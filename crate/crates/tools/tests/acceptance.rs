//! Acceptance suite. Runs every criterion at its fixed threshold and prints
//! one `PASS`/`FAIL` line each; exits non-zero if any criterion fails.
//! Lines starting with `info` carry the measurements behind a verdict.

use std::hint::black_box;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qfz_core::oracle::{lca_naive, minimality_probe, qfz_naive, saliency_naive, spanning_tree_enumerate};
use qfz_core::{
    check_mst_via_qfz, hierarchy_equal, image_to_graph, kruskal, normalize_weights, psi, qfz, render_saliency,
    saliency_of_hierarchy, Adjacency, Dendrogram, Graph, GrayImage, LcaIndex, SpanningSubgraph, WeightMap,
};
use qfz_tools::pgm::{self, PgmFormat};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

struct Instance {
    graph: Graph,
    weights: WeightMap,
}

/// Connected graph on `n` vertices: random recursive tree plus each other
/// pair with probability `density`; edges shuffled.
fn random_graph(rng: &mut StdRng, n: usize, density: f64) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let tree = edges.len();
    for x in (0..n).filter(|_| density > 0.0) {
        for y in x + 1..n {
            if !edges[..tree].contains(&(x, y)) && rng.gen_bool(density) {
                edges.push(if rng.gen() { (x, y) } else { (y, x) });
            }
        }
    }
    edges.shuffle(rng);
    Graph::new(n, &edges).unwrap()
}

/// Raw weights drawn from a palette of `1..=m` random reals, so ties are
/// common.
fn random_weights(rng: &mut StdRng, graph: &Graph) -> WeightMap {
    let m = graph.edge_count().max(1);
    let palette: Vec<f64> = (0..rng.gen_range(1..=m)).map(|_| rng.gen_range(0.0..100.0)).collect();
    let raw: Vec<f64> = (0..graph.edge_count()).map(|_| *palette.choose(rng).unwrap()).collect();
    normalize_weights(graph, &raw).unwrap()
}

fn random_corpus(seed: u64, count: usize, vertices: std::ops::RangeInclusive<usize>) -> Vec<Instance> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(vertices.clone());
            let density = rng.gen_range(0.0..=1.0);
            let graph = random_graph(&mut rng, n, density);
            let weights = random_weights(&mut rng, &graph);
            Instance { graph, weights }
        })
        .collect()
}

struct Report {
    failed: usize,
}

impl Report {
    fn verdict(&mut self, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn info(msg: impl AsRef<str>) {
    println!("info   {}", msg.as_ref());
}

fn secs(d: Duration) -> String {
    format!("{:.3} s", d.as_secs_f64())
}

fn saliency_weights(inst: &Instance) -> WeightMap {
    psi(&inst.graph, &inst.weights).unwrap().to_weight_map(&inst.graph).unwrap()
}

fn round_trip(report: &mut Report, corpus: &[Instance]) {
    let start = Instant::now();
    let mut failures = 0;
    for inst in corpus {
        let h = qfz(&inst.graph, &inst.weights, None).unwrap();
        let s = saliency_weights(inst);
        let same_hierarchy = hierarchy_equal(&qfz(&inst.graph, &s, None).unwrap(), &h).unwrap();
        let idempotent = psi(&inst.graph, &s).unwrap().values() == s.ranks();
        failures += usize::from(!(same_hierarchy && idempotent));
    }
    let t = start.elapsed();
    report.verdict(
        "round-trip",
        failures == 0 && t < Duration::from_secs(10),
        format!("{} graphs, {failures} failures, {} (limit 10 s)", corpus.len(), secs(t)),
    );
}

fn minimality(report: &mut Report, corpus: &[Instance]) {
    let start = Instant::now();
    let (mut failures, mut probes) = (0, 0);
    for inst in corpus {
        let h = qfz(&inst.graph, &inst.weights, None).unwrap();
        let s = saliency_weights(inst);
        let mut ok = minimality_probe(&inst.graph, &s).unwrap().is_empty();
        for e in 0..s.len() {
            if s.ranks()[e] == 0 {
                continue;
            }
            let mut lowered = s.ranks().to_vec();
            lowered[e] -= 1;
            let lowered = WeightMap::from_ranks(&inst.graph, lowered).unwrap();
            ok &= !hierarchy_equal(&qfz(&inst.graph, &lowered, None).unwrap(), &h).unwrap();
            probes += 1;
        }
        failures += usize::from(!ok);
    }
    let t = start.elapsed();
    report.verdict(
        "saliency-minimality",
        failures == 0 && t < Duration::from_secs(30),
        format!("{} graphs, {probes} decrements, {failures} failures, {} (limit 30 s)", corpus.len(), secs(t)),
    );
}

/// Every connected simple graph on vertex set `0..n`, edges in
/// lexicographic pair order.
fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    (0u32..1 << pairs.len())
        .filter_map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            Graph::new(n, &edges).ok()
        })
        .collect()
}

/// Does the hierarchy test accept exactly the minimum-weight spanning trees?
fn mst_agreement(graph: &Graph, weights: &WeightMap) -> (bool, usize) {
    let trees = spanning_tree_enumerate(graph, weights).unwrap();
    let best = trees.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
    let tol = 1e-9 * best.abs().max(1.0);
    let agree = trees.iter().all(|(edges, total)| {
        let candidate = SpanningSubgraph::new(graph, edges.clone()).unwrap();
        check_mst_via_qfz(graph, weights, &candidate).unwrap() == (*total <= best + tol)
    });
    (agree, trees.len())
}

fn mst_characterization(report: &mut Report, corpus: &[Instance]) {
    let start = Instant::now();
    let preserved = corpus
        .iter()
        .filter(|inst| {
            let mst = kruskal(&inst.graph, &inst.weights).unwrap();
            let full = qfz(&inst.graph, &inst.weights, None).unwrap();
            hierarchy_equal(&qfz(&inst.graph, &inst.weights, Some(mst.edges())).unwrap(), &full).unwrap()
        })
        .count();

    let mut family: Vec<(Graph, WeightMap)> = Vec::new();
    for n in 1..=5 {
        for graph in all_connected_graphs(n) {
            let m = graph.edge_count();
            let tie_heavy: [Vec<f64>; 3] = [
                vec![1.0; m],
                (0..m).map(|i| (i % 2) as f64).collect(),
                (0..m).map(|i| (m - i) as f64).collect(),
            ];
            for raw in tie_heavy {
                let w = normalize_weights(&graph, &raw).unwrap();
                family.push((graph.clone(), w));
            }
        }
    }
    let exhaustive = family.len();
    for inst in random_corpus(0xC3, 200, 2..=7) {
        family.push((inst.graph, inst.weights));
    }
    let (mut disagreements, mut trees) = (0, 0);
    for (graph, w) in &family {
        let (agree, count) = mst_agreement(graph, w);
        disagreements += usize::from(!agree);
        trees += count;
    }
    let t = start.elapsed();
    report.verdict(
        "mst-characterization",
        preserved == corpus.len() && disagreements == 0 && t < Duration::from_secs(120),
        format!(
            "hierarchy kept by kruskal on {preserved}/{} graphs; {} weighted graphs ({exhaustive} exhaustive, \
             |V| <= 5, 3 tie patterns each; 200 random, |V| <= 7), {trees} spanning trees, \
             {disagreements} disagreements, {} (limit 120 s)",
            corpus.len(),
            family.len(),
            secs(t)
        ),
    );
}

fn oracle_equivalence(report: &mut Report) {
    let corpus = random_corpus(0xC4, 600, 1..=8);
    let mut failures = 0;
    for inst in &corpus {
        let d = qfz(&inst.graph, &inst.weights, None).unwrap();
        let naive = qfz_naive(&inst.graph, &inst.weights).unwrap();
        let partitions_match = naive.iter().enumerate().all(|(l, p)| d.partition_at(l).unwrap() == *p);
        let saliency_match = saliency_of_hierarchy(&d, &inst.graph).unwrap().values()
            == saliency_naive(&inst.graph, &naive).unwrap();
        failures += usize::from(!(partitions_match && saliency_match));
    }
    report.verdict(
        "oracle-equivalence",
        failures == 0,
        format!("{} graphs with |V| <= 8, {failures} mismatches", corpus.len()),
    );
}

fn opening_properties(report: &mut Report) {
    let mut rng = StdRng::seed_from_u64(0xC5);
    let corpus = random_corpus(0xC5, 600, 2..=16);
    let below = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut failures = 0;
    for inst in &corpus {
        let w = &inst.weights;
        let lower: Vec<u32> = w.ranks().iter().map(|&r| rng.gen_range(0..=r)).collect();
        let lower = WeightMap::from_ranks(&inst.graph, lower).unwrap();
        let (sw, sl) = (psi(&inst.graph, w).unwrap(), psi(&inst.graph, &lower).unwrap());
        let anti_extensive = below(sw.values(), w.ranks()) && below(sl.values(), lower.ranks());
        let idempotent = [&sw, &sl].iter().all(|s| {
            let again = psi(&inst.graph, &s.to_weight_map(&inst.graph).unwrap()).unwrap();
            again == **s
        });
        let increasing = below(sl.values(), sw.values());
        failures += usize::from(!(anti_extensive && idempotent && increasing));
    }
    report.verdict(
        "opening-properties",
        failures == 0,
        format!("{} comparable pairs w' <= w, {failures} failures", corpus.len()),
    );
}

fn random_image(rng: &mut StdRng, side: usize) -> GrayImage {
    let pixels = (0..side * side).map(|_| rng.gen_range(0..=255)).collect();
    GrayImage::new(side, side, 255, pixels).unwrap()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn scaling(report: &mut Report) {
    let mut rng = StdRng::seed_from_u64(0xC6);
    let mut times = Vec::new();
    for side in [512, 1024, 2048] {
        let pg = image_to_graph(&random_image(&mut rng, side), Adjacency::Four).unwrap();
        let runs: Vec<f64> = (0..3)
            .map(|_| {
                let start = Instant::now();
                black_box(psi(&pg.graph, &pg.weights).unwrap());
                start.elapsed().as_secs_f64()
            })
            .collect();
        let t = median(runs);
        info(format!("psi on {side}x{side} grid ({} edges): {t:.3} s, {:.1} ns/pixel", pg.graph.edge_count(), t * 1e9 / (side * side) as f64));
        times.push(t);
    }
    let ratios = [times[1] / times[0], times[2] / times[1]];
    let ok = ratios.iter().all(|&r| r <= 2.6) && times[1] < 5.0;
    report.verdict(
        "psi-scaling",
        ok,
        format!(
            "growth per 4x pixels {:.2}x and {:.2}x (limit 2.6x), 1 MP in {:.3} s (limit 5 s)",
            ratios[0], ratios[1], times[1]
        ),
    );
}

/// Dendrogram with about `nodes` nodes: a random tree graph with distinct
/// weights merges one pair per level, giving `2n - 1` nodes.
fn binary_dendrogram(rng: &mut StdRng, nodes: usize) -> Dendrogram {
    let n = nodes / 2 + 1;
    let graph = random_graph(rng, n, 0.0);
    let mut ranks: Vec<u32> = (0..graph.edge_count() as u32).collect();
    ranks.shuffle(rng);
    qfz(&graph, &WeightMap::from_ranks(&graph, ranks).unwrap(), None).unwrap()
}

fn lca(report: &mut Report) {
    let mut rng = StdRng::seed_from_u64(0xC7);
    let mut mismatches = 0;
    let mut queries = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=120);
        let density = rng.gen_range(0.0..0.3);
        let graph = random_graph(&mut rng, n, density);
        let d = qfz(&graph, &random_weights(&mut rng, &graph), None).unwrap();
        let index = LcaIndex::new(&d);
        for x in 0..d.node_count() {
            for y in 0..d.node_count() {
                mismatches += usize::from(index.lca(x, y) != lca_naive(&d, x, y));
                queries += 1;
            }
        }
    }

    const QUERIES: usize = 1 << 21;
    let mut means = Vec::new();
    for nodes in [1_000, 10_000, 100_000, 1_000_000] {
        let d = binary_dendrogram(&mut rng, nodes);
        let index = LcaIndex::new(&d);
        let count = d.node_count();
        let pairs: Vec<(u32, u32)> =
            (0..QUERIES).map(|_| (rng.gen_range(0..count) as u32, rng.gen_range(0..count) as u32)).collect();
        let per_query = |f: &dyn Fn(usize, usize) -> usize| {
            let runs: Vec<f64> = (0..3)
                .map(|_| {
                    let start = Instant::now();
                    let mut acc = 0usize;
                    for &(x, y) in &pairs {
                        acc = acc.wrapping_add(f(x as usize, y as usize));
                    }
                    black_box(acc);
                    start.elapsed().as_secs_f64() * 1e9 / QUERIES as f64
                })
                .collect();
            median(runs)
        };
        let mean = per_query(&|x, y| index.lca(x, y));
        let table: Vec<u64> = (0..2 * count as u64).collect();
        let baseline = per_query(&|x, _| table[2 * x] as usize);
        info(format!(
            "lca on {count} nodes: {mean:.1} ns/query (one random read from a table of equal size: {baseline:.1} ns)"
        ));
        means.push(mean);
    }
    let mid = median(means.clone());
    let spread = means.iter().map(|m| (m / mid - 1.0).abs()).fold(0.0, f64::max);
    report.verdict(
        "lca",
        mismatches == 0 && spread <= 0.2,
        format!(
            "{queries} queries on 100 random dendrograms, {mismatches} mismatches; mean query time \
             {} ns across 1e3..1e6 nodes, max deviation {:.0}% from median (limit 20%)",
            means.iter().map(|m| format!("{m:.1}")).collect::<Vec<_>>().join("/"),
            spread * 100.0
        ),
    );
}

fn synthetic_image() -> GrayImage {
    // flat blocks, a ramp and a ring: plenty of ties and nested regions
    let side = 64;
    let pixels = (0..side * side)
        .map(|i| {
            let (x, y) = ((i % side) as i64, (i / side) as i64);
            let ring = (x - 40).pow(2) + (y - 24).pow(2);
            let v = if (100..=225).contains(&ring) { 200 } else { (x / 16) * 30 + (y / 16) * 8 + (x * y) % 3 };
            v as u16
        })
        .collect();
    GrayImage::new(side, side, 255, pixels).unwrap()
}

fn cli_pipeline(dir: &Path, image: &GrayImage) -> Vec<u8> {
    let qfz = env!("CARGO_BIN_EXE_qfz");
    std::fs::create_dir_all(dir).unwrap();
    let (img, g, s, out) = (dir.join("in.pgm"), dir.join("g.txt"), dir.join("s.txt"), dir.join("out.pgm"));
    std::fs::write(&img, pgm::write_pgm(image, PgmFormat::P2)).unwrap();
    let steps: [&[&dyn AsRef<std::ffi::OsStr>]; 3] = [
        &[&"image-graph", &img, &"--adjacency", &"4", &"-o", &g],
        &[&"psi", &g, &"-o", &s],
        &[&"render", &img, &s, &"-o", &out],
    ];
    for args in steps {
        let status = Command::new(qfz).args(args.iter().map(|a| a.as_ref())).status().unwrap();
        assert!(status.success(), "qfz step failed");
    }
    std::fs::read(out).unwrap()
}

fn in_process(image: &GrayImage) -> (Vec<u8>, GrayImage) {
    let pg = image_to_graph(image, Adjacency::Four).unwrap();
    let s = psi(&pg.graph, &pg.weights).unwrap();
    let rendered = render_saliency(s.values(), &pg.meta).unwrap();
    let comment = format!("max_saliency {}", rendered.max_saliency);
    (pgm::write_pgm_with_comment(&rendered.image, PgmFormat::P2, &comment), rendered.image)
}

fn pixel_pipeline(report: &mut Report) {
    let tmp = tempfile::tempdir().unwrap();
    let image = synthetic_image();
    let first = cli_pipeline(&tmp.path().join("a"), &image);
    let second = cli_pipeline(&tmp.path().join("b"), &image);
    let (library, _) = in_process(&image);

    let flat = GrayImage::new(64, 64, 255, vec![77; 64 * 64]).unwrap();
    let flat_cli = pgm::read_pgm(&cli_pipeline(&tmp.path().join("c"), &flat)).unwrap();
    let (_, flat_lib) = in_process(&flat);
    let all_zero = |img: &GrayImage| img.pixels().iter().all(|&p| p == 0);

    let ok = first == second && first == library && all_zero(&flat_cli) && all_zero(&flat_lib);
    report.verdict(
        "pixel-pipeline",
        ok,
        format!(
            "64x64 render {} bytes; runs identical: {}; matches library: {}; constant image all zero: {}",
            first.len(),
            first == second,
            first == library,
            all_zero(&flat_cli) && all_zero(&flat_lib)
        ),
    );
}

fn main() -> ExitCode {
    let mut report = Report { failed: 0 };
    let corpus = random_corpus(0xC1, 1000, 2..=16);
    round_trip(&mut report, &corpus);
    minimality(&mut report, &corpus);
    mst_characterization(&mut report, &corpus);
    oracle_equivalence(&mut report);
    opening_properties(&mut report);
    scaling(&mut report);
    lca(&mut report);
    pixel_pipeline(&mut report);
    if report.failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", report.failed);
        ExitCode::FAILURE
    }
}
