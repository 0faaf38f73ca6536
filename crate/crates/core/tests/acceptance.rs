//! Acceptance run: prints one PASS/FAIL line per criterion and a summary.
//!
//!     cargo test -p memnet --test acceptance              # report
//!     cargo test -p memnet --test acceptance -- --strict  # exit 1 on any FAIL
//!
//! Without `--strict` the run is a report, so a failing criterion does not
//! stop `cargo test --workspace` before the remaining test binaries run.
//!
//! Criterion 3 trains the shipped `configs/paper.cfg` model end to end (about
//! ten minutes on one core); criteria 4 and 7 reuse that model.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use memnet::circuit::{assert_no_crossover, output_tree_gene_indices};
use memnet::codes::{hamming, Decoder};
use memnet::evolution::{
    random_rset, refine_stage_observed, selection_stage, stream, train, train_with_log,
    two_point_crossover_at, Candidate, GeneticConfig, RefineConfig, RefineEvent, SelectionConfig,
    StreamTag, TrainConfig, ValueRange,
};
use memnet::harness::{
    evaluate, inject_faults, model_from_text, model_to_text, save_model, FaultKind, FaultModel,
    TestProtocol,
};
use memnet::imaging::{apply_salt_pepper, deform, rotate, sample_params, scale, shift};
use memnet::netlist::{self_check, Netlist};
use memnet::{
    ArchitectureSpec64, Bitmap, Code, Codebook, DeformationDistribution, DeformationParams,
    GlyphSet, Network64, Resistance, Rset64, RunConfig, TrainedModel64,
};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn report(n: usize, name: &str, started: Instant, o: &Outcome) -> bool {
    println!(
        "{} criterion {n} ({name}): {} [{:.1}s]",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail,
        started.elapsed().as_secs_f64()
    );
    o.pass
}

fn default_arch() -> ArchitectureSpec64 {
    ArchitectureSpec64::new(1296, vec![6, 6, 3]).unwrap()
}

// ---------------------------------------------------------------- 1

fn architecture_fidelity() -> Outcome {
    let arch = default_arch();
    let mut problems = Vec::new();
    if arch.layer_sizes() != [216, 36, 12] {
        problems.push(format!("layer sizes {:?}", arch.layer_sizes()));
    }
    if arch.rset_len() != 1812 {
        problems.push(format!("rset_len {}", arch.rset_len()));
    }
    if arch.n_cells() != 264 {
        problems.push(format!("{} cells", arch.n_cells()));
    }
    let wiring = assert_no_crossover(&arch);
    if !wiring.is_ok() {
        problems.push(format!("wiring violations {:?}", wiring.violations));
    }
    let mut seen = BTreeSet::new();
    for k in 0..12 {
        let genes = output_tree_gene_indices(&arch, k).unwrap();
        if genes.len() != 151 {
            problems.push(format!("tree {k} has {} genes", genes.len()));
        }
        for g in genes {
            if !seen.insert(g) {
                problems.push(format!("gene {g} shared between trees"));
            }
        }
    }
    if seen.len() != 1812 {
        problems.push(format!("trees cover {} genes", seen.len()));
    }
    if problems.is_empty() {
        outcome(
            true,
            "[216, 36, 12], 1812 resistors, 264 cells, 12 disjoint trees x 151 genes",
        )
    } else {
        outcome(false, problems.join("; "))
    }
}

// ---------------------------------------------------------------- 2

/// Modified nodal analysis of the whole network with ideal inverters.
/// Inverter outputs are voltage sources whose value depends on the solution,
/// so the linear system is re-solved until the inverter states stop changing.
fn nodal_solve(arch: &ArchitectureSpec64, rset: &Rset64, inputs: &[bool]) -> (Vec<f64>, Vec<bool>) {
    let vdd = arch.logic_high();
    let n = arch.n_cells();
    let mut offsets = vec![0];
    for &s in arch.layer_sizes() {
        offsets.push(offsets.last().unwrap() + s);
    }
    let mut states = vec![false; n];
    for _ in 0..=arch.n_layers() + 1 {
        let mut g = DMatrix::<f64>::zeros(n, n);
        let mut i_src = DVector::<f64>::zeros(n);
        for layer in 0..arch.n_layers() {
            let fan = arch.fan_ins()[layer];
            for cell in 0..arch.layer_sizes()[layer] {
                let row = offsets[layer] + cell;
                let genes = arch.cell_genes(layer, cell);
                for k in 0..fan {
                    let cond = rset.get(genes.start + k).conductance();
                    let src = cell * fan + k;
                    let v = if layer == 0 {
                        if inputs[src] {
                            vdd
                        } else {
                            0.0
                        }
                    } else if states[offsets[layer - 1] + src] {
                        vdd
                    } else {
                        0.0
                    };
                    g[(row, row)] += cond;
                    i_src[row] += cond * v;
                }
                g[(row, row)] += rset.get(genes.end - 1).conductance();
                if g[(row, row)] == 0.0 {
                    // Floating node (every resistor open): pinned to ground.
                    g[(row, row)] = 1.0;
                }
            }
        }
        let v = g
            .lu()
            .solve(&i_src)
            .expect("nonsingular conductance matrix");
        let next: Vec<bool> = v.iter().map(|&x| x < arch.threshold()).collect();
        if next == states {
            return (v.iter().copied().collect(), states);
        }
        states = next;
    }
    panic!("inverter states did not settle");
}

fn random_small_arch<R: Rng>(rng: &mut R) -> ArchitectureSpec64 {
    loop {
        let layers = rng.random_range(1..=3);
        let fan_ins: Vec<usize> = (0..layers).map(|_| rng.random_range(1..=5)).collect();
        let outputs = rng.random_range(1..=3);
        let n_inputs = fan_ins.iter().product::<usize>() * outputs;
        let vdd = rng.random_range(0.5..3.0);
        let vt = vdd * rng.random_range(0.2..0.8);
        let arch = ArchitectureSpec64::with_levels(n_inputs, fan_ins, vdd, vt).unwrap();
        if arch.rset_len() <= 50 {
            return arch;
        }
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = stream(2, StreamTag::SelectionDraw, 0);
    let range = ValueRange::default();
    let mut worst = 0.0f64;
    for trial in 0..1000 {
        let arch = random_small_arch(&mut rng);
        let mut rset = random_rset(&arch, &range, &mut rng);
        for g in 0..rset.len() {
            if rng.random_bool(0.03) {
                rset.set(g, Resistance::open());
            }
        }
        let net = Network64::new(arch.clone(), rset.clone()).unwrap();
        for _ in 0..4 {
            let x: Vec<bool> = (0..arch.n_inputs()).map(|_| rng.random_bool(0.5)).collect();
            let (v_ref, bits_ref) = nodal_solve(&arch, &rset, &x);
            let v: Vec<f64> = net.node_voltages(&x).unwrap().concat();
            for (cell, (a, b)) in v.iter().zip(&v_ref).enumerate() {
                let scale = a.abs().max(b.abs());
                let rel = if scale == 0.0 {
                    0.0
                } else {
                    (a - b).abs() / scale
                };
                worst = worst.max(rel);
                if rel > 1e-9 {
                    return outcome(
                        false,
                        format!("network {trial} cell {cell}: {a} vs nodal {b}"),
                    );
                }
            }
            let out = net.forward(&x).unwrap();
            let n_out = arch.n_outputs();
            if out.bits() != &bits_ref[bits_ref.len() - n_out..] {
                return outcome(false, format!("network {trial}: output bits differ"));
            }
        }
    }
    outcome(
        true,
        format!("1000 networks x 4 inputs, max relative error {worst:.1e}, bits identical"),
    )
}

// ---------------------------------------------------------------- 3

fn shipped_config() -> RunConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/paper.cfg");
    RunConfig::load(&path).expect("configs/paper.cfg loads")
}

fn full_scale_training(cfg: &RunConfig) -> (Outcome, Option<TrainedModel64>) {
    let arch = cfg.arch::<f64>().unwrap();
    let glyphs = GlyphSet::builtin();
    let started = Instant::now();
    let (model, log) = match train_with_log(&arch, &glyphs, &cfg.train_config().unwrap(), cfg.seed)
    {
        Ok(r) => r,
        Err(e) => return (outcome(false, format!("training failed: {e}")), None),
    };
    let elapsed = started.elapsed();
    let out_dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    let _ = std::fs::create_dir_all(&out_dir);
    let _ = save_model(&model, &out_dir.join("full_model.txt"));
    let _ = std::fs::write(out_dir.join("full_training_log.txt"), log.to_text());

    let spacing = model.codebook.min_pairwise_distance().unwrap();
    let pass = model.meta.converged
        && model.meta.final_abe == 0.0
        && spacing >= 3
        && elapsed <= Duration::from_secs(2 * 3600);
    let detail = format!(
        "converged {}, training-distribution ABE {:.3} (need 0), min spacing {spacing} (need >= 3), \
         {} refine iterations, {:.0}s (budget 7200s); model in {}",
        model.meta.converged,
        model.meta.final_abe,
        model.meta.iterations,
        elapsed.as_secs_f64(),
        out_dir.display()
    );
    (outcome(pass, detail), Some(model))
}

// ---------------------------------------------------------------- 4

fn test_protocol(model: Option<&TrainedModel64>, cfg: &RunConfig) -> Outcome {
    let Some(model) = model else {
        return outcome(false, "no trained model to evaluate");
    };
    let glyphs = GlyphSet::builtin();
    let protocol = TestProtocol {
        n_sets: 2000,
        ..cfg.test.clone()
    };
    let r = evaluate(model, &glyphs, &protocol, cfg.seed).unwrap();
    let pass = r.accuracy >= 0.99 && r.abe < 0.5 && r.runtime <= Duration::from_secs(600);
    let mut detail = format!(
        "26x2000: accuracy {:.4} (need >= 0.99), ABE {:.3} (need < 0.5), max bit error {}, \
         rejects {}, {:.1}s",
        r.accuracy,
        r.abe,
        r.max_bit_error,
        r.rejects,
        r.runtime.as_secs_f64()
    );
    let full = evaluate(model, &glyphs, &cfg.test, cfg.seed).unwrap();
    detail.push_str(&format!(
        "; extended 26x{}: accuracy {:.4}, ABE {:.3}, max bit error {} (not gating)",
        cfg.test.n_sets, full.accuracy, full.abe, full.max_bit_error
    ));
    outcome(pass, detail)
}

// ---------------------------------------------------------------- 5

fn check(failures: &mut Vec<String>, ok: bool, what: &str) {
    if !ok {
        failures.push(what.to_string());
    }
}

fn random_bitmap<R: Rng>(rng: &mut R) -> Bitmap {
    Bitmap::from_pixels(36, 36, (0..1296).map(|_| rng.random_bool(0.3)).collect()).unwrap()
}

fn deformation_identities(f: &mut Vec<String>) {
    let glyphs = GlyphSet::builtin();
    let mut rng = stream(5, StreamTag::Evaluate, 0);
    for (i, g) in glyphs.bitmaps().iter().enumerate() {
        let r = random_bitmap(&mut rng);
        for b in [g, &r] {
            check(
                f,
                apply_salt_pepper(b, 0.0, &mut rng).unwrap() == *b,
                "noise p=0",
            );
            check(f, rotate(b, 0.0) == *b, "rotation 0");
            check(f, scale(b, 1.0).unwrap() == *b, "scale 1");
            check(f, shift(b, 0, 0) == *b, "shift (0,0)");
            check(
                f,
                rotate(&rotate(b, 180.0), 180.0) == *b,
                "180 + 180 rotation",
            );
            check(
                f,
                deform(b, &DeformationParams::IDENTITY, &mut rng).unwrap() == *b,
                "identity deformation",
            );
        }
        if i == 0 {
            check(
                f,
                rotate(&rotate(&rotate(&rotate(g, 90.0), 90.0), 90.0), 90.0) == *g,
                "4 x 90 rotation",
            );
        }
    }
}

fn truncation(f: &mut Vec<String>) {
    let dist = DeformationDistribution::TEST;
    let mut rng = stream(5, StreamTag::Evaluate, 1);
    let max_shift = (3.0 * dist.shift_px).floor() as i32;
    for _ in 0..100_000 {
        let p = sample_params(&dist, &mut rng);
        let ok = p.noise_p <= 3.0 * dist.noise
            && p.rotation_deg.abs() <= 3.0 * dist.rotation_deg
            && (p.scale - 1.0).abs() <= 3.0 * dist.scale
            && p.shift_x.abs() <= max_shift
            && p.shift_y.abs() <= max_shift;
        if !ok {
            f.push(format!("draw outside 3 sigma: {p:?}"));
            return;
        }
    }
}

fn crossover(f: &mut Vec<String>) {
    let mut rng = stream(5, StreamTag::Genetic, 0);
    let arch = default_arch();
    let range = ValueRange::default();
    for _ in 0..200 {
        let a = random_rset(&arch, &range, &mut rng);
        let b = random_rset(&arch, &range, &mut rng);
        let i = rng.random_range(0..=a.len());
        let j = rng.random_range(i..=a.len());
        let c = two_point_crossover_at(&a, &b, i, j).unwrap();
        let pure = (0..a.len()).all(|g| {
            c.get(g)
                == if (i..j).contains(&g) {
                    b.get(g)
                } else {
                    a.get(g)
                }
        });
        check(
            f,
            pure,
            "crossover child gene not taken from the matching parent",
        );
        check(
            f,
            two_point_crossover_at(&a, &b, i, i).unwrap() == a,
            "empty segment is a clone of a",
        );
        check(
            f,
            two_point_crossover_at(&a, &b, 0, a.len()).unwrap() == b,
            "full segment is a clone of b",
        );
        check(
            f,
            two_point_crossover_at(&a, &a, i, j).unwrap() == a,
            "self-cross is a clone",
        );
    }
}

fn refine_locality(f: &mut Vec<String>) {
    let arch = default_arch();
    let glyphs = GlyphSet::builtin();
    let range = ValueRange::default();
    let sel = SelectionConfig {
        pool_target: 1,
        keep: 1,
        trials_per_char: 1,
        ..SelectionConfig::default()
    };
    let start: Candidate<f64> = selection_stage(&arch, &range, &glyphs, &sel, 55)
        .unwrap()
        .remove(0);
    let cfg = RefineConfig {
        max_iters: 300,
        ..RefineConfig::default()
    };
    let trees: Vec<BTreeSet<usize>> = (0..12)
        .map(|k| {
            output_tree_gene_indices(&arch, k)
                .unwrap()
                .into_iter()
                .collect()
        })
        .collect();
    let mut touched = BTreeSet::new();
    let mut violations = 0;
    let mut worse = 0;
    let out = refine_stage_observed(&start, &arch, &range, &glyphs, &cfg, 56, &mut |e| {
        if let RefineEvent::Move {
            outputs,
            changed_genes,
            accepted,
            abe_before,
            abe_after,
            ..
        } = e
        {
            for g in changed_genes.iter() {
                if !outputs.iter().any(|&k| trees[k].contains(g)) {
                    violations += 1;
                }
            }
            if *accepted {
                touched.extend(changed_genes.iter().copied());
                if abe_after > abe_before {
                    worse += 1;
                }
            }
        }
    })
    .unwrap();
    check(
        f,
        violations == 0,
        "refine changed genes outside the selected trees",
    );
    check(
        f,
        worse == 0,
        "refine accepted a move that raised the batch ABE",
    );
    let moved: BTreeSet<usize> = (0..arch.rset_len())
        .filter(|&g| out.candidate.rset.get(g) != start.rset.get(g))
        .collect();
    check(
        f,
        moved.is_subset(&touched),
        "refined Rset differs outside reported moves",
    );
}

/// 26 codes of 12 bits with pairwise distance >= 3 (greedy lexicode).
fn spaced_codebook() -> Codebook {
    let mut words: Vec<u32> = Vec::new();
    for w in 0u32..4096 {
        if words.iter().all(|&c| (c ^ w).count_ones() >= 3) {
            words.push(w);
        }
        if words.len() == 26 {
            break;
        }
    }
    Codebook::new(words.iter().map(|&w| word_code(w)).collect()).unwrap()
}

fn word_code(w: u32) -> Code {
    Code::new((0..12).map(|b| w >> b & 1 == 1).collect())
}

fn decoding(f: &mut Vec<String>) {
    let cb = spaced_codebook();
    check(
        f,
        cb.min_pairwise_distance().unwrap() >= 3,
        "lexicode spacing",
    );
    let dec: Decoder<'_> = cb.decoder(1).unwrap();
    for w in 0u32..4096 {
        let x = word_code(w);
        let expect = ('A'..='Z').find(|&c| hamming(&x, cb.main_code(c).unwrap()).unwrap() <= 1);
        if dec.decode(&x).unwrap() != expect || cb.decode(&x).unwrap() != expect {
            f.push(format!("decode of {x} wrong"));
            return;
        }
    }
}

fn metric_laws(f: &mut Vec<String>) {
    let mut rng = stream(5, StreamTag::Evaluate, 2);
    for _ in 0..10_000 {
        let mut code = || Code::new((0..12).map(|_| rng.random_bool(0.5)).collect());
        let (a, b, c) = (code(), code(), code());
        let d = |x: &Code, y: &Code| hamming(x, y).unwrap();
        let ok = d(&a, &a) == 0
            && d(&a, &b) == d(&b, &a)
            && (d(&a, &b) == 0) == (a == b)
            && d(&a, &c) <= d(&a, &b) + d(&b, &c)
            && d(&a, &a.complement()) == 12;
        if !ok {
            f.push(format!("metric law broken for {a}, {b}, {c}"));
            return;
        }
    }
    check(
        f,
        hamming(&Code::zeros(3), &Code::zeros(4)).is_err(),
        "length mismatch rejected",
    );
}

fn small_train_config() -> TrainConfig<f64> {
    TrainConfig {
        range: ValueRange::default(),
        selection: SelectionConfig {
            pool_target: 10,
            trials_per_char: 1,
            ..SelectionConfig::default()
        },
        genetic: GeneticConfig {
            offspring: 20,
            ..GeneticConfig::default()
        },
        refine: RefineConfig {
            train_dist: DeformationDistribution::IDENTITY,
            batch: 1,
            immune_batches: 1,
            immune_batch: 1,
            max_iters: 300,
            ..RefineConfig::default()
        },
    }
}

fn round_trip_and_determinism(f: &mut Vec<String>) {
    let arch = ArchitectureSpec64::new(1296, vec![6, 6]).unwrap();
    let glyphs = GlyphSet::builtin();
    let a = train(&arch, &glyphs, &small_train_config(), 99).unwrap();
    let b = train(&arch, &glyphs, &small_train_config(), 99).unwrap();
    let (ta, tb) = (model_to_text(&a), model_to_text(&b));
    check(f, ta == tb, "two runs with one seed differ");

    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("round_trip.txt");
    save_model(&a, &path).unwrap();
    let bytes = std::fs::read_to_string(&path).unwrap();
    let back: TrainedModel64 = model_from_text(&bytes).unwrap();
    check(f, bytes == ta, "saved file differs from serialized model");
    check(
        f,
        model_to_text(&back) == bytes,
        "load + save is not byte-exact",
    );
    check(
        f,
        back.rset == a.rset && back.codebook == a.codebook,
        "loaded model differs",
    );
}

type Suite = fn(&mut Vec<String>);

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    let suites: [(&str, Suite); 7] = [
        ("deformation identities", deformation_identities),
        ("3-sigma truncation", truncation),
        ("crossover", crossover),
        ("refine locality", refine_locality),
        ("radius-1 decoding", decoding),
        ("hamming metric", metric_laws),
        ("round trip + determinism", round_trip_and_determinism),
    ];
    for (name, suite) in &suites {
        let before = failures.len();
        suite(&mut failures);
        for msg in &mut failures[before..] {
            *msg = format!("{name}: {msg}");
        }
    }
    if failures.is_empty() {
        outcome(
            true,
            format!(
                "{} suites: {}",
                suites.len(),
                suites.map(|(n, _)| n).join(", ")
            ),
        )
    } else {
        outcome(false, failures.join("; "))
    }
}

// ---------------------------------------------------------------- 6

fn fault_independence() -> Outcome {
    let arch = default_arch();
    let range = ValueRange::default();
    let mut rng = stream(6, StreamTag::Faults, 0);
    let mut tree_of = vec![0; arch.rset_len()];
    for k in 0..12 {
        for g in output_tree_gene_indices(&arch, k).unwrap() {
            tree_of[g] = k;
        }
    }
    let kinds = [FaultKind::Open, FaultKind::Short, FaultKind::RandomRevalue];
    let mut nets = Vec::new();
    for _ in 0..10 {
        let rset = random_rset(&arch, &range, &mut rng);
        nets.push(Network64::new(arch.clone(), rset).unwrap());
    }
    let glyphs = GlyphSet::builtin();
    let mut flipped_own = 0;
    for pair in 0..10_000 {
        let net = &nets[pair % nets.len()];
        let g = rng.random_range(0..arch.rset_len());
        let k = tree_of[g];
        let mut rset = net.rset().clone();
        // Inject through the fault model on a single-gene view, so every
        // fault kind goes through the same code path as the sweeps.
        let fm = FaultModel {
            kind: kinds[pair % 3],
            rate: 1.0,
        };
        let one = Rset64::new(vec![rset.get(g)]);
        rset.set(
            g,
            inject_faults(&one, &fm, &range, &mut rng).unwrap().get(0),
        );
        let faulty = Network64::new(arch.clone(), rset).unwrap();
        let x: Vec<bool> = if pair % 2 == 0 {
            (0..1296).map(|_| rng.random_bool(0.5)).collect()
        } else {
            let b = &glyphs.bitmaps()[rng.random_range(0..26)];
            apply_salt_pepper(b, 0.1, &mut rng)
                .unwrap()
                .pixels()
                .to_vec()
        };
        let (a, b) = (net.forward(&x).unwrap(), faulty.forward(&x).unwrap());
        for j in (0..12).filter(|&j| j != k) {
            if a.bit(j) != b.bit(j) {
                return outcome(
                    false,
                    format!("fault in gene {g} (tree {k}) flipped bit {j}"),
                );
            }
        }
        if a.bit(k) != b.bit(k) {
            flipped_own += 1;
        }
    }
    outcome(
        true,
        format!("10^4 single faults, no foreign bit changed ({flipped_own} flipped their own bit)"),
    )
}

// ---------------------------------------------------------------- 7

fn netlist_self_check(model: Option<&TrainedModel64>) -> Outcome {
    let net = match model {
        Some(m) => m.network().unwrap(),
        None => {
            let arch = default_arch();
            let rset = random_rset(
                &arch,
                &ValueRange::default(),
                &mut stream(7, StreamTag::SelectionDraw, 0),
            );
            Network64::new(arch, rset).unwrap()
        }
    };
    let text = Netlist::from_network(&net).to_text();
    let parsed = match Netlist::<f64>::parse(&text) {
        Ok(p) => p,
        Err(e) => return outcome(false, format!("re-parse failed: {e}")),
    };
    if (parsed.resistor_count(), parsed.inverter_count()) != (1812, 264) {
        return outcome(false, "wrong statement counts");
    }
    match self_check(&parsed, &net, 100, 7) {
        Ok(r) => outcome(
            true,
            format!(
                "1812 resistors, 264 inverters, 100 inputs, max relative error {:.1e}, bits identical",
                r.max_rel_error
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() {
    let strict = std::env::args().any(|a| a == "--strict");
    let mut failed = Vec::new();
    let mut run = |n: usize, name: &str, check: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = check();
        if !report(n, name, t, &o) {
            failed.push(n);
        }
    };

    run(1, "architecture fidelity", &mut architecture_fidelity);
    run(2, "oracle equivalence", &mut oracle_equivalence);

    let cfg = shipped_config();
    let mut model = None;
    run(3, "full-scale training", &mut || {
        let (o, m) = full_scale_training(&cfg);
        model = m;
        o
    });
    run(4, "test protocol", &mut || {
        test_protocol(model.as_ref(), &cfg)
    });
    run(5, "property suites", &mut property_suites);
    run(6, "fault independence", &mut fault_independence);
    run(7, "netlist self-check", &mut || {
        netlist_self_check(model.as_ref())
    });

    if failed.is_empty() {
        println!("acceptance: all 7 criteria PASS");
    } else {
        println!(
            "acceptance: {} of 7 criteria FAIL: {failed:?}",
            failed.len()
        );
        if strict {
            std::process::exit(1);
        }
    }
}
