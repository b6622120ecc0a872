//! One function per subcommand, each producing a [`Report`].

use std::path::PathBuf;

use lefschetz_core::bundle::{brill_noether_verdict, chern_degree, flat_combination_check, higher_chern};
use lefschetz_core::fibration::{classify_mod2_image, hodge_pairing, spin_detect};
use lefschetz_core::linalg::DEFAULT_RANK_CUTOFF;
use lefschetz_core::random::{random_diagonal_siegel, random_symplectic_mod};
use lefschetz_core::rep::{
    homplus_dimension, homplus_dimension_su2, reducibility_report, transvection_multiplicities, CommutantOptions,
    Reducibility, DEFAULT_COMMUTANT_GUARD,
};
use lefschetz_core::symplectic::sp_order_f2;
use lefschetz_core::theta_weil::{theta_factorization_check, theta_tail_bound, weil_tensor_factorization, ThetaLabel, WeilOptions};
use lefschetz_core::verlinde::{rank_level_duality_check, verlinde_rank_direct, verlinde_rank_fusion, verlinde_rank_smatrix};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::input::{read_fibration, FibrationFile};
use crate::report::Report;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GlobalOptions {
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub guard_size: Option<usize>,
    pub truncation: Option<u32>,
}

impl Default for GlobalOptions {
    fn default() -> Self {
        Self { seed: 0, tolerance: None, guard_size: None, truncation: None }
    }
}

impl GlobalOptions {
    fn weil(&self) -> WeilOptions {
        WeilOptions { guard: self.guard_size.unwrap_or(WeilOptions::default().guard) }
    }

    fn commutant(&self) -> CommutantOptions<f64> {
        CommutantOptions {
            cutoff: self.tolerance.unwrap_or(DEFAULT_RANK_CUTOFF),
            guard: self.guard_size.unwrap_or(DEFAULT_COMMUTANT_GUARD),
        }
    }
}

fn load(file: &Option<PathBuf>) -> CliResult<Option<FibrationFile>> {
    file.as_deref().map(read_fibration).transpose()
}

fn file_echo(file: &Option<FibrationFile>) -> Value {
    match file {
        None => Value::Null,
        Some(f) => json!({
            "path": f.path.display().to_string(),
            "genus": f.genus,
            "cycles": f.cycles,
            "signature": f.signature,
            "base_points": f.base_points,
            "level": f.level,
        }),
    }
}

fn require<T>(value: Option<T>, what: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("{what} is required (flag or input file)")))
}

fn to_u32(x: u64, what: &str) -> CliResult<u32> {
    u32::try_from(x).map_err(|_| CliError::Usage(format!("{what} {x} is too large")))
}

const RANK_FUSION: &str = "sewing: <0| H^g |0> with handle operator H = sum_a N_a N_a over the SU(2)_k fusion rules, exact integers";
const RANK_DIRECT: &str =
    "((k+2)/2)^(g-1) * sum_{j=1}^{k+1} sin(j pi/(k+2))^(2-2g) in double precision, rounded when the residual is below 1e-6";
const RANK_SMATRIX: &str = "sum_j S_0j^(2-2g) with S_ij = sqrt(2/(k+2)) sin((i+1)(j+1) pi/(k+2)), certified rounding";

#[derive(Debug, Clone, Default)]
pub struct VerlindeArgs {
    pub file: Option<PathBuf>,
    pub genus: Option<u32>,
    pub level: Option<u32>,
}

pub fn cmd_verlinde(args: &VerlindeArgs, _opts: &GlobalOptions) -> CliResult<Report> {
    let file = load(&args.file)?;
    let genus = match args.genus {
        Some(g) => g,
        None => to_u32(require(file.as_ref().map(|f| f.genus as u64), "--genus")?, "genus")?,
    };
    let level = match args.level {
        Some(k) => k,
        None => to_u32(require(file.as_ref().and_then(|f| f.level), "--level")?, "level")?,
    };
    let mut report = Report::new("verlinde", json!({"genus": genus, "level": level, "file": file_echo(&file)}));
    let fusion = verlinde_rank_fusion(genus, level)?;
    let certified = |r: lefschetz_core::Result<BigUint>| -> CliResult<Option<BigUint>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(lefschetz_core::Error::Precision(_)) => Ok(None),
            Err(e) => Err(e.into()),
        }
    };
    let direct = certified(verlinde_rank_direct::<f64>(genus, level))?;
    let smatrix = certified(verlinde_rank_smatrix::<f64>(genus, level))?;
    let agree = [&direct, &smatrix].iter().all(|r| r.as_ref().map_or(true, |v| *v == fusion));
    let duality = rank_level_duality_check(genus)?;
    report
        .num("rank", fusion.to_string(), RANK_FUSION)
        .num("rank_direct", direct.map(|v| v.to_string()), RANK_DIRECT)
        .num("rank_smatrix", smatrix.map(|v| v.to_string()), RANK_SMATRIX)
        .put("routes_agree", agree)
        .put("discrepancy", !agree)
        .put("level_one_equals_two_to_the_genus", duality)
        .check("routes_agree", agree)
        .check("level_one_equals_two_to_the_genus", duality);
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct SpinArgs {
    pub file: PathBuf,
}

pub fn cmd_spin(args: &SpinArgs, _opts: &GlobalOptions) -> CliResult<Report> {
    let file = read_fibration(&args.file)?;
    let fib = &file.fibration;
    let spin = spin_detect(fib)?;
    let image = classify_mod2_image(fib)?;
    let mut report = Report::new("spin", json!({"file": file_echo(&Some(file.clone()))}));
    let forms: Vec<Value> = spin
        .solution_forms
        .iter()
        .map(|q| json!({"values_on_basis": q.basis_bits().iter().map(u8::to_string).collect::<String>(), "arf": q.arf()}))
        .collect();
    let preserved: Vec<String> = image.preserved_forms.iter().map(ToString::to_string).collect();
    let exclusive = !(image.classification == lefschetz_core::ImageClass::Full && spin.spin_compatible);
    report
        .put("spin_compatible", spin.spin_compatible)
        .num(
            "spin_forms",
            forms,
            "quadratic refinements q with q(v) = 1 on every vanishing cycle, from the affine system over F2 in the values q(a_i), q(b_i)",
        )
        .num("arf_values", spin.arf_values.clone(), "Arf(q) = sum_i q(a_i) q(b_i) mod 2")
        .put("image_classification", image.classification.as_str())
        .num(
            "image_order",
            image.order,
            "breadth-first closure of the mod-2 transvections x -> x + <x, v> v (genus at most 3)",
        )
        .num("symplectic_group_order", sp_order_f2(file.genus as u32).to_string(), "|Sp_2g(F2)| = 2^(g^2) prod_{i=1}^g (4^i - 1)")
        .put("preserved_forms", preserved)
        .check("full_image_excludes_spin", exclusive);
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct ReducibilityArgs {
    pub file: PathBuf,
    pub level: Option<u64>,
}

pub fn cmd_reducibility(args: &ReducibilityArgs, opts: &GlobalOptions) -> CliResult<Report> {
    let file = read_fibration(&args.file)?;
    let level = require(args.level.or(file.level), "--level")?;
    let r = reducibility_report::<f64>(&file.fibration, level, opts.weil(), opts.commutant())?;
    let mut report = Report::new(
        "reducibility",
        json!({"file": file_echo(&Some(file.clone())), "level": level, "options": opts}),
    );
    let projector_rank = match &r.verdict {
        Reducibility::Reducible { projector_rank, .. } => *projector_rank,
        _ => None,
    };
    let projector_ok = !matches!(r.verdict, Reducibility::Reducible { .. }) || projector_rank.is_some();
    report
        .put("verdict", r.verdict.as_str())
        .num("representation_dimension", r.dim, "k^g, functions on (Z/k)^g")
        .num(
            "commutant_dimension",
            r.commutant_dimension,
            "null space of X W_i - W_i X over all Weil operators W_i, singular values below cutoff * sigma_max",
        )
        .num(
            "projector_rank",
            projector_rank,
            "spectral projector onto the top eigenvalue cluster of a non-scalar Hermitian commutant element",
        )
        .num("max_commutator_norm", r.max_commutator, "max ||X W_i - W_i X||_F over commutant basis and operators")
        .num("max_unitarity_defect", r.max_unitarity_defect, "max ||W_i^* W_i - I||_F")
        .check("witness_projector_found", projector_ok);
    Ok(report)
}

#[derive(Debug, Clone, Default)]
pub struct BundleArgs {
    pub file: Option<PathBuf>,
    pub genus: Option<u32>,
    pub level: Option<u32>,
    pub sigma: Option<i64>,
    pub delta: Option<u64>,
    pub lambda: Option<i64>,
}

pub fn cmd_bundle(args: &BundleArgs, _opts: &GlobalOptions) -> CliResult<Report> {
    let file = load(&args.file)?;
    let genus = match args.genus {
        Some(g) => g,
        None => to_u32(require(file.as_ref().map(|f| f.genus as u64), "--genus")?, "genus")?,
    };
    let level = match args.level {
        Some(k) => k,
        None => to_u32(require(file.as_ref().and_then(|f| f.level), "--level")?, "level")?,
    };
    let sigma = args.sigma.or(file.as_ref().and_then(|f| f.signature));
    let delta = args.delta.or(file.as_ref().map(|f| f.cycles.len() as u64));
    let from_signature = match (sigma, delta) {
        (Some(s), Some(d)) => Some(hodge_pairing(s, d)?.lambda),
        _ => None,
    };
    let lambda = match (args.lambda, from_signature) {
        (Some(l), Some(m)) if l != m => {
            return Err(CliError::Usage(format!("--lambda {l} disagrees with (sigma + delta)/4 = {m}")));
        }
        (Some(l), _) => l,
        (None, Some(m)) => m,
        (None, None) => return Err(CliError::Usage("give --lambda or both --sigma and --delta".into())),
    };
    let mut report = Report::new(
        "bundle",
        json!({"genus": genus, "level": level, "sigma": sigma, "delta": delta, "lambda": args.lambda, "file": file_echo(&file)}),
    );
    let bundle = chern_degree(genus, level, lambda)?;
    report
        .num("lambda", lambda, "lambda = (sigma + delta)/4, the degree of the Hodge bundle on the base")
        .num("rank", bundle.rank.to_string(), RANK_FUSION)
        .num("degree", bundle.degree.to_string(), "c1 = 3k lambda n/(k+2), exact rational")
        .num("dual_degree", bundle.dual_degree.to_string(), "-c1")
        .num("slope", bundle.slope.to_string(), "c1/n = 3k lambda/(k+2)")
        .put("integral_degree", bundle.integral);
    let flat = flat_combination_check(genus, level, lambda)?;
    report.num("flat_residual", flat.to_string(), "(k+2) * slope - 3k lambda, exact; zero when the twisted bundle is flat");
    report.check("flat_residual_zero", num_traits::Zero::is_zero(&flat));
    if bundle.integral {
        let bn = brill_noether_verdict(genus, level, lambda)?;
        let c2 = if bundle.rank >= BigUint::from(2u32) { Some(higher_chern(genus, level, lambda, 2)?.to_string()) } else { None };
        report
            .num("dual_euler_characteristic", bn.dual_euler_characteristic.to_string(), "Riemann-Roch on P^1: chi = n + deg")
            .num(
                "dual_splitting",
                bn.dual_splitting.to_string(),
                "balanced type: (d mod n) summands of degree ceil(d/n), the rest floor(d/n)",
            )
            .num("generic_sections", bn.generic_sections.to_string(), "h0 = sum over summands of max(0, d_i + 1)")
            .put("verdict", bn.verdict.as_str())
            .num(
                "large_level_degrees",
                bn.large_level_degrees.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "{1 - 3 lambda, -3 lambda}, the balanced dual degrees once k + 2 > 6 lambda",
            )
            .put("matches_large_level_pattern", bn.matches_large_level_pattern)
            .num("c2", c2, "c_i = C(n, i) (c1/n)^i")
            .put("note", bn.note);
    } else {
        report.put("note", "degree is not an integer; splitting and sections are not defined");
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct ThetaCheckArgs {
    pub file: Option<PathBuf>,
    pub genus: Option<usize>,
    pub split: usize,
    pub level: Option<u64>,
    pub trials: usize,
}

impl Default for ThetaCheckArgs {
    fn default() -> Self {
        Self { file: None, genus: None, split: 1, level: None, trials: 10 }
    }
}

pub const DEFAULT_THETA_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_TRUNCATION: u32 = 8;

pub fn cmd_theta_check(args: &ThetaCheckArgs, opts: &GlobalOptions) -> CliResult<Report> {
    let file = load(&args.file)?;
    let genus = args.genus.or(file.as_ref().map(|f| f.genus)).unwrap_or(2);
    let level = args.level.or(file.as_ref().and_then(|f| f.level)).unwrap_or(2);
    let h = args.split;
    if h == 0 || h >= genus {
        return Err(CliError::Usage(format!("split must lie strictly between 0 and the genus {genus}, got {h}")));
    }
    if level < 2 {
        return Err(CliError::Usage("level must be at least 2".into()));
    }
    let truncation = opts.truncation.unwrap_or(DEFAULT_TRUNCATION);
    let tolerance = opts.tolerance.unwrap_or(DEFAULT_THETA_TOLERANCE);
    let k = i64::try_from(level).map_err(|_| CliError::Usage("level too large".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut theta_max, mut weil_max, mut tail_max) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..args.trials {
        let a = random_diagonal_siegel::<f64, _>(h, &mut rng)?;
        let b = random_diagonal_siegel::<f64, _>(genus - h, &mut rng)?;
        let mut label = |dim: usize| -> CliResult<ThetaLabel> {
            let nums: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..k)).collect();
            Ok(ThetaLabel::new(level, &nums)?)
        };
        let (l1, l2) = (label(h)?, label(genus - h)?);
        theta_max = theta_max.max(theta_factorization_check(&a, &b, &l1, &l2, truncation)?);
        tail_max = tail_max.max(theta_tail_bound(&a.direct_sum(&b)?, level, truncation));
        let wa = random_symplectic_mod(h, k, 2 * genus + 4, &mut rng)?;
        let wb = random_symplectic_mod(genus - h, k, 2 * genus + 4, &mut rng)?;
        weil_max = weil_max.max(weil_tensor_factorization::<f64, i64>(&wa, &wb, opts.weil())?);
    }
    let asserted = tail_max < tolerance;
    let within = theta_max < tolerance && weil_max < tolerance.max(1e-8);
    let mut report = Report::new(
        "theta-check",
        json!({"genus": genus, "split": h, "level": level, "trials": args.trials, "truncation": truncation,
               "tolerance": tolerance, "seed": opts.seed, "file": file_echo(&file)}),
    );
    report
        .num(
            "max_theta_residual",
            theta_max,
            "|theta[l1+l2](A+B) - theta[l1](A) theta[l2](B)|, sums of exp(i pi n^T tau n/k) over n in Z^g + l/k with |n|_inf <= R",
        )
        .num("max_tail_bound", tail_max, "exp(-pi lambda_min(Im tau) R^2/k) (2R+3)^g")
        .num("max_weil_residual", weil_max, "min_c ||W(A+B) - c W(A) kron W(B)||_F over random symplectic blocks mod k")
        .put("tolerance_asserted", asserted)
        .put("within_tolerance", within);
    if asserted {
        report.check("within_tolerance", within);
    }
    Ok(report)
}

#[derive(Debug, Clone, Default)]
pub struct HomPlusArgs {
    pub file: Option<PathBuf>,
    pub n: Option<u64>,
    pub genus: Option<u32>,
    pub level: Option<u64>,
    pub r: Option<u64>,
    pub multiplicities: Vec<u64>,
    pub cycle: Option<Vec<i64>>,
}

pub fn cmd_homplus(args: &HomPlusArgs, opts: &GlobalOptions) -> CliResult<Report> {
    let file = load(&args.file)?;
    let r = require(args.r.or(file.as_ref().map(|f| f.cycles.len() as u64)), "--r")?;
    let mut report = Report::new(
        "homplus",
        json!({"n": args.n, "genus": args.genus, "level": args.level, "r": r, "multiplicities": args.multiplicities,
               "cycle": args.cycle, "file": file_echo(&file)}),
    );
    let (dims, source) = if let Some(n) = args.n {
        (homplus_dimension(n, r, &args.multiplicities)?, "n and multiplicities given")
    } else if let (Some(g), Some(k), false) = (args.genus, args.level, args.multiplicities.is_empty()) {
        (homplus_dimension_su2(g, to_u32(k, "level")?, r, &args.multiplicities)?, "n = v_k(g) by sewing")
    } else {
        let level = require(args.level.or(file.as_ref().and_then(|f| f.level)), "--level")?;
        let cycle = match (&args.cycle, &file) {
            (Some(c), _) => c.clone(),
            (None, Some(f)) => require(f.cycles.first().cloned(), "a vanishing cycle")?,
            (None, None) => return Err(CliError::Usage("give --n, --genus with --multiplicities, or a cycle".into())),
        };
        let mults = if args.multiplicities.is_empty() {
            transvection_multiplicities::<f64>(&cycle, level, opts.weil())?
        } else {
            args.multiplicities.clone()
        };
        let n = (level as u128).pow(cycle.len() as u32 / 2);
        let n = u64::try_from(n).map_err(|_| CliError::Usage("k^g too large".into()))?;
        (homplus_dimension(n, r, &mults)?, "abelian level: n = k^g, multiplicities from the Weil operator of the twist")
    };
    report
        .put("source", source)
        .num("n", dims.n, "dimension of the representation")
        .num("r", dims.r, "number of vanishing cycles")
        .num("multiplicities", dims.multiplicities.clone(), "eigenvalue multiplicities of the image of one Dehn twist")
        .num("dim_conjugacy_class", dims.dim_conjugacy_class.to_string(), "n^2 - sum m_i^2")
        .num("dim_hom_plus", dims.dim_hom_plus.to_string(), "r dim C - 2(n^2 - 1)")
        .put("status", dims.status.as_str());
    Ok(report)
}
