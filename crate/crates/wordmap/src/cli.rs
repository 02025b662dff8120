use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use wordmap_core::eval::{self, Binding, Verdict};
use wordmap_core::literal::parse_scalar;
use wordmap_core::matrix::{random_sln, Matrix};
use wordmap_core::ring::{RingDescriptor, Scalar};
use wordmap_core::rootsys::{self, RootSystem};
use wordmap_core::sl2::catalogue::{self, CatalogueWord, ComponentId};
use wordmap_core::sl2::lemmas::{lemma101_check, lemma78_check};
use wordmap_core::sl2::relations::{generated_group_order, relation_scan, RelationScan};
use wordmap_core::sl2::{self, Equations, Sl2Pair};
use wordmap_core::word::{parse, parse_word, WordWithConstants};

use crate::format::{matrix_to_json, read_matrix, read_sigma};
use crate::report::*;
use crate::{CliError, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

const DEFAULT_RING: &str = "Fp:101";

#[derive(Debug, Parser)]
#[command(name = "wordmap", version, about = "Exact word maps on matrix groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Coefficient ring: Q, Fp:13, Q[i], Fp:7[sqrt(3)], ... (default Fp:101,
    /// or the ring named in the --sigma file)
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Seed for all random sampling
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random samples where a command samples
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// JSON file binding constant symbols to matrices
    #[arg(long, global = true)]
    pub sigma: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a word at matrices given as JSON files
    Eval {
        #[arg(long)]
        word: String,
        #[arg(long, num_args = 1.., required = true)]
        at: Vec<PathBuf>,
    },
    /// Evaluate the adjugate extension and check it against the word map
    Extend {
        #[arg(long)]
        word: String,
        #[arg(long, num_args = 1.., required = true)]
        at: Vec<PathBuf>,
    },
    /// Sample a characteristic-polynomial coefficient of the word value
    ChiProbe {
        #[arg(long)]
        word: String,
        /// Coefficient index i in 1..=n (1 is the trace, n the determinant)
        #[arg(long, default_value_t = 1)]
        coeff: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Rank of the differential of the word map at random points
    Dominance {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        points: usize,
    },
    /// A pair (t, g) whose commutator has the given trace
    Preimage {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        beta: String,
    },
    /// Fiber membership and Jacobian ranks of an SL_2 word at a point
    Fiber {
        #[arg(long)]
        word: String,
        #[arg(long, num_args = 1.., required = true)]
        at: Vec<PathBuf>,
    },
    /// Dimension certificate for a catalogued component
    Dimcert {
        /// ex1.W, ex1.T, ex2.W<j>[x|y], ex3.W1, ex4.T<j>, sa, ex5.W1, ex5.T1, ex5.T2
        #[arg(long)]
        example: String,
        /// Word to certify; defaults to the component's word
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
    },
    /// A point where the word value is a nontrivial unipotent
    SepWitness {
        /// ex1, ex2, ex3, ex4, ex5
        #[arg(long)]
        example: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Short relations satisfied by a pair of matrices
    Relscan {
        #[arg(long, num_args = 2, required = true)]
        at: Vec<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 10_000)]
        order_cap: usize,
    },
    /// Explicit computations for [[x,y], x[x,y]x^-1]
    LemmaCheck {
        #[arg(value_enum)]
        which: LemmaId,
        /// Torus parameter for 78
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        lambda: String,
    },
    /// Root systems and property (*)
    Roots {
        #[command(subcommand)]
        command: RootsCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaId {
    #[value(name = "78")]
    L78,
    #[value(name = "101")]
    L101,
}

#[derive(Debug, Subcommand)]
pub enum RootsCommand {
    /// Search one root system, e.g. E8 or B3
    Check { root_system: String },
    /// Verdicts for every irreducible type up to a rank
    Table {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
}

/// A finished command: rendered output plus whether its checks passed.
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub passed: bool,
}

fn outcome<R: Report>(r: &R) -> Result<Outcome, CliError> {
    let mut json = serde_json::to_string_pretty(r)?;
    json.push('\n');
    Ok(Outcome { json, text: r.text(), passed: r.passed() })
}

struct Ctx {
    ring: RingDescriptor,
    binding: Binding,
    seed: u64,
    samples: usize,
}

impl Ctx {
    fn new(g: &Global) -> Result<Ctx, CliError> {
        let sigma = g.sigma.as_deref().map(read_sigma).transpose()?;
        let file_ring = sigma.as_ref().and_then(|s| s.ring.clone());
        let ring_text = match (&g.ring, &file_ring) {
            (Some(a), Some(b)) => {
                let (ra, rb): (RingDescriptor, RingDescriptor) = (a.parse()?, b.parse()?);
                if ra != rb {
                    return Err(CliError::Input(format!("--ring {a} differs from the binding file's ring {b}")));
                }
                a.clone()
            }
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => DEFAULT_RING.to_string(),
        };
        let ring: RingDescriptor = ring_text.parse()?;
        let binding = match &sigma {
            Some(s) => s.binding(&ring)?,
            None => Binding::new(),
        };
        Ok(Ctx { ring, binding, seed: g.seed, samples: g.samples as usize })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn scalar(&self, text: &str) -> Result<Scalar, CliError> {
        Ok(parse_scalar(&self.ring, text)?)
    }

    fn m(&self, m: &Matrix) -> Vec<Vec<String>> {
        matrix_to_json(&self.ring, m)
    }

    fn r(&self, a: &Scalar) -> String {
        self.ring.render(a)
    }

    fn tuple(&self, paths: &[PathBuf]) -> Result<Vec<Matrix>, CliError> {
        let t: Vec<Matrix> = paths.iter().map(|p| read_matrix(&self.ring, p)).collect::<Result<_, _>>()?;
        let n = t[0].n();
        if t.iter().any(|m| m.n() != n) || self.binding.dim().is_some_and(|d| d != n) {
            return Err(CliError::Input("all matrices must have the same size".into()));
        }
        Ok(t)
    }

    fn pair(&self, t: &[Matrix]) -> Result<Sl2Pair, CliError> {
        if t.len() != 2 {
            return Err(CliError::Input("expected exactly two matrices".into()));
        }
        Ok(Sl2Pair::new(&self.ring, t[0].clone(), t[1].clone())?)
    }
}

fn check_arity(w: &WordWithConstants, t: &[Matrix]) -> Result<(), CliError> {
    if w.max_var() > t.len() {
        return Err(CliError::Input(format!("the word uses {} variables but {} matrices were given", w.max_var(), t.len())));
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = Ctx::new(&cli.global)?;
    let ring = &ctx.ring;
    match &cli.command {
        Command::Eval { word, at } => {
            let w = parse(word)?;
            let t = ctx.tuple(at)?;
            check_arity(&w, &t)?;
            let v = eval::eval_group(ring, &w, &ctx.binding, &t)?;
            outcome(&EvalOut {
                ring: ring.to_string(),
                word: w.to_string(),
                value: ctx.m(&v),
                in_w: v.is_identity(ring),
                in_t: v.is_unipotent(ring),
            })
        }
        Command::Extend { word, at } => {
            let w = parse(word)?;
            let t = ctx.tuple(at)?;
            check_arity(&w, &t)?;
            let on_special = t.iter().all(|m| m.is_special(ring));
            let (extension, delta, group, holds) = match eval::check_restriction_identities(ring, &w, &ctx.binding, &t) {
                Ok(r) => (r.extension, r.delta, Some(r.group), Some(r.holds)),
                Err(eval::EvalError::NotInvertible { .. }) => {
                    let e = eval::eval_adjugate_extension(ring, &w, &ctx.binding, &t)?;
                    let delta = eval::restriction_delta(ring, &w, &ctx.binding, &t)?;
                    (e, delta, None, None)
                }
                Err(e) => return Err(e.into()),
            };
            outcome(&ExtendOut {
                ring: ring.to_string(),
                word: w.to_string(),
                extension: ctx.m(&extension),
                delta: ctx.r(&delta),
                group: group.as_ref().map(|g| ctx.m(g)),
                restriction_holds: holds,
                on_special,
            })
        }
        Command::ChiProbe { word, coeff, n } => {
            let w = parse(word)?;
            if !(1..=*n).contains(coeff) || *n == 0 {
                return Err(CliError::Input(format!("--coeff must lie in 1..={n}")));
            }
            let mut rng = ctx.rng();
            let r = eval::chi_probe(ring, &w, &ctx.binding, *coeff, *n, ctx.samples, &mut rng)?;
            outcome(&ChiProbeOut {
                ring: ring.to_string(),
                word: w.to_string(),
                coefficient: *coeff,
                n: *n,
                seed: ctx.seed,
                samples: ctx.samples,
                values: r.values.iter().map(|v| ctx.r(v)).collect(),
                truncated: r.truncated,
                verdict: verdict_name(r.verdict).into(),
            })
        }
        Command::Dominance { word, n, points } => {
            let w = parse(word)?;
            if *n < 2 || ctx.binding.dim().is_some_and(|d| d != *n) {
                return Err(CliError::Input("--n must be at least 2 and match the binding".into()));
            }
            let mut rng = ctx.rng();
            let mut ranks = Vec::new();
            for _ in 0..*points {
                let t: Vec<Matrix> = (0..w.max_var().max(1))
                    .map(|_| random_sln(ring, *n, &mut rng))
                    .collect::<Result<_, _>>()
                    .map_err(eval::EvalError::from)?;
                ranks.push(eval::dominance_probe(ring, &w, &ctx.binding, &t)?);
            }
            let generic_rank = ranks.iter().copied().max().unwrap_or(0);
            let max_rank = n * n - 1;
            outcome(&DominanceOut {
                ring: ring.to_string(),
                word: w.to_string(),
                n: *n,
                seed: ctx.seed,
                ranks,
                generic_rank,
                max_rank,
                dominant: generic_rank == max_rank,
            })
        }
        Command::Preimage { target, lambda, beta } => {
            let a = ctx.scalar(target)?;
            let pair = sl2::trace_preimage_commutator(ring, &a, &ctx.scalar(lambda)?, &ctx.scalar(beta)?)?;
            let comm = parse("[x,y]")?;
            let v = eval::eval_group(ring, &comm, &Binding::new(), &pair.to_vec())?;
            let trace = v.trace(ring);
            outcome(&PreimageOut {
                ring: ring.to_string(),
                target: ctx.r(&a),
                lambda: ctx.r(pair.g1.get(0, 0)),
                beta: ctx.r(pair.g2.get(0, 1)),
                t: ctx.m(&pair.g1),
                g: ctx.m(&pair.g2),
                verified: trace == a && pair.g2.is_special(ring),
                trace: ctx.r(&trace),
            })
        }
        Command::Fiber { word, at } => {
            let w = parse(word)?;
            let t = ctx.tuple(at)?;
            check_arity(&w, &t)?;
            if t[0].n() != 2 {
                return Err(CliError::Input("fiber works on SL_2".into()));
            }
            let v = eval::eval_group(ring, &w, &ctx.binding, &t)?;
            let jw = sl2::jet_jacobian(ring, &w, &ctx.binding, &t, &Equations::WFiber)?;
            let jt = sl2::jet_jacobian(ring, &w, &ctx.binding, &t, &Equations::TFiber)?;
            let dim = 3 * t.len().min(w.max_var());
            outcome(&FiberOut {
                ring: ring.to_string(),
                word: w.to_string(),
                value: ctx.m(&v),
                in_w: v.is_identity(ring),
                in_t: v.is_unipotent(ring),
                w_jacobian_rank: jw.rank,
                t_jacobian_rank: jt.rank,
                w_tangent_dim: dim - jw.rank,
                t_tangent_dim: dim - jt.rank,
            })
        }
        Command::Dimcert { example, word, m, n, p, a } => {
            let id: ComponentId = example.parse()?;
            let id = id.with_params(*m, *n, *p, *a)?;
            let w = match word {
                Some(text) => parse_word(text)?,
                None => id.word(),
            };
            let mut rng = ctx.rng();
            let c = catalogue::dimension_certificate(ring, &id, &w, &mut rng)?;
            outcome(&DimcertOut {
                component: id.to_string(),
                ring: ring.to_string(),
                word: w.to_string(),
                seed: ctx.seed,
                claimed: c.claimed,
                lower: c.lower,
                upper: c.upper,
                confirmed: c.confirmed,
                point: PairJson { g1: ctx.m(&c.point.g1), g2: ctx.m(&c.point.g2) },
                params: ParamsJson {
                    scalars: c.params.scalars.iter().map(|s| ctx.r(s)).collect(),
                    groups: c.params.groups.iter().map(|g| ctx.m(g)).collect(),
                },
            })
        }
        Command::SepWitness { example, m, n, p } => {
            let cw = catalogue_word(example, *m, *n, *p)?;
            let w = WordWithConstants::from(cw.word());
            let found = catalogue::separation_witness(ring, cw)?;
            let (point, value, trace, verified) = match &found {
                Some(pair) => {
                    let v = eval::eval_group(ring, &w, &Binding::new(), &pair.to_vec())?;
                    let tr = v.trace(ring);
                    let ok = tr == ring.from_int(2) && !v.is_identity(ring);
                    (Some(PairJson { g1: ctx.m(&pair.g1), g2: ctx.m(&pair.g2) }), Some(ctx.m(&v)), Some(ctx.r(&tr)), ok)
                }
                None => (None, None, None, false),
            };
            outcome(&SepWitnessOut {
                example: cw.to_string(),
                word: w.to_string(),
                ring: ring.to_string(),
                found: found.is_some(),
                point,
                value,
                trace,
                verified,
            })
        }
        Command::Relscan { at, max_len, order_cap } => {
            let t = ctx.tuple(at)?;
            let pair = ctx.pair(&t)?;
            let scan = relation_scan(ring, &pair, *max_len)?;
            let (trivial, relations) = match scan {
                RelationScan::Trivial => (true, Vec::new()),
                RelationScan::Relations(r) => (false, r.iter().map(|w| w.to_string()).collect()),
            };
            outcome(&RelscanOut {
                ring: ring.to_string(),
                max_len: *max_len,
                trivial,
                relations,
                group_order: generated_group_order(ring, &pair.to_vec(), *order_cap)?,
                order_cap: *order_cap,
            })
        }
        Command::LemmaCheck { which: LemmaId::L78, lambda } => {
            let l = ctx.scalar(lambda)?;
            let (us, exhaustive): (Vec<Scalar>, bool) = match ring.elements() {
                Some(it) if ring.order().is_some_and(|q| q <= 100_000) => (it.collect(), true),
                _ => {
                    let mut rng = ctx.rng();
                    let mut us = vec![ring.zero()];
                    us.extend((0..ctx.samples).map(|_| ring.random(&mut rng)));
                    (us, false)
                }
            };
            let mut failures = Vec::new();
            for u in &us {
                if !lemma78_check(ring, &l, u)?.holds() {
                    failures.push(ctx.r(u));
                }
            }
            outcome(&Lemma78Out {
                ring: ring.to_string(),
                lambda: ctx.r(&l),
                exhaustive,
                checked: us.len(),
                holds: failures.is_empty(),
                failures,
            })
        }
        Command::LemmaCheck { which: LemmaId::L101, .. } => {
            let r = lemma101_check(ring)?;
            outcome(&Lemma101Out {
                ring: ring.to_string(),
                z: ctx.m(&r.z),
                intermediate: ctx.m(&r.intermediate),
                value: ctx.m(&r.value),
                trace: ctx.r(&r.trace),
                z_matches: r.z_matches,
                intermediate_matches: r.intermediate_matches,
                value_is_square: r.value_is_square,
                trace_is_34: r.trace_is_34,
                trace_not_two: r.trace_not_two,
                holds: r.holds(),
            })
        }
        Command::Roots { command: RootsCommand::Check { root_system } } => {
            let rs: RootSystem = root_system.parse()?;
            let res = rootsys::star_search(&rs);
            let expected = rootsys::expected_star(rs.kind, rs.rank);
            outcome(&RootsCheckOut {
                root_type: rs.kind.to_string(),
                rank: rs.rank,
                roots: rs.roots.len(),
                positive_roots: rs.positive_roots().len(),
                holds: res.holds,
                expected,
                agrees: res.holds == expected,
                witness: res.witness.map(|w| w.iter().map(|r| rootsys::render_root(r)).collect()),
            })
        }
        Command::Roots { command: RootsCommand::Table { max_rank } } => {
            let rows: Vec<RootsRow> = rootsys::verify_lemma_table(*max_rank)
                .iter()
                .map(|r| RootsRow {
                    root_system: format!("{}{}", r.kind, r.rank),
                    holds: r.result.holds,
                    expected: r.expected,
                    agrees: r.agrees(),
                })
                .collect();
            outcome(&RootsTableOut {
                max_rank: *max_rank,
                failing: rows.iter().filter(|r| !r.holds).map(|r| r.root_system.clone()).collect(),
                all_agree: rows.iter().all(|r| r.agrees),
                rows,
            })
        }
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::ConstantSoFar => "constant_so_far",
        Verdict::TakesManyValues => "takes_many_values",
    }
}

fn catalogue_word(example: &str, m: Option<u32>, n: Option<u32>, p: Option<u32>) -> Result<CatalogueWord, CliError> {
    let w = match example.trim().to_ascii_lowercase().as_str() {
        "ex1" => CatalogueWord::Ex1,
        "ex2" => CatalogueWord::Ex2 { m: m.unwrap_or(2), n: n.unwrap_or(1) },
        "ex3" => CatalogueWord::Ex3,
        "ex4" => CatalogueWord::Ex4 { p: p.unwrap_or(5) },
        "ex5" => CatalogueWord::Ex5,
        _ => return Err(CliError::Input(format!("unknown example `{example}`; expected ex1..ex5"))),
    };
    match w {
        CatalogueWord::Ex2 { m: 0, .. } | CatalogueWord::Ex2 { n: 0, .. } => {
            Err(CliError::Input("m and n must be positive".into()))
        }
        CatalogueWord::Ex4 { p } if p < 3 || !wordmap_core::ring::is_prime(p as u64) => {
            Err(CliError::Input("p must be an odd prime".into()))
        }
        w => Ok(w),
    }
}

/// Parses `args`, runs the command and writes the report; returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let body = match cli.global.output {
                Output::Json => o.json,
                Output::Text => o.text,
            };
            let _ = out.write_all(body.as_bytes());
            if o.passed {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
