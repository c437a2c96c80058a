//! Command-line front door for the tree-action calculus: applies words
//! to trees, computes and compares seeds, enumerates orbits, emits
//! construction and sorting words, runs relation-family verification
//! sweeps, exercises bracket structures, evaluates the braided-word
//! representation, realizes words as dyadic PL maps, and renders orbit
//! graphs as DOT.
//!
//! Exit codes: 0 success/verified; 1 failed verification or inequality
//! (with a witness printed); 2 usage or parse error; 3 undefined action
//! or exhausted probe budget.

use clap::{Parser, Subcommand, ValueEnum};
use lawgeom::bv::{
    bv_bracket, bv_equal_probed, e_eval, f_eval, f_eval_explicit, psi, verify_family_braided,
    BvLd, BvWord,
};
use lawgeom::constructions::{c_word, s_word, wt, wt_coloured, wt_star, wt_star_coloured};
use lawgeom::error::{Error, Result};
use lawgeom::ld::{
    check_involutory, check_ld, check_left_cancellative, conj_samples, AddControl, ConjFree,
    LdSystem, TrivialLd, Verdict,
};
use lawgeom::ops::{
    apply_word_plain, generators_up_to, orbit, parse_word, print_word, GWord, Gen, OpKind, Orbit,
};
use lawgeom::presentations::{
    derived_relations, translate_a_to_index, verify_family_sampled, verify_family_seed, verify_seed,
    Bounds, Family, VerificationReport,
};
use lawgeom::realization::{pl_of_seed, vmap_of_seed};
use lawgeom::seeds::{equal_in_group, is_identity_word, word_seed};
use lawgeom::tree::{parse_tree, print_tree, Address, ITree, Tree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[derive(Parser)]
#[command(
    name = "lawgeom",
    version,
    about = "Partial tree actions, word equality, and relation verification for the geometry groups of algebraic laws"
)]
struct Cli {
    /// Emit line-oriented machine-readable records
    #[arg(long, global = true)]
    porcelain: bool,

    /// Seed for the sampling RNG used by sampled verification
    #[arg(long, global = true, default_value_t = 0)]
    rng: u64,

    /// Maximum tree size (leaves) accepted or enumerated
    #[arg(long, global = true, default_value_t = 65536)]
    cap: usize,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply a word of operator letters to a tree
    Apply {
        /// Tree in the grammar `(left right)` with `*` or integer leaves
        #[arg(long)]
        tree: String,
        /// Word in the token grammar, e.g. "A[0] C[1]' a2 s1"
        #[arg(long)]
        word: String,
    },
    /// Print the canonical seed (source -> target) of a word
    Seed {
        /// Word of plain letters
        word: String,
    },
    /// Decide equality of two words in the selected group
    Eq {
        /// Group regime: generator legality and equality backend
        #[arg(long, value_enum, default_value_t = Regime::S)]
        regime: Regime,
        word1: String,
        word2: String,
    },
    /// Decide whether a word represents the identity
    Id {
        #[arg(long, value_enum, default_value_t = Regime::S)]
        regime: Regime,
        word: String,
    },
    /// Enumerate the orbit of a tree under a set of operator kinds
    Orbit {
        #[arg(long)]
        tree: String,
        /// Operator kinds, a string over {A,C,S}, e.g. "A" or "AC"
        #[arg(long)]
        gens: String,
        /// Print only the orbit size
        #[arg(long)]
        count: bool,
        /// Maximum generator address length (default: tree size - 2)
        #[arg(long)]
        addr_len: Option<usize>,
    },
    /// Print the word carrying the vine onto the given tree
    Wt {
        #[arg(long)]
        tree: String,
        /// Emit the starred form, which keeps a tail leaf free
        #[arg(long)]
        star: bool,
        /// Use the label-aware construction over a coloured tree
        #[arg(long)]
        coloured: bool,
    },
    /// Print a block-sorting word for two disjoint index sets
    Cword {
        /// The two sets, comma-separated indices joined by `;`, e.g. "2,5,6;1,3,4"
        #[arg(long)]
        sets: String,
        /// Sorting flavour: `c` cycles the second block over, `s` swaps
        #[arg(long, default_value = "c")]
        kind: String,
    },
    /// Translate an address letter into an equal word of indexed letters
    Translate {
        /// Binary address, or `e` for the root
        #[arg(long)]
        addr: String,
    },
    /// Verify a relation family
    Verify {
        /// Family name (R_A, R_AC, R_ACS, R_AS, R_a, R_ac, R_acs, R_as,
        /// R_asigma) or `derived` for the machine-generated consequences
        #[arg(long)]
        family: String,
        /// Maximum template address length
        #[arg(long, default_value_t = 2)]
        addr_len: usize,
        /// Maximum letter index
        #[arg(long, default_value_t = 4)]
        index: u32,
        /// Verify by sampled action over a bracket structure instead of seeds
        #[arg(long, value_enum)]
        ld: Option<LdChoice>,
        /// Sampled trees per relation when --ld is given
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Check laws of a bracket structure on sampled elements
    Ld {
        #[command(subcommand)]
        cmd: LdCmd,
    },
    /// Braided words: equality, representation, bracket, spine evaluation
    Bv {
        #[command(subcommand)]
        cmd: BvCmd,
    },
    /// Realize a word as a dyadic piecewise-linear map of [0,1]
    Plmap {
        /// Word of rotation letters (or any plain word with --vmap)
        word: String,
        /// Tab-separated breakpoint output
        #[arg(long)]
        tsv: bool,
        /// Print the interval-bijection realization instead
        #[arg(long)]
        vmap: bool,
    },
    /// Render an orbit as a DOT graph
    Render {
        #[arg(long)]
        tree: String,
        /// Operator kinds, a string over {A,C,S}
        #[arg(long)]
        gens: String,
        #[arg(long)]
        addr_len: Option<usize>,
    },
}

#[derive(Subcommand)]
enum LdCmd {
    /// Check one law over sampled elements
    Check {
        #[arg(long, value_enum)]
        system: LdChoice,
        /// Law to check
        #[arg(long, value_enum)]
        law: Law,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum BvCmd {
    /// Decide equality of two braided words via the representation
    Eq { word1: String, word2: String },
    /// The image of one address generator under a word's automorphism
    Psi {
        word: String,
        /// Address of the generator to track, `e` for the root
        #[arg(long)]
        gen: String,
        /// Maximum probe-tree depth
        #[arg(long, default_value_t = 32)]
        budget: usize,
    },
    /// The bracket x[y] of two braided words
    Bracket { x: String, y: String },
    /// Collapse a braided-word-labeled tree to its spine word
    F {
        /// Tree whose leaves are quoted words, e.g. '("a1" ("" "b2"))'
        tree: String,
        /// Evaluate through the closed form instead of the recursion
        #[arg(long)]
        explicit: bool,
        /// Print the circle evaluation instead of the spine word
        #[arg(long)]
        circle: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Regime {
    /// Rotations only
    #[value(name = "F")]
    F,
    /// Rotations and full swaps
    #[value(name = "V")]
    V,
    /// Rotations and both permutation letters
    #[value(name = "S")]
    S,
    /// Braided: indexed rotations and crossings
    #[value(name = "BV")]
    Bv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum LdChoice {
    /// Labels ignore the bracket (plain action)
    Trivial,
    /// Free-group labels under conjugation
    Conj,
    /// Braided words under their own bracket
    Bv,
    /// Additive non-example (fails self-distributivity)
    Addcontrol,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Law {
    /// Self-distributivity x[y[z]] = x[y][x[z]]
    Ld,
    /// Left cancellativity
    Cancel,
    /// Involutivity x[x[y]] = y
    Involutory,
}

/// Dying quietly on a closed pipe beats the default panic when output
/// is fed to `head` and friends.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::UndefinedAction { .. } | Error::BudgetExhausted => 3,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Apply { tree, word } => {
            let t = parse_capped(tree, cli.cap)?;
            let w = parse_word(word)?;
            let image = apply_word_plain(&t, &w)?;
            println!("{}", record(cli, "TREE", &print_tree(&image)));
            Ok(0)
        }
        Cmd::Seed { word } => {
            let s = word_seed(&parse_word(word)?)?;
            if cli.porcelain {
                println!("SEED;{};{}", print_tree(&s.source), print_tree(&s.target));
            } else {
                println!("{} -> {}", print_tree(&s.source), print_tree(&s.target));
            }
            Ok(0)
        }
        Cmd::Eq { regime, word1, word2 } => {
            let (w1, w2) = (parse_word(word1)?, parse_word(word2)?);
            check_regime(*regime, &w1)?;
            check_regime(*regime, &w2)?;
            let equal = regime_equal(*regime, &w1, &w2)?;
            println!("{}", record(cli, "EQ", if equal { "true" } else { "false" }));
            if equal {
                Ok(0)
            } else {
                if !cli.porcelain {
                    print_inequality_witness(*regime, &w1, &w2)?;
                }
                Ok(1)
            }
        }
        Cmd::Id { regime, word } => {
            let w = parse_word(word)?;
            check_regime(*regime, &w)?;
            let identity = match regime {
                Regime::Bv => {
                    lawgeom::bv::bv_equal(&BvWord::from_gens(&w)?, &BvWord::identity())
                }
                _ => is_identity_word(&w)?,
            };
            println!("{}", record(cli, "ID", if identity { "true" } else { "false" }));
            Ok(if identity { 0 } else { 1 })
        }
        Cmd::Orbit { tree, gens, count, addr_len } => {
            let o = compute_orbit(cli, tree, gens, *addr_len)?;
            if *count {
                println!("{}", record(cli, "ORBIT", &o.trees.len().to_string()));
            } else {
                if cli.porcelain {
                    println!("ORBIT;{}", o.trees.len());
                }
                for t in &o.trees {
                    println!("{}", record(cli, "TREE", &print_tree(t)));
                }
            }
            Ok(0)
        }
        Cmd::Wt { tree, star, coloured } => {
            let t = parse_capped(tree, cli.cap)?;
            let w = match (star, coloured) {
                (false, false) => wt(&t),
                (true, false) => wt_star(&t),
                (false, true) => wt_coloured(&t)?,
                (true, true) => wt_star_coloured(&t)?,
            };
            println!("{}", record(cli, "WORD", &print_word(&w)));
            Ok(0)
        }
        Cmd::Cword { sets, kind } => {
            let (i, j) = parse_sets(sets)?;
            let w = match kind.as_str() {
                "c" => c_word(&i, &j)?,
                "s" => s_word(&i, &j)?,
                other => {
                    return Err(Error::Parse {
                        offset: 0,
                        message: format!("sorting kind must be `c` or `s`, got `{other}`"),
                    })
                }
            };
            println!("{}", record(cli, "WORD", &print_word(&w)));
            Ok(0)
        }
        Cmd::Translate { addr } => {
            let alpha = Address::parse(addr)?;
            let w = translate_a_to_index(&alpha);
            println!("{}", record(cli, "WORD", &print_word(&w)));
            Ok(0)
        }
        Cmd::Verify { family, addr_len, index, ld, samples } => {
            let bounds = Bounds { max_addr_len: *addr_len, max_index: *index };
            let report = build_report(cli, family, bounds, *ld, *samples)?;
            print_report(cli, &report);
            Ok(if report.all_hold() { 0 } else { 1 })
        }
        Cmd::Ld { cmd: LdCmd::Check { system, law, samples } } => run_ld_check(cli, *system, *law, *samples),
        Cmd::Bv { cmd } => run_bv(cli, cmd),
        Cmd::Plmap { word, tsv, vmap } => {
            let s = word_seed(&parse_word(word)?)?;
            if *vmap {
                let m = vmap_of_seed(&s);
                for p in m.pieces() {
                    if cli.porcelain {
                        println!(
                            "PIECE;{};{};{};{}",
                            p.source.0, p.source.1, p.target.0, p.target.1
                        );
                    } else if *tsv {
                        println!(
                            "{}\t{}\t{}\t{}",
                            p.source.0, p.source.1, p.target.0, p.target.1
                        );
                    } else {
                        println!(
                            "[{},{}) -> [{},{})",
                            p.source.0, p.source.1, p.target.0, p.target.1
                        );
                    }
                }
            } else {
                let m = pl_of_seed(&s)?;
                for (x, y) in m.breakpoints() {
                    if cli.porcelain {
                        println!("BP;{x};{y}");
                    } else if *tsv {
                        println!("{x}\t{y}");
                    } else {
                        println!("{x} {y}");
                    }
                }
            }
            Ok(0)
        }
        Cmd::Render { tree, gens, addr_len } => {
            let o = compute_orbit(cli, tree, gens, *addr_len)?;
            print!("{}", dot_graph(&o));
            Ok(0)
        }
    }
}

/// Human-or-porcelain single-value record.
fn record(cli: &Cli, tag: &str, value: &str) -> String {
    if cli.porcelain {
        format!("{tag};{value}")
    } else {
        value.to_string()
    }
}

fn parse_capped(text: &str, cap: usize) -> Result<ITree> {
    let t = parse_tree(text)?;
    if t.size() > cap {
        return Err(Error::SizeCapExceeded { size: t.size(), cap });
    }
    Ok(t)
}

/// Letters allowed per regime: F rotates, V adds full swaps, S adds
/// both permutation letters, BV is the indexed braided alphabet.
fn check_regime(regime: Regime, w: &GWord) -> Result<()> {
    for g in w {
        let ok = match (regime, g) {
            (Regime::Bv, Gen::Indexed { kind, .. }) => {
                matches!(kind, lawgeom::ops::AliasKind::A | lawgeom::ops::AliasKind::Sigma)
            }
            (Regime::Bv, _) => false,
            (_, Gen::Indexed { kind: lawgeom::ops::AliasKind::Sigma, .. }) => false,
            (Regime::F, Gen::Addr { kind, .. }) => *kind == OpKind::A,
            (Regime::F, Gen::Indexed { kind, .. }) => *kind == lawgeom::ops::AliasKind::A,
            (Regime::V, Gen::Addr { kind, .. }) => *kind != OpKind::S,
            (Regime::V, Gen::Indexed { kind, .. }) => *kind != lawgeom::ops::AliasKind::S,
            (Regime::S, _) => true,
        };
        if !ok {
            return Err(Error::Parse {
                offset: 0,
                message: format!("letter `{g}` is not part of the selected regime"),
            });
        }
    }
    Ok(())
}

fn regime_equal(regime: Regime, w1: &GWord, w2: &GWord) -> Result<bool> {
    match regime {
        Regime::Bv => Ok(lawgeom::bv::bv_equal(
            &BvWord::from_gens(w1)?,
            &BvWord::from_gens(w2)?,
        )),
        _ => equal_in_group(w1, w2),
    }
}

fn print_inequality_witness(regime: Regime, w1: &GWord, w2: &GWord) -> Result<()> {
    if regime == Regime::Bv {
        let probe = bv_equal_probed(&BvWord::from_gens(w1)?, &BvWord::from_gens(w2)?);
        println!(
            "witness: the automorphisms differ on a {}-leaf probe tree",
            probe.probe_leaves
        );
    } else {
        let (s1, s2) = (word_seed(w1)?, word_seed(w2)?);
        println!(
            "witness: seeds {} -> {} vs {} -> {}",
            print_tree(&s1.source),
            print_tree(&s1.target),
            print_tree(&s2.source),
            print_tree(&s2.target)
        );
    }
    Ok(())
}

fn parse_kinds(text: &str) -> Result<Vec<OpKind>> {
    let mut kinds = Vec::new();
    for ch in text.chars() {
        let k = match ch {
            'A' => OpKind::A,
            'C' => OpKind::C,
            'S' => OpKind::S,
            other => {
                return Err(Error::Parse {
                    offset: 0,
                    message: format!("generator kinds are letters from {{A,C,S}}, got `{other}`"),
                })
            }
        };
        if !kinds.contains(&k) {
            kinds.push(k);
        }
    }
    if kinds.is_empty() {
        return Err(Error::Parse { offset: 0, message: "empty generator kind set".into() });
    }
    Ok(kinds)
}

fn compute_orbit(cli: &Cli, tree: &str, gens: &str, addr_len: Option<usize>) -> Result<Orbit> {
    let t = parse_capped(tree, cli.cap)?;
    let kinds = parse_kinds(gens)?;
    let len = addr_len.unwrap_or_else(|| t.size().saturating_sub(2));
    let generators = generators_up_to(&kinds, len);
    orbit(&t, &generators, cli.cap)
}

fn parse_sets(text: &str) -> Result<(BTreeSet<u32>, BTreeSet<u32>)> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != 2 {
        return Err(Error::Parse {
            offset: 0,
            message: "expected two `;`-separated index sets".into(),
        });
    }
    let parse_one = |s: &str| -> Result<BTreeSet<u32>> {
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                p.trim().parse::<u32>().map_err(|_| Error::Parse {
                    offset: 0,
                    message: format!("bad index `{p}`"),
                })
            })
            .collect()
    };
    Ok((parse_one(parts[0])?, parse_one(parts[1])?))
}

fn build_report(
    cli: &Cli,
    family: &str,
    bounds: Bounds,
    ld: Option<LdChoice>,
    samples: usize,
) -> Result<VerificationReport> {
    if family == "derived" {
        let start = std::time::Instant::now();
        let mut entries = Vec::new();
        for rel in derived_relations()? {
            entries.push((rel.label(), verify_seed(&rel)?));
        }
        return Ok(VerificationReport {
            family: "derived".to_string(),
            params: "method=seed".to_string(),
            entries,
            elapsed: start.elapsed(),
        });
    }
    let fam = Family::parse(family)?;
    match ld {
        None if fam.is_braided() => verify_family_braided(fam, bounds),
        None => verify_family_seed(fam, bounds),
        Some(choice) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.rng);
            match choice {
                LdChoice::Trivial => {
                    verify_family_sampled(fam, bounds, &TrivialLd, samples, &mut rng)
                }
                LdChoice::Conj => verify_family_sampled(fam, bounds, &ConjFree, samples, &mut rng),
                LdChoice::Bv => verify_family_sampled(fam, bounds, &BvLd, samples, &mut rng),
                LdChoice::Addcontrol => {
                    verify_family_sampled(fam, bounds, &AddControl, samples, &mut rng)
                }
            }
        }
    }
}

fn print_report(cli: &Cli, report: &VerificationReport) {
    if cli.porcelain {
        for line in report.machine_lines() {
            println!("{line}");
        }
        return;
    }
    for (label, verdict) in &report.entries {
        if !verdict.holds() {
            println!("{label}: {verdict}");
        }
    }
    let failures = report.failures().len();
    if failures == 0 {
        println!(
            "{} [{}]: {} relations checked, all hold",
            report.family,
            report.params,
            report.checked()
        );
    } else {
        println!(
            "{} [{}]: {} relations checked, {} FAILED",
            report.family,
            report.params,
            report.checked(),
            failures
        );
    }
}

fn run_ld_check(cli: &Cli, system: LdChoice, law: Law, samples: usize) -> Result<i32> {
    fn report<S: LdSystem>(
        cli: &Cli,
        sys: &S,
        law: Law,
        elems: &[S::Elem],
        show: impl Fn(&S::Elem) -> String,
    ) -> i32 {
        let verdict = match law {
            Law::Ld => check_ld(sys, elems),
            Law::Cancel => check_left_cancellative(sys, elems),
            Law::Involutory => check_involutory(sys, elems),
        };
        let law_name = match law {
            Law::Ld => "ld",
            Law::Cancel => "cancel",
            Law::Involutory => "involutory",
        };
        match verdict {
            Verdict::Holds { samples } => {
                if cli.porcelain {
                    println!("LAW;{law_name};{};HOLDS:{samples}", sys.name());
                } else {
                    println!("{law_name} holds over {} on {samples} samples", sys.name());
                }
                0
            }
            Verdict::Fails { witness, lhs, rhs } => {
                let witness: Vec<String> = witness.iter().map(&show).collect();
                if cli.porcelain {
                    println!(
                        "LAW;{law_name};{};FAILED:witness={} lhs={} rhs={}",
                        sys.name(),
                        witness.join(","),
                        show(&lhs),
                        show(&rhs)
                    );
                } else {
                    println!(
                        "{law_name} FAILS over {}: witness ({}), lhs {}, rhs {}",
                        sys.name(),
                        witness.join(", "),
                        show(&lhs),
                        show(&rhs)
                    );
                }
                1
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cli.rng);
    let code = match system {
        LdChoice::Trivial => {
            let elems: Vec<u32> = (0..samples as u32).collect();
            report(cli, &TrivialLd, law, &elems, |x| x.to_string())
        }
        LdChoice::Conj => {
            let mut elems = conj_samples();
            let gens = 3u32;
            while elems.len() < samples {
                let len = rand::Rng::gen_range(&mut rng, 1..=4);
                let mut w = lawgeom::free::FreeWord::identity();
                for _ in 0..len {
                    let g = rand::Rng::gen_range(&mut rng, 1..=gens);
                    let e = if rand::Rng::gen_bool(&mut rng, 0.5) { 1 } else { -1 };
                    w = w.mul(&lawgeom::free::FreeWord::generator_pow(g, e));
                }
                elems.push(w);
            }
            elems.truncate(samples.max(8));
            report(cli, &ConjFree, law, &elems, |x| x.to_string())
        }
        LdChoice::Bv => {
            let mut elems = lawgeom::bv::short_positive_words(2);
            elems.truncate(samples.max(4));
            report(cli, &BvLd, law, &elems, |x| x.to_string())
        }
        LdChoice::Addcontrol => {
            let elems: Vec<i64> = (0..samples as i64).collect();
            report(cli, &AddControl, law, &elems, |x| x.to_string())
        }
    };
    Ok(code)
}

fn run_bv(cli: &Cli, cmd: &BvCmd) -> Result<i32> {
    match cmd {
        BvCmd::Eq { word1, word2 } => {
            let (w1, w2) = (BvWord::parse(word1)?, BvWord::parse(word2)?);
            let probe = bv_equal_probed(&w1, &w2);
            if cli.porcelain {
                println!(
                    "BVEQ;{};{};{}",
                    probe.equal, probe.probe_leaves, probe.probe_depth
                );
            } else if probe.equal {
                println!(
                    "equal (probe: {} leaves, depth {})",
                    probe.probe_leaves, probe.probe_depth
                );
            } else {
                println!(
                    "NOT EQUAL (probe: {} leaves, depth {})",
                    probe.probe_leaves, probe.probe_depth
                );
            }
            Ok(if probe.equal { 0 } else { 1 })
        }
        BvCmd::Psi { word, gen, budget } => {
            let w = BvWord::parse(word)?;
            let gamma = Address::parse(gen)?;
            let image = psi(&w, &gamma, *budget)?;
            if cli.porcelain {
                println!("PSI;{gamma};{image}");
            } else {
                println!("{image}");
            }
            Ok(0)
        }
        BvCmd::Bracket { x, y } => {
            let result = bv_bracket(&BvWord::parse(x)?, &BvWord::parse(y)?);
            println!("{}", record(cli, "WORD", &result.to_string()));
            Ok(0)
        }
        BvCmd::F { tree, explicit, circle } => {
            let t = parse_bv_tree(tree)?;
            let result = if *circle {
                e_eval(&t)
            } else if *explicit {
                f_eval_explicit(&t)
            } else {
                f_eval(&t)
            };
            println!("{}", record(cli, "WORD", &result.to_string()));
            Ok(0)
        }
    }
}

/// Parses a tree whose leaves are quoted braided words:
/// `tree := "word" | ( tree WS tree )`.
fn parse_bv_tree(text: &str) -> Result<Tree<BvWord>> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let t = parse_bv_tree_at(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(Error::Parse { offset: pos, message: "trailing input after tree".into() });
    }
    Ok(t)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_bv_tree_at(bytes: &[u8], pos: &mut usize) -> Result<Tree<BvWord>> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'(') => {
            *pos += 1;
            let left = parse_bv_tree_at(bytes, pos)?;
            let right = parse_bv_tree_at(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b')') {
                return Err(Error::Parse { offset: *pos, message: "expected `)`".into() });
            }
            *pos += 1;
            Ok(Tree::node(left, right))
        }
        Some(b'"') => {
            *pos += 1;
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos] != b'"' {
                *pos += 1;
            }
            if *pos == bytes.len() {
                return Err(Error::Parse { offset: start, message: "unterminated quote".into() });
            }
            let inner = std::str::from_utf8(&bytes[start..*pos]).map_err(|_| Error::Parse {
                offset: start,
                message: "leaf word is not UTF-8".into(),
            })?;
            *pos += 1;
            Ok(Tree::Leaf(BvWord::parse(inner)?))
        }
        _ => Err(Error::Parse {
            offset: *pos,
            message: "expected `(` or a quoted leaf word".into(),
        }),
    }
}

/// Deterministic DOT rendering: nodes in discovery order, one undirected
/// edge per unordered tree pair, labeled by the positive letter.
fn dot_graph(o: &Orbit) -> String {
    let mut out = String::from("graph orbit {\n");
    for (i, t) in o.trees.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", print_tree(t)));
    }
    let mut edges: Vec<(usize, usize, String)> = o
        .edges
        .iter()
        .map(|(i, g, j)| {
            let (a, b, positive) = if g.is_inverse() {
                (*j, *i, g.inverse())
            } else {
                (*i, *j, g.clone())
            };
            (a, b, positive.to_string())
        })
        .collect();
    edges.sort();
    edges.dedup();
    for (a, b, label) in edges {
        out.push_str(&format!("  n{a} -- n{b} [label=\"{label}\"];\n"));
    }
    out.push_str("}\n");
    out
}
