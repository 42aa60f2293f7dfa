use std::fs;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wscat_core::boolring::{
    atoms_profile, in_loewy_ideal, loewy_profile, parse_descriptor, parse_element,
    quotient_by_loewy, random_element, uniformity_refuter, verify_split_tree, AlgebraError,
    AtomsBelow, BoolAlg,
};
use wscat_core::dcat::{ltg_check, spectrum, DObj, DcatError};
use wscat_core::dot::{filtration_dot, poset_dot};
use wscat_core::finposet::{FinPoset, SubsetMask, Topology};
use wscat_core::ordinal::Ordinal;
use wscat_core::refinement::{
    refine_cover, verify_filtration, CoverPiece, LocallyClosedCover, RefineError,
};
use wscat_core::report::Report;
use wscat_core::selftest::{run_criterion, CRITERIA, DEFAULT_SEED};
use wscat_core::stone::{
    cb_rank_of_prime, parse_prime, perfect_subset_is_perfect, spec_is_scattered,
    support_of_loewy_quotient, verify_loewy_spec_correspondence, SpecDescriptor,
};

use crate::{
    usage, AlgebraCmd, CertifyCmd, CliError, Command, DcatCmd, PosetCmd, RefineArgs,
    SelftestArgs, StoneCmd, EXIT_FAILED, EXIT_OK,
};

type Res = Result<i32, CliError>;

macro_rules! out {
    ($w:expr, $($arg:tt)*) => {
        writeln!($w, $($arg)*).map_err(|e| CliError::Internal(format!("write failed: {e}")))?
    };
}

pub(crate) fn dispatch(cmd: Command, w: &mut dyn Write) -> Res {
    match cmd {
        Command::Poset(PosetCmd::Info { file, dot }) => poset_info(&file, dot.as_deref(), w),
        Command::Poset(PosetCmd::Wvisible { file, subset }) => poset_wvisible(&file, &subset, w),
        Command::Refine(args) => refine(&args, w),
        Command::Algebra(AlgebraCmd::Profile { descriptor }) => algebra_profile(&descriptor, w),
        Command::Algebra(AlgebraCmd::Member {
            descriptor,
            element,
            alpha,
        }) => algebra_member(&descriptor, &element, &alpha, w),
        Command::Algebra(AlgebraCmd::Quotient { descriptor, alpha }) => {
            algebra_quotient(&descriptor, &alpha, w)
        }
        Command::Stone(StoneCmd::Cbrank { descriptor, prime }) => stone_cbrank(&descriptor, &prime, w),
        Command::Stone(StoneCmd::Verify {
            descriptor,
            alpha,
            samples,
            seed,
        }) => stone_verify(&descriptor, &alpha, samples, seed, w),
        Command::Stone(StoneCmd::Support { descriptor, grid }) => stone_support(&descriptor, grid, w),
        Command::Certify(CertifyCmd::Superdec {
            descriptor,
            depth,
            element,
        }) => superdec(&descriptor, depth, element.as_deref(), w),
        Command::Dcat(DcatCmd::Ltg {
            object,
            cover,
            base,
        }) => dcat_ltg(&object, &cover, base, w),
        Command::Selftest(args) => selftest(&args, w),
    }
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load_poset(path: &str) -> Result<FinPoset, CliError> {
    FinPoset::from_json(&read(path)?).map_err(usage)
}

fn report_out(r: &Report, w: &mut dyn Write) -> Res {
    write!(w, "{r}").map_err(|e| CliError::Internal(format!("write failed: {e}")))?;
    let failed = r.failures().count();
    if failed == 0 {
        out!(w, "all {} checks passed", r.checks.len());
    } else {
        out!(w, "{failed} of {} checks failed", r.checks.len());
    }
    Ok(r.exit_code())
}

fn poset_info(path: &str, dot: Option<&str>, w: &mut dyn Write) -> Res {
    let x = load_poset(path)?;
    out!(w, "points: {}", x.points().join(", "));
    let edges: Vec<String> = x
        .hasse_edges()
        .into_iter()
        .map(|(p, q)| format!("{} < {}", x.name(p), x.name(q)))
        .collect();
    out!(w, "covering relations: {}", if edges.is_empty() { "none".to_owned() } else { edges.join(", ") });
    for t in Topology::ALL {
        let prof = x.cb_rank_and_perfect(x.full(), t);
        let ranks: Vec<String> = (0..x.len())
            .map(|p| match prof.ranks.get(&p).copied().flatten() {
                Some(r) => format!("{}={r}", x.name(p)),
                None => format!("{}=perfect", x.name(p)),
            })
            .collect();
        let verdict = if prof.perfect.is_empty() { "scattered" } else { "not scattered" };
        out!(
            w,
            "{t}: ranks {}; perfect core {}; {verdict}",
            ranks.join(" "),
            x.format_subset(prof.perfect)
        );
    }
    if let Some(path) = dot {
        write_file(path, &poset_dot(&x, Topology::Inverse))?;
        out!(w, "wrote {path}");
    }
    Ok(EXIT_OK)
}

fn poset_wvisible(path: &str, subset: &str, w: &mut dyn Write) -> Res {
    let x = load_poset(path)?;
    let s = x.parse_subset(subset).map_err(usage)?;
    match x.weakly_visible_witness(s) {
        Some(wit) => {
            out!(
                w,
                "{} is weakly visible: Y1 = {}, Y2 = {}",
                x.format_subset(s),
                x.format_subset(wit.y1),
                x.format_subset(wit.y2)
            );
        }
        None => {
            let hull = x.up_closure(s) & x.down_closure(s);
            out!(
                w,
                "{} is not weakly visible: it is not convex (its convex hull is {})",
                x.format_subset(s),
                x.format_subset(hull)
            );
        }
    }
    Ok(EXIT_OK)
}

fn parse_cover(
    x: &FinPoset,
    t: Topology,
    c: SubsetMask,
    specs: &[String],
) -> Result<LocallyClosedCover, CliError> {
    let mut pieces = Vec::new();
    for spec in specs {
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "whole" => pieces.extend(LocallyClosedCover::whole(x).pieces),
                "singletons" => pieces.extend(LocallyClosedCover::singletons(x, t, c).pieces),
                _ => {
                    let s = x.parse_subset(part).map_err(usage)?;
                    let piece = CoverPiece::from_locally_closed(x, t, s).map_err(|e| match e {
                        RefineError::InvalidPiece { reason, .. } => {
                            CliError::Usage(format!("cover piece {part}: {reason}"))
                        }
                        other => usage(other),
                    })?;
                    pieces.push(piece);
                }
            }
        }
    }
    Ok(LocallyClosedCover::new(pieces))
}

fn refine(args: &RefineArgs, w: &mut dyn Write) -> Res {
    let x = load_poset(&args.file)?;
    let t: Topology = args.topology.parse().map_err(CliError::Usage)?;
    let c = x.parse_subset(&args.set).map_err(usage)?;
    let cover = parse_cover(&x, t, c, &args.cover)?;
    let f = match refine_cover(&x, t, c, &cover) {
        Ok(f) => f,
        Err(e @ RefineError::NotWeaklyScattered { .. }) => {
            out!(w, "refinement impossible: {e}");
            return Ok(EXIT_FAILED);
        }
        Err(e) => return Err(usage(e)),
    };
    out!(w, "{}", f.to_json(&x, t, c));
    out!(w, "δ = {}", f.delta);
    if let Some(path) = &args.dot {
        write_file(path, &filtration_dot(&x, c, &f))?;
        out!(w, "wrote {path}");
    }
    report_out(&verify_filtration(&x, t, c, &cover, &f), w)
}

fn descriptor(text: &str) -> Result<BoolAlg, CliError> {
    parse_descriptor(text).map_err(usage)
}

fn ordinal(text: &str) -> Result<Ordinal, CliError> {
    text.parse().map_err(usage)
}

fn algebra_profile(text: &str, w: &mut dyn Write) -> Res {
    let alg = descriptor(text)?;
    let norm = alg.normalized();
    let atoms = match atoms_profile(&norm, &norm.one()).map_err(usage)? {
        AtomsBelow::NoAtomsBelow => "none".to_owned(),
        AtomsBelow::FinitelyManyAtomsBelow(v) => {
            let list: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("{} ({})", v.len(), list.join(", "))
        }
        AtomsBelow::InfinitelyManyAtomsBelow => "infinitely many".to_owned(),
    };
    let prof = loewy_profile(&alg);
    let scattered = spec_is_scattered(&alg);
    let perfect = SpecDescriptor::DerivedSpec(norm.clone(), prof.stabilization.clone());
    out!(w, "algebra: {norm}");
    out!(w, "atoms: {atoms}");
    out!(
        w,
        "σ={}, {}, Spec {}",
        prof.stabilization,
        if prof.reaches_unit { "semi-artinian" } else { "not semi-artinian" },
        if scattered { "scattered" } else { "not scattered" }
    );
    out!(w, "perfect part: {perfect} = {}", perfect.normalized());
    if prof.reaches_unit != scattered {
        out!(w, "inconsistent: the Loewy series and the Stone space disagree");
        return Ok(EXIT_FAILED);
    }
    Ok(EXIT_OK)
}

fn algebra_member(text: &str, element: &str, alpha: &str, w: &mut dyn Write) -> Res {
    let alg = descriptor(text)?;
    let e = parse_element(&alg, element).map_err(usage)?;
    let alpha = ordinal(alpha)?;
    let inside = in_loewy_ideal(&alg, &e, &alpha).map_err(usage)?;
    out!(w, "{e} {} s_{alpha}({alg})", if inside { "∈" } else { "∉" });
    Ok(EXIT_OK)
}

fn algebra_quotient(text: &str, alpha: &str, w: &mut dyn Write) -> Res {
    let alg = descriptor(text)?;
    let alpha = ordinal(alpha)?;
    out!(w, "{alg} / s_{alpha} = {}", quotient_by_loewy(&alg, &alpha));
    Ok(EXIT_OK)
}

fn stone_cbrank(text: &str, prime: &str, w: &mut dyn Write) -> Res {
    let alg = descriptor(text)?;
    let p = parse_prime(&alg, prime).map_err(usage)?;
    out!(w, "rank({p}) = {}", cb_rank_of_prime(&alg, &p).map_err(usage)?);
    Ok(EXIT_OK)
}

fn stone_verify(text: &str, alpha: &str, samples: usize, seed: u64, w: &mut dyn Write) -> Res {
    let alg = descriptor(text)?.normalized();
    let alpha = ordinal(alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elems: Vec<_> = (0..samples).map(|_| random_element(&alg, &mut rng)).collect();
    out!(w, "{alg}, α = {alpha}, {samples} samples, seed {seed}");
    let r = verify_loewy_spec_correspondence(&alg, &alpha, &elems).map_err(|e| match e {
        AlgebraError::AlgebraMismatch { .. } => CliError::Internal(e.to_string()),
        other => usage(other),
    })?;
    report_out(&r, w)
}

fn stone_support(text: &str, grid: usize, w: &mut dyn Write) -> Res {
    let alg = descriptor(text)?;
    let res = support_of_loewy_quotient(&alg, grid);
    let perfect = perfect_subset_is_perfect(&alg);
    out!(
        w,
        "δ^{} Spec = {} ({})",
        res.sigma,
        res.support,
        if perfect { "perfect" } else { "not perfect" }
    );
    let mut r = res.report;
    r.check(
        "perfect support",
        "the support has no isolated points",
        (!perfect).then(|| res.support.to_string()),
    );
    report_out(&r, w)
}

fn superdec(text: &str, depth: usize, element: Option<&str>, w: &mut dyn Write) -> Res {
    let alg = descriptor(text)?.normalized();
    let e = match element {
        Some(s) => parse_element(&alg, s).map_err(usage)?,
        None => alg.one(),
    };
    match uniformity_refuter(&alg, &e, depth) {
        Ok(tree) => {
            out!(w, "{}", tree.render().trim_end());
            report_out(&verify_split_tree(&alg, &e, &tree, depth), w)
        }
        Err(AlgebraError::AtomEncountered(path)) => {
            out!(w, "no certificate below {e}: an atom is reached at {path}");
            Ok(EXIT_FAILED)
        }
        Err(other) => Err(usage(other)),
    }
}

/// One more than the largest `pN` mentioned in `texts`.
fn infer_base<'a>(texts: impl IntoIterator<Item = &'a str>) -> usize {
    let mut n = 0;
    for t in texts {
        for (i, _) in t.match_indices('p') {
            let digits: String = t[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(k) = digits.parse::<usize>() {
                n = n.max(k + 1);
            }
        }
    }
    n
}

fn dcat_ltg(object: &str, cover: &[String], base: Option<usize>, w: &mut dyn Write) -> Res {
    let n = base.unwrap_or_else(|| {
        infer_base(std::iter::once(object).chain(cover.iter().map(String::as_str)))
    });
    if n > 64 {
        return Err(CliError::Usage(format!("at most 64 primes supported, got {n}")));
    }
    let t = DObj::parse(n, object).map_err(usage)?;
    let x = spectrum(n);
    let mut members = Vec::new();
    for spec in cover {
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            members.push(x.parse_subset(part).map_err(usage)?);
        }
    }
    let outcome = match ltg_check(&t, &members) {
        Ok(o) => o,
        Err(e @ DcatError::CoverGap(_)) => return Err(usage(e)),
        Err(e) => return Err(CliError::Internal(e.to_string())),
    };
    out!(w, "t = {t} over k^{n}, supp t = {}", x.format_subset(t.supp()));
    out!(w, "{}", outcome.filtration.to_json(&x, Topology::Inverse, t.supp()));
    for (&(alpha, p), &u) in &outcome.filtration.pieces {
        out!(w, "piece ({alpha}, {}): t ⊗ g({}) = {}", x.name(p), x.format_subset(u), t.gamma(u));
    }
    report_out(&outcome.report, w)
}

fn selftest(args: &SelftestArgs, w: &mut dyn Write) -> Res {
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let ids: Vec<u8> = if args.only.is_empty() {
        CRITERIA.iter().map(|&(id, _)| id).collect()
    } else {
        args.only.clone()
    };
    out!(w, "seed {seed}{}", if args.seed.is_none() { " (default)" } else { "" });
    let mut code = EXIT_OK;
    for id in ids {
        let res = run_criterion(id, seed)
            .ok_or_else(|| CliError::Usage(format!("no criterion {id}; expected 1-9")))?;
        out!(w, "{res}");
        if args.verbose {
            for line in res.report.to_string().lines() {
                out!(w, "    {line}");
            }
        }
        if !res.passed() {
            code = EXIT_FAILED;
        }
    }
    Ok(code)
}
