use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use ttfkit_core::abelian::{
    abelianization, dual_description, dual_group, duality_criteria, embed_rank,
    evaluation_is_isomorphism, smith_normal_form, AbelianError, FinAbGroup, FinAbInvariants,
    IntMatrix, ProfAbData,
};
use ttfkit_core::approx::{
    build_torsion_free_quotient, fiber_product, is_p_torsion_free_over, ApproxError, ApproxSystem,
};
use ttfkit_core::field::{FieldError, FiniteField};
use ttfkit_core::fp::{
    builtin_from_spec, free_product, parse_presentation, FpError, GroupPresentation,
    DEFAULT_BUDGET, DEFAULT_NODE_BUDGET,
};
use ttfkit_core::galois::{
    fixed_ring_check, galois_criterion, inertia_at_point, make_stage, orbit,
    separability_basis_check, GaloisError, LaurentStage, StageGroupElement,
};
use ttfkit_core::ttf::{
    certify_weak_ttf_with, check_designated_subgroup, TtfError, TtfOptions, TtfStatus, TtfWitness,
};
use ttfkit_core::virtab::{
    cycle_notation, element_order, embed_sigma_lattice, is_torsion_free, kk_embed_with,
    VirtAbError, VirtAbGroup, WreathConvention,
};
use ttfkit_core::witt::{
    artin_schreier_cokernel, check_ftilde_equals_ftilde_v, p_divisibility_stage,
    witt_polys_guarded, StageCheck, WittError, DEFAULT_MAX_LEVEL,
};

use crate::formats::{self, format_element, parse_element, FormatError};
use crate::report::{Fields, Report, Status, Value};
use crate::{
    read, AbCommand, ApproxCommand, Command, Convention, EmbedCommand, GaloisCommand, StageArgs,
    TtfCommand, VirtabCommand, WittArgs, WittCommand,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("{0}: {1}")]
    Format(String, FormatError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error(transparent)]
    Ttf(#[from] TtfError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    VirtAb(#[from] VirtAbError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

type Result<T> = std::result::Result<T, CliError>;

pub fn dispatch(command: Command) -> Result<Report> {
    match command {
        Command::Ttf(c) => ttf(c),
        Command::Ab(c) => ab(c),
        Command::Virtab(c) => virtab(c),
        Command::Approx(c) => approx(c),
        Command::Witt(c) => witt(c),
        Command::Galois(c) => galois(c),
        Command::Embed(c) => embed(c),
    }
}

fn load_presentation(input: &str) -> Result<GroupPresentation> {
    if let Some(spec) = input.strip_prefix("builtin:") {
        return Ok(builtin_from_spec(spec)?);
    }
    let text = read(Path::new(input))?;
    parse_presentation(&text).map_err(|e| CliError::Input(format!("{input}: {e}")))
}

fn load_vab(path: &Path) -> Result<VirtAbGroup> {
    formats::parse_vab(&read(path)?).map_err(|e| CliError::Format(path.display().to_string(), e))
}

fn load_as(path: &Path) -> Result<ApproxSystem> {
    formats::parse_as(&read(path)?).map_err(|e| CliError::Format(path.display().to_string(), e))
}

fn load_sub(path: &Path) -> Result<Vec<StageGroupElement>> {
    formats::parse_sub(&read(path)?).map_err(|e| CliError::Format(path.display().to_string(), e))
}

fn invariants(f: Fields, inv: &FinAbInvariants) -> Fields {
    f.field(
        "abelianization",
        if inv.is_trivial() {
            "0".to_string()
        } else {
            inv.to_string()
        },
    )
    .field("rank", inv.rank())
    .list("torsion", inv.torsion())
}

fn text_lines(text: &str) -> Value {
    Value::scalars(text.lines())
}

fn presentation_fields(p: &GroupPresentation) -> Fields {
    Fields::new()
        .field("group", p.name().unwrap_or("anonymous"))
        .field("generators", p.generator_count())
        .field("relators", p.relators().len())
}

fn witness_fields(p: &GroupPresentation, w: &TtfWitness) -> Fields {
    let f = Fields::new().field("index", w.table.index());
    invariants(f, &w.invariants)
        .list(
            "subgroup-generators",
            w.schreier.generator_words.iter().map(|x| {
                let s = p.format_word(x);
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            }),
        )
        .value("coset-action", text_lines(&w.table.to_string()))
}

fn ttf(c: TtfCommand) -> Result<Report> {
    match c {
        TtfCommand::Check {
            inputs,
            max_index,
            budget,
            all_witnesses,
            conjugacy_reps,
        } => {
            let mut pres = load_presentation(&inputs[0])?;
            for other in &inputs[1..] {
                pres = free_product(&pres, &load_presentation(other)?);
            }
            let opts = TtfOptions {
                budget: budget.unwrap_or(DEFAULT_NODE_BUDGET),
                all_witnesses,
                conjugacy_representatives: conjugacy_reps,
                ..TtfOptions::new(max_index)
            };
            let base = presentation_fields(&pres).field("max-index", max_index);
            let v = match certify_weak_ttf_with(&pres, opts) {
                Ok(v) => v,
                Err(TtfError::BudgetExceeded { index, stats }) => {
                    let f = base
                        .field("exhausted-at-index", index)
                        .field("subgroups-examined", stats.subgroups_examined)
                        .field("max-index-reached", stats.max_index_reached);
                    return Ok(Report::new(Status::BudgetExceeded, f));
                }
                Err(e) => return Err(e.into()),
            };
            let mut f = base
                .field("subgroups-examined", v.stats.subgroups_examined)
                .field("max-index-reached", v.stats.max_index_reached);
            let status = match v.status {
                TtfStatus::CertifiedUpTo(_) => Status::Certified,
                TtfStatus::Refuted => Status::Refuted,
            };
            if let Some(w) = &v.witness {
                w.reverify(&pres)?;
                f = f.section("witness", witness_fields(&pres, w));
            }
            if all_witnesses {
                let all = v
                    .all_witnesses
                    .iter()
                    .map(|w| Value::Map(witness_fields(&pres, w)));
                f = f.value("all-witnesses", Value::List(all.collect()));
            }
            Ok(Report::new(status, f))
        }
        TtfCommand::Subgroup {
            input,
            gens,
            budget,
        } => {
            let pres = load_presentation(&input)?;
            let words = gens
                .iter()
                .map(|g| pres.parse_word(g))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let f = presentation_fields(&pres).list("subgroup-generators", &gens);
            match check_designated_subgroup(&pres, &words, budget.unwrap_or(DEFAULT_BUDGET)) {
                Ok(inv) => {
                    let status = if inv.is_torsion_free() {
                        Status::Ok
                    } else {
                        Status::Refuted
                    };
                    Ok(Report::new(status, invariants(f, &inv)))
                }
                Err(TtfError::Fp(FpError::BudgetExceeded { budget })) => Ok(Report::new(
                    Status::BudgetExceeded,
                    f.field("coset-budget", budget),
                )),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn parse_rows(text: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<BigInt>> = text
        .split(';')
        .map(|r| {
            r.split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| CliError::Input(format!("bad integer `{t}`")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::Input("rows differ in length".into()));
    }
    Ok(IntMatrix::from_rows_with_cols(&rows, cols))
}

fn ab(c: AbCommand) -> Result<Report> {
    match c {
        AbCommand::Invariants { input } => {
            let pres = load_presentation(&input)?;
            let f = invariants(presentation_fields(&pres), &abelianization(&pres));
            Ok(Report::new(Status::Ok, f))
        }
        AbCommand::Snf { rows } => {
            let m = parse_rows(&rows)?;
            let s = smith_normal_form(&m);
            let verified =
                s.u.mul(&m).mul(&s.v) == s.d && s.u.is_unimodular() && s.v.is_unimodular();
            let f = Fields::new()
                .field("matrix", &m)
                .list("diagonal", s.diagonal())
                .field("rank", s.rank())
                .field("u", &s.u)
                .field("d", &s.d)
                .field("v", &s.v)
                .field("u-m-v-equals-d", verified);
            Ok(Report::new(Status::from_bool(verified), f))
        }
        AbCommand::Dual { moduli } => {
            let g = FinAbGroup::new(moduli)?;
            let d = dual_group(&g);
            let dd = dual_group(&d.group);
            let iso = evaluation_is_isomorphism(&g);
            let ok = iso && dd.group.invariants() == g.invariants() && d.group.order() == g.order();
            let f = Fields::new()
                .list("moduli", g.moduli())
                .field("order", g.order())
                .field("invariants", g.invariants())
                .list("dual-moduli", d.group.moduli())
                .field("dual-invariants", d.group.invariants())
                .field("double-dual-invariants", dd.group.invariants())
                .field("evaluation-isomorphism", iso);
            Ok(Report::new(Status::from_bool(ok), f))
        }
        AbCommand::Profinite { local, finite } => {
            let mut ranks = BTreeMap::new();
            for item in &local {
                let (p, r) = item
                    .split_once(':')
                    .and_then(|(p, r)| Some((p.parse::<u64>().ok()?, r.parse::<u32>().ok()?)))
                    .ok_or_else(|| CliError::Input(format!("expected `p:r`, found `{item}`")))?;
                if ranks.insert(p, r).is_some() {
                    return Err(CliError::Input(format!("prime {p} given twice")));
                }
            }
            let data = ProfAbData::new(ranks, FinAbInvariants::from_cyclic_orders(0, &finite))?;
            let (torsion_free, divisible) = duality_criteria(&data)?;
            let dual = dual_description(&data)?;
            let mut f = Fields::new()
                .list(
                    "local-ranks",
                    data.local_ranks().iter().map(|(p, r)| format!("Z_{p}^{r}")),
                )
                .field("finite-part", finite_label(data.finite_part()))
                .list(
                    "prufer-ranks",
                    dual.prufer_ranks
                        .iter()
                        .map(|(p, r)| format!("(Q_{p}/Z_{p})^{r}")),
                )
                .list("dual-finite-moduli", dual.finite.moduli())
                .field("torsion-free", torsion_free)
                .field("dual-divisible", divisible);
            if let Ok(e) = embed_rank(&data) {
                f = f.field("embed-rank", e.n);
            }
            Ok(Report::new(Status::from_bool(torsion_free == divisible), f))
        }
    }
}

fn finite_label(inv: &FinAbInvariants) -> String {
    if inv.is_trivial() {
        "0".into()
    } else {
        inv.to_string()
    }
}

fn group_fields(g: &VirtAbGroup) -> Fields {
    Fields::new()
        .field("quotient-order", g.quotient().order())
        .field("rank", g.rank())
}

fn virtab(c: VirtabCommand) -> Result<Report> {
    match c {
        VirtabCommand::Show { input } => {
            let g = load_vab(&input)?;
            let text = formats::write_vab(&g)
                .map_err(|e| CliError::Format(input.display().to_string(), e))?;
            Ok(Report::new(
                Status::Ok,
                group_fields(&g).value("data", text_lines(&text)),
            ))
        }
        VirtabCommand::Torsion { input } => {
            let g = load_vab(&input)?;
            let v = is_torsion_free(&g);
            let mut f = group_fields(&g).field("torsion-free", v.torsion_free);
            if let Some(w) = &v.witness {
                let order = element_order(&g, w).expect("witness has finite order");
                f = f.section(
                    "witness",
                    Fields::new()
                        .field("element", format_element(&g, w))
                        .field("order", order),
                );
            }
            Ok(Report::new(Status::from_bool(v.torsion_free), f))
        }
        VirtabCommand::Order { input, element } => {
            let g = load_vab(&input)?;
            let x = parse_element(&g, &element).map_err(|e| CliError::Input(e.message))?;
            let order = element_order(&g, &x).map_or("infinite".to_string(), |k| k.to_string());
            let f = group_fields(&g)
                .field("element", format_element(&g, &x))
                .field("order", order);
            Ok(Report::new(Status::Ok, f))
        }
    }
}

fn system_fields(s: &ApproxSystem) -> Result<Fields> {
    let text = formats::write_as(s).map_err(|e| CliError::Format("result".into(), e))?;
    Ok(group_fields(s.ghat())
        .field("target-order", s.g().order())
        .list(
            "kernel-generators",
            s.kernel_generators()
                .iter()
                .map(|k| format_element(s.ghat(), k)),
        )
        .value("system", text_lines(&text)))
}

fn target_label(s: &ApproxSystem, label: &str) -> Result<usize> {
    s.g()
        .index_of_label(label)
        .ok_or_else(|| CliError::Input(format!("`{label}` is not an element of the target group")))
}

fn approx(c: ApproxCommand) -> Result<Report> {
    match c {
        ApproxCommand::Check { input, p, g } => {
            let s = load_as(&input)?;
            let gi = target_label(&s, &g)?;
            let v = is_p_torsion_free_over(&s, p, gi)?;
            let mut f = Fields::new()
                .field("p", p)
                .field("g", &g)
                .field("torsion-free", v.torsion_free);
            if let Some(w) = &v.witness {
                f = f.field("witness", format_element(s.ghat(), w));
            }
            Ok(Report::new(Status::from_bool(v.torsion_free), f))
        }
        ApproxCommand::Fiber { first, second } => {
            let f = fiber_product(&load_as(&first)?, &load_as(&second)?)?;
            Ok(Report::new(Status::Ok, system_fields(&f)?))
        }
        ApproxCommand::Build { systems, pairs } => {
            let systems = systems
                .iter()
                .map(|p| load_as(p))
                .collect::<Result<Vec<_>>>()?;
            let first = &systems[0];
            let mut parsed = Vec::new();
            for item in &pairs {
                let (p, g) = item.split_once(':').ok_or_else(|| {
                    CliError::Input(format!("expected `p:label`, found `{item}`"))
                })?;
                let p = p
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad prime `{p}`")))?;
                parsed.push((p, target_label(first, g)?));
            }
            let label = |g: usize| first.g().label(g).to_string();
            let base = Fields::new()
                .field("systems", systems.len())
                .list("pairs", &pairs);
            match build_torsion_free_quotient(&systems, &parsed) {
                Ok(out) => {
                    let reports = out.pairs.iter().map(|r| {
                        Value::Map(
                            Fields::new()
                                .field("p", r.p)
                                .field("g", label(r.g))
                                .list("covered-by", &r.covered_by)
                                .field("folded-torsion-free", r.folded_torsion_free),
                        )
                    });
                    let mut f = base
                        .list("fold-order", &out.fold_order)
                        .value("pair-reports", Value::List(reports.collect()))
                        .field("certified-torsion-free", out.certification.torsion_free);
                    for (k, v) in system_fields(&out.system)?.0 {
                        f.push(&k, v);
                    }
                    Ok(Report::new(Status::Certified, f))
                }
                Err(
                    e @ (ApproxError::UncoveredPair { .. } | ApproxError::CertificationFailed(_)),
                ) => Ok(Report::new(Status::Refuted, base.field("reason", e))),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn field_order(a: WittArgs) -> Result<u64> {
    Ok(FiniteField::new(a.p, a.deg)?.order())
}

/// Size guards surface as budget exhaustion rather than input errors.
fn witt_budget(e: WittError, base: Fields) -> Result<Report> {
    match e {
        WittError::LevelGuard { .. } | WittError::TooLarge(_) => {
            Ok(Report::new(Status::BudgetExceeded, base.field("reason", e)))
        }
        e => Err(e.into()),
    }
}

fn stage_check(
    base: Fields,
    c: StageCheck,
    seed: u64,
    format: impl Fn(&ttfkit_core::witt::WittVector) -> String,
) -> Report {
    let mut f = base
        .field("holds", c.holds)
        .field("exhaustive", c.exhaustive)
        .field("checked", c.checked);
    if let Some(x) = &c.counterexample {
        f = f.field("counterexample", format(x));
    }
    let r = Report::new(Status::from_bool(c.holds), f);
    if c.exhaustive {
        r
    } else {
        r.with_seed(seed)
    }
}

fn witt(c: WittCommand) -> Result<Report> {
    match c {
        WittCommand::Coker(a) => {
            let q = field_order(a)?;
            let base = Fields::new().field("p", a.p).field("q", q).field("n", a.n);
            let c = match artin_schreier_cokernel(q, a.n) {
                Ok(c) => c,
                Err(e) => return witt_budget(e, base),
            };
            let field = FiniteField::with_order(q)?;
            let ring = ttfkit_core::witt::WittRing::unguarded(field, a.n)?;
            let f = base
                .field("order", c.order)
                .field("cokernel", c.invariants)
                .list(
                    "representatives",
                    c.representatives.iter().map(|x| ring.format(x)),
                )
                .list("v-transition", &c.transition)
                .field("transition-well-defined", c.transition_well_defined);
            Ok(Report::new(Status::Ok, f))
        }
        WittCommand::CheckFtilde { args, seed } | WittCommand::CheckDiv { args, seed } => {
            let div = matches!(c, WittCommand::CheckDiv { .. });
            let q = field_order(args)?;
            let base = Fields::new()
                .field("p", args.p)
                .field("q", q)
                .field("n", args.n);
            let result = if div {
                p_divisibility_stage(q, args.n, seed)
            } else {
                check_ftilde_equals_ftilde_v(q, args.n, seed)
            };
            let check = match result {
                Ok(c) => c,
                Err(e) => return witt_budget(e, base),
            };
            let ring = ttfkit_core::witt::WittRing::unguarded(FiniteField::with_order(q)?, args.n)?;
            Ok(stage_check(base, check, seed, |x| ring.format(x)))
        }
        WittCommand::Polys { p, n } => {
            let base = Fields::new().field("p", p).field("n", n);
            let polys = match witt_polys_guarded(p, n, DEFAULT_MAX_LEVEL) {
                Ok(w) => w,
                Err(e) => return witt_budget(e, base),
            };
            let shown = |v: &[ttfkit_core::witt::Poly], xy: bool| {
                v.iter()
                    .map(|x| if xy { x.display_xy() } else { x.to_string() })
                    .collect::<Vec<_>>()
            };
            let f = base
                .field("ghost-identities", polys.verify_ghost_identities())
                .list("sum", shown(&polys.sum, true))
                .list("product", shown(&polys.prod, true))
                .list("negation", shown(&polys.neg, false));
            Ok(Report::new(Status::Ok, f))
        }
    }
}

fn stage_of(a: StageArgs) -> Result<LaurentStage> {
    Ok(make_stage(a.q, a.n, a.s)?)
}

fn stage_fields(st: &LaurentStage) -> Fields {
    Fields::new()
        .field("q", st.q())
        .field("n", st.variables())
        .field("s", st.denominator())
        .field("theta", st.field().format(st.theta()))
}

fn point_text(st: &LaurentStage, pt: &[u32]) -> String {
    pt.iter()
        .map(|&x| st.field().format(x))
        .collect::<Vec<_>>()
        .join(" ")
}

fn galois(c: GaloisCommand) -> Result<Report> {
    match c {
        GaloisCommand::Check { stage, subgroup } => {
            let st = stage_of(stage)?;
            let gens = load_sub(&subgroup)?;
            let v = galois_criterion(&st, &gens)?;
            let mut f = stage_fields(&st)
                .list("generators", &gens)
                .field("subgroup-order", v.subgroup_order)
                .field("points-checked", v.points_checked)
                .field("galois", v.galois);
            if let Some((pt, g)) = &v.witness {
                f = f.section(
                    "witness",
                    Fields::new()
                        .field("point", point_text(&st, pt))
                        .field("inertia-element", g),
                );
            }
            Ok(Report::new(
                if v.galois {
                    Status::Certified
                } else {
                    Status::Refuted
                },
                f,
            ))
        }
        GaloisCommand::Inertia {
            stage,
            subgroup,
            point,
        } => {
            let st = stage_of(stage)?;
            let gens = load_sub(&subgroup)?;
            let pt = point
                .iter()
                .map(|x| {
                    st.field().parse(x).ok_or_else(|| {
                        CliError::Input(format!("`{x}` is not an element of F_{}", st.q()))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let r = inertia_at_point(&st, &gens, &pt)?;
            let orb = orbit(&st, &gens, &pt)?;
            let trivial = r.inertia.len() == 1;
            let f = stage_fields(&st)
                .field("point", point_text(&st, &pt))
                .field("orbit-size", orb.len())
                .list("decomposition", &r.decomposition)
                .list("inertia", &r.inertia)
                .field("inertia-trivial", trivial);
            Ok(Report::new(Status::from_bool(trivial), f))
        }
        GaloisCommand::Basis { stage, bound } => {
            let st = stage_of(stage)?;
            let bound = bound.unwrap_or(2 * st.denominator() as i64 + 1);
            let fixed = fixed_ring_check(&st, bound);
            let b = separability_basis_check(&st, bound);
            let basis = b
                .basis
                .iter()
                .map(|j| {
                    j.iter()
                        .enumerate()
                        .filter(|(_, &e)| e != 0)
                        .map(|(i, &e)| {
                            if e == 1 {
                                format!("u{}", i + 1)
                            } else {
                                format!("u{}^{e}", i + 1)
                            }
                        })
                        .collect::<Vec<_>>()
                        .join("*")
                })
                .map(|m| if m.is_empty() { "1".to_string() } else { m });
            let f = stage_fields(&st)
                .field("bound", bound)
                .field("fixed-ring", fixed)
                .list("basis", basis)
                .field("rank", b.basis.len())
                .field("spanning", b.spanning)
                .field("free", b.free)
                .field("character-matrix-invertible", b.character_matrix_invertible);
            Ok(Report::new(Status::from_bool(fixed && b.holds), f))
        }
    }
}

fn embed(c: EmbedCommand) -> Result<Report> {
    match c {
        EmbedCommand::Kk { input, convention } => {
            let g = load_vab(&input)?;
            let conv = match convention {
                Convention::Left => WreathConvention::LeftTranslation,
                Convention::RightInverse => WreathConvention::RightTranslationInverse,
            };
            let base = group_fields(&g).field(
                "convention",
                match convention {
                    Convention::Left => "left",
                    Convention::RightInverse => "right-inverse",
                },
            );
            let e = match kk_embed_with(&g, conv) {
                Ok(e) => e,
                Err(err @ VirtAbError::EmbeddingVerification(_)) => {
                    return Ok(Report::new(Status::False, base.field("reason", err)));
                }
                Err(err) => return Err(err.into()),
            };
            let r = &e.report;
            let images = g.generating_set().into_iter().map(|x| {
                format!(
                    "{} -> {}",
                    format_element(&g, &x),
                    format_element(&e.wreath, &e.map(&x))
                )
            });
            let f = base
                .field("wreath-rank", e.wreath.rank())
                .field("generator-pairs-checked", r.generator_pairs_checked)
                .field("random-products-checked", r.random_products_checked)
                .field("homomorphism", r.homomorphism)
                .field("commutes-with-projection", r.commutes_with_projection)
                .field("lattice-image-rank", r.lattice_image_rank)
                .field("lattice-injective", r.lattice_injective)
                .list("images", images);
            Ok(Report::new(Status::from_bool(r.passed()), f))
        }
        EmbedCommand::Sigma { input } => {
            let g = load_vab(&input)?;
            let e = embed_sigma_lattice(&g)?;
            let perms = (0..g.quotient().order()).map(|q| {
                format!(
                    "{} -> {}",
                    g.quotient().label(q),
                    cycle_notation(e.permutation(q))
                )
            });
            let images = g.generating_set().into_iter().map(|x| {
                let y = e.map(&x);
                let v: Vec<String> = y.v.iter().map(i64::to_string).collect();
                format!(
                    "{} -> {} | {}",
                    format_element(&g, &x),
                    cycle_notation(e.permutation(x.q)),
                    v.join(" ")
                )
            });
            let f = group_fields(&g)
                .field("degree", e.degree)
                .field("image-order", e.target.quotient().order())
                .list("permutations", perms)
                .list("images", images)
                .field("verified", e.report.passed());
            Ok(Report::new(Status::from_bool(e.report.passed()), f))
        }
    }
}
