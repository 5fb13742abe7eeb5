use std::fs;
use std::path::Path;

use buchi_core::nevanlinna::{self, PadicContext, Target};
use buchi_core::reduction::{
    self, bounded_equisat_range, compile, parse, print_formulas, EquisatReport, FormulaMode,
    SourceSystem, TargetSystem, Witness,
};
use buchi_core::sequences::{self, classify_trivial, second_difference, BuchiSequence, SignChoice};
use buchi_core::surfaces::{
    self, counterexample_family, scan_coefficients, scan_part, BuchiSurface, EvaluationNodes,
    MonicQuadratic, ProjectivePoint, ScanReport,
};
use buchi_core::symbolic::{parse_ratfunc, parse_upoly, RatFunc};
use buchi_core::{BigInt, Rat};
use serde::Serialize;

use crate::args::{Cli, Command, Emit, Mode, PadicCommand, SeqCommand, SurfaceCommand};
use crate::output::{self, num, Render};
use crate::parallel::{map_ranges, worker_count};
use crate::{CliError, Outcome};

type Result<T> = std::result::Result<T, CliError>;

fn render<T: Serialize + Render>(value: &T, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string(value).expect("serializable");
        s.push('\n');
        s
    } else {
        value.text()
    }
}

fn ok<T: Serialize + Render>(value: &T, json: bool) -> Result<Outcome> {
    Ok(Outcome {
        body: render(value, json),
        code: 0,
    })
}

fn strs<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Seq(cmd) => run_seq(cmd, json),
        Command::Surface(cmd) => run_surface(cmd, json),
        Command::Padic(cmd) => run_padic(cmd, json),
        Command::Compile(a) => {
            let sys = read_source(&a.input)?;
            let target = compile_source(&sys, a.m)?;
            let as_json = a.emit.map_or(json, |e| e == Emit::Json);
            let body = if as_json {
                let mut s = serde_json::to_string(&target_record(&target)).expect("serializable");
                s.push('\n');
                s
            } else {
                target.to_string()
            };
            Ok(Outcome { body, code: 0 })
        }
        Command::Check(a) => {
            let sys = read_source(&a.input)?;
            let target = compile_source(&sys, a.m)?;
            let total = reduction::assignment_count(&sys, a.box_size).map_err(CliError::domain)?;
            let parts = map_ranges(total, worker_count(), |r| {
                bounded_equisat_range(&sys, &target, a.box_size, r)
            });
            let parts = parts
                .into_iter()
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(CliError::domain)?;
            let report = EquisatReport::merge(a.box_size, a.m, parts);
            let record = output::Check {
                box_size: a.box_size,
                m: a.m,
                conditional: target.conditional_tag(),
                assignments: report.assignments,
                solutions: report.solutions.iter().map(witness_record).collect(),
                lifted: report.lifted,
                spurious: report.spurious.iter().map(witness_record).collect(),
                inconclusive: report.inconclusive,
                pass: report.passed(),
            };
            Ok(Outcome {
                body: render(&record, json),
                code: if record.pass { 0 } else { 1 },
            })
        }
        Command::Formulas(a) => {
            let mode = match a.mode {
                Mode::F => FormulaMode::F,
                Mode::G => FormulaMode::G,
                Mode::H => FormulaMode::H,
                Mode::Psi => FormulaMode::Psi,
            };
            let m = a.m.unwrap_or(match mode {
                FormulaMode::Psi => reduction::DEFAULT_M,
                _ => reduction::MEROMORPHIC_M,
            });
            let deltas = a.deltas.as_ref().map(|d| d.0.as_slice());
            if deltas.is_some() && mode != FormulaMode::Psi {
                return Err(CliError::Usage("--deltas only applies to --mode Psi".into()));
            }
            let f = print_formulas(mode, m, deltas).map_err(CliError::domain)?;
            let body = if json {
                let record = output::Formula {
                    mode: f.mode.to_string(),
                    m: f.m,
                    banner: f.banner.clone(),
                    lines: f.lines.clone(),
                    bound_vars: f.bound_vars,
                    recurrence_conjuncts: f.recurrence_conjuncts,
                };
                serde_json::to_string(&record).expect("serializable") + "\n"
            } else {
                f.to_string()
            };
            Ok(Outcome { body, code: 0 })
        }
    }
}

/// [`sequences::search`] with rows split across [`worker_count`] threads.
pub fn search_parallel(m: usize, bound: u64) -> std::result::Result<Vec<BuchiSequence>, sequences::SequenceError> {
    let rows = bound.saturating_add(1);
    let parts = map_ranges(rows, worker_count(), |r| sequences::search_rows(m, bound, r));
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn run_seq(cmd: &SeqCommand, json: bool) -> Result<Outcome> {
    match cmd {
        SeqCommand::Search { length, bound } => {
            let found = search_parallel(*length, *bound).map_err(CliError::domain)?;
            let record = output::SeqSearch {
                length: *length,
                bound: *bound,
                nontrivial: found
                    .iter()
                    .map(|s| s.values().iter().map(num).collect())
                    .collect(),
            };
            ok(&record, json)
        }
        SeqCommand::Verify { values } => {
            let values = &values.0;
            let squares: Vec<BigInt> = values.iter().map(|x| x * x).collect();
            let diffs = second_difference(&squares).map_err(CliError::domain)?;
            let two = BigInt::from(2);
            let buchi = diffs.iter().all(|d| *d == two);
            let nu = if buchi {
                let seq = BuchiSequence::new(values.clone()).map_err(CliError::domain)?;
                classify_trivial(&seq).map(|w| w.nu)
            } else {
                None
            };
            let record = output::SeqVerify {
                values: values.iter().map(num).collect(),
                second_differences: diffs.iter().map(num).collect(),
                buchi,
                trivial: buchi.then_some(nu.is_some()),
                nu: nu.map(num),
            };
            ok(&record, json)
        }
    }
}

fn surface_record(surface: &BuchiSurface, point: &ProjectivePoint) -> Result<output::SurfaceCheck> {
    let on_surface = surface.contains(point).map_err(CliError::domain)?;
    let jacobian_rank = if on_surface {
        Some(surface.jacobian_rank(point).map_err(CliError::domain)?)
    } else {
        None
    };
    let trivial_line = surface
        .trivial_line_member(point)
        .map_err(CliError::domain)?
        .map(|hit| output::TrivialLine {
            signs: hit
                .signs
                .iter()
                .map(|s| match s {
                    SignChoice::Plus => "+".to_string(),
                    SignChoice::Minus => "-".to_string(),
                })
                .collect(),
            nu: hit.nu.map(|n| n.to_string()),
        });
    Ok(output::SurfaceCheck {
        deltas: strs(surface.deltas()),
        point: strs(point.coords()),
        on_surface,
        jacobian_rank,
        trivial_line,
    })
}

fn quadratic_record(f: &MonicQuadratic) -> output::Quadratic {
    output::Quadratic {
        u: f.u.to_string(),
        v: f.v.to_string(),
        text: f.to_string(),
    }
}

fn run_surface(cmd: &SurfaceCommand, json: bool) -> Result<Outcome> {
    match cmd {
        SurfaceCommand::Check { deltas, point } => {
            let surface = BuchiSurface::new(deltas.0.clone()).map_err(CliError::domain)?;
            let point = ProjectivePoint::new(point.0.clone()).map_err(CliError::domain)?;
            ok(&surface_record(&surface, &point)?, json)
        }
        SurfaceCommand::Line { deltas, nu, point } => {
            let surface = BuchiSurface::new(deltas.0.clone()).map_err(CliError::domain)?;
            let point = match (nu, point) {
                (Some(nu), _) => surface.trivial_point(nu),
                (None, Some(p)) => ProjectivePoint::new(p.0.clone()).map_err(CliError::domain)?,
                (None, None) => return Err(CliError::Usage("give --nu or --point".into())),
            };
            ok(&surface_record(&surface, &point)?, json)
        }
        SurfaceCommand::Scan {
            nodes,
            height,
            integers_only,
        } => {
            let eval_nodes = EvaluationNodes::new(nodes.0.clone()).map_err(CliError::domain)?;
            if eval_nodes.len() < 3 {
                return Err(CliError::domain(surfaces::SurfaceError::TooFewNodes {
                    min: 3,
                    found: eval_nodes.len(),
                }));
            }
            let us = scan_coefficients(*height, *integers_only);
            let parts = map_ranges(us.len() as u64, worker_count(), |r| {
                scan_part(&eval_nodes, *height, *integers_only, &us[r.start as usize..r.end as usize])
            });
            let report = ScanReport::merge(*height, *integers_only, parts);
            let record = output::Scan {
                nodes: strs(eval_nodes.nodes()),
                height: report.height,
                integers_only: report.integers_only,
                examined: report.examined,
                candidates: report.candidates.iter().map(quadratic_record).collect(),
                growth: report
                    .growth
                    .iter()
                    .map(|g| output::Growth {
                        height: g.height,
                        cumulative: g.cumulative,
                    })
                    .collect(),
            };
            ok(&record, json)
        }
        SurfaceCommand::Family { n } => {
            let fam = counterexample_family(*n)
                .ok_or_else(|| CliError::Domain(format!("construction check failed for N = {n}")))?;
            let record = output::Family {
                n: *n,
                f: quadratic_record(&fam.f),
                nodes: fam.nodes.iter().map(num).collect(),
                roots: fam.roots.iter().map(num).collect(),
            };
            ok(&record, json)
        }
    }
}

fn context(p: u64) -> Result<PadicContext> {
    PadicContext::new(p).map_err(CliError::domain)
}

fn ratfunc(src: &str) -> Result<RatFunc> {
    parse_ratfunc(src).map_err(CliError::domain)
}

fn nev<T>(r: std::result::Result<T, nevanlinna::NevanlinnaError>) -> Result<T> {
    r.map_err(CliError::domain)
}

fn grid(values: &[(Rat, Rat)]) -> Vec<output::GridValue> {
    values
        .iter()
        .map(|(rho, v)| output::GridValue {
            rho: rho.to_string(),
            value: v.to_string(),
        })
        .collect()
}

fn run_padic(cmd: &PadicCommand, json: bool) -> Result<Outcome> {
    match cmd {
        PadicCommand::Norm { prime, poly, rho } => {
            let ctx = context(prime.p)?;
            let f = ratfunc(poly)?;
            let value = nev(ctx.ratfunc_log_norm(&f, rho))?;
            ok(
                &output::Norm {
                    p: prime.p,
                    f: f.to_string(),
                    rho: rho.to_string(),
                    log_norm: value.to_string(),
                },
                json,
            )
        }
        PadicCommand::Zeros { prime, poly, rho } => {
            let ctx = context(prime.p)?;
            let h = parse_upoly(poly).map_err(CliError::domain)?;
            let zeros = nev(ctx.count_zeros(&h, rho))?;
            let np = nev(ctx.newton_polygon(&h))?;
            ok(
                &output::Zeros {
                    p: prime.p,
                    poly: h.to_string(),
                    rho: rho.to_string(),
                    zeros,
                    order_at_zero: np.order_at_zero,
                    segments: np
                        .segments
                        .iter()
                        .map(|s| output::Segment {
                            root_valuation: s.root_valuation().to_string(),
                            length: s.length,
                        })
                        .collect(),
                },
                json,
            )
        }
        PadicCommand::Pjf {
            prime,
            num: n,
            den,
            rhos,
        } => {
            let ctx = context(prime.p)?;
            let f = ratfunc(n)?
                .checked_div(&ratfunc(den)?)
                .map_err(CliError::domain)?;
            let constant = nev(ctx.check_pjf(&f, &rhos.0))?;
            let rows = rhos
                .0
                .iter()
                .map(|rho| {
                    Ok(output::PjfRow {
                        rho: rho.to_string(),
                        log_norm: nev(ctx.ratfunc_log_norm(&f, rho))?.to_string(),
                        n_zeros: nev(ctx.height_n(&f, &Target::Zero, rho))?.to_string(),
                        n_poles: nev(ctx.height_n(&f, &Target::Infinity, rho))?.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            ok(
                &output::Pjf {
                    p: prime.p,
                    f: f.to_string(),
                    rows,
                    constant: constant.to_string(),
                },
                json,
            )
        }
        PadicCommand::Ldl { prime, f, n, rho } => {
            let ctx = context(prime.p)?;
            let func = ratfunc(f)?;
            let holds = nev(ctx.check_ldl(&func, *n, rho))?;
            let d = func.nth_derivative(*n);
            let log_ratio = if d.is_zero() {
                None
            } else {
                let ratio = d.checked_div(&func).map_err(CliError::domain)?;
                Some(nev(ctx.ratfunc_log_norm(&ratio, rho))?.to_string())
            };
            let bound = -(Rat::from_integer(BigInt::from(*n)) * rho);
            ok(
                &output::Ldl {
                    p: prime.p,
                    f: func.to_string(),
                    n: *n,
                    rho: rho.to_string(),
                    log_ratio,
                    bound: bound.to_string(),
                    holds,
                },
                json,
            )
        }
        PadicCommand::Fmt { prime, f, a, rhos } => {
            let ctx = context(prime.p)?;
            let func = ratfunc(f)?;
            let r = nev(ctx.check_fmt(&func, a, &rhos.0))?;
            ok(
                &output::Fmt {
                    p: prime.p,
                    f: func.to_string(),
                    a: a.to_string(),
                    defects: grid(&r.defects),
                    spread: r.spread.to_string(),
                    settle_rho: r.settle_rho.to_string(),
                    tail_slope: r.tail_slope.to_string(),
                    tail_value: r.tail_value.to_string(),
                    stabilized: r.stabilized,
                },
                json,
            )
        }
        PadicCommand::Smt {
            prime,
            f,
            targets,
            rhos,
        } => {
            let ctx = context(prime.p)?;
            let func = ratfunc(f)?;
            let r = nev(ctx.check_smt(&func, &targets.0, &rhos.0))?;
            ok(
                &output::Smt {
                    p: prime.p,
                    f: func.to_string(),
                    targets: strs(&targets.0),
                    values: grid(&r.values),
                    sup: r.sup.to_string(),
                    settle_rho: r.settle_rho.to_string(),
                    tail_slope: r.tail_slope.to_string(),
                    bounded: r.bounded,
                },
                json,
            )
        }
        PadicCommand::Delta { f, u, a, b } => {
            let func = ratfunc(f)?;
            let u = ratfunc(u)?;
            let g = nevanlinna::pizarra_g(&func, a, &u);
            let (delta, four_u_delta_u) = nevanlinna::delta_sides(&func, &u, a);
            let difference_identity = b.as_ref().map(|b| {
                let h_a_sq = &u * &u;
                let shifted = &func + &RatFunc::constant(b.clone());
                let h_b_sq = &shifted * &shifted - &g;
                nevanlinna::difference_identity(&func, a, b, &h_a_sq, &h_b_sq)
            });
            ok(
                &output::Delta {
                    f: func.to_string(),
                    u: u.to_string(),
                    a: a.to_string(),
                    g: g.to_string(),
                    delta_identity: delta == four_u_delta_u,
                    delta: delta.to_string(),
                    four_u_delta_u: four_u_delta_u.to_string(),
                    b: b.as_ref().map(ToString::to_string),
                    difference_identity,
                },
                json,
            )
        }
    }
}

fn read_source(path: &Path) -> Result<SourceSystem> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

/// [`compile`] with the error mapped for the command line.
pub fn compile_source(sys: &SourceSystem, m: usize) -> Result<TargetSystem> {
    compile(sys, m).map_err(CliError::domain)
}

fn witness_record(w: &Witness) -> std::collections::BTreeMap<String, serde_json::Number> {
    w.iter().map(|(k, v)| (k.clone(), num(v))).collect()
}

fn target_record(t: &TargetSystem) -> output::Target {
    output::Target {
        vars: t.vars.clone(),
        linear: t
            .linear
            .iter()
            .map(|eq| output::LinearOut {
                coeffs: eq.coeffs.iter().map(|(k, v)| (k.clone(), num(v))).collect(),
                constant: num(&eq.constant),
            })
            .collect(),
        squares: t
            .squares
            .iter()
            .map(|sq| output::SquareOut {
                lhs: sq.lhs.clone(),
                rhs: sq.rhs.clone(),
            })
            .collect(),
        meta: output::TargetMeta {
            m: t.m,
            conditional: t.conditional_tag(),
            source_vars: t.stats.source_vars,
            temps: t.stats.temps,
            multiplications: t.stats.multiplications,
            squarings: t.stats.squarings,
            target_vars: t.stats.target_vars,
            size_bound: t.stats.size_bound(t.m),
        },
    }
}
