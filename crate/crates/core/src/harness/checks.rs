//! Verification pipelines. Each returns a [`Report`]; hypothesis failures
//! are recorded but never stop the conclusion checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fusion::{fusion_equal, fusion_system, FusionSystem};
use crate::group::{is_power_of_two, Group, Subgroup};
use crate::linalg::{Field, Matrix};
use crate::modrep::{brauer_quotient, is_indecomposable, modules_isomorphic, IsoOutcome, Representation};
use crate::nilpotent::{find_hq, is_two_nilpotent_in};
use crate::scott::{has_trivial_top, scott, ScottModule};
use crate::semidihedral::{classify_subgroup, find_semidihedral_frame, SubgroupType};

use super::catalog::{frame_identification, CatalogGroup};
use super::report::{Certificate, Check, Report, SubgroupResult, Verdict};

/// Subgroup as `<generators>` in cycle notation.
pub fn describe(g: &Group, s: &Subgroup) -> String {
    if s.is_trivial() {
        return "1".into();
    }
    let gens: Vec<String> = s.generators().iter().map(|&a| g.perm(a).to_string()).collect();
    format!("<{}>", gens.join(", "))
}

fn type_name(g: &Group, q: &Subgroup) -> String {
    classify_subgroup(g, q).map_or_else(|_| format!("order {}", q.order()), |c| c.to_string())
}

fn matrix_json(m: &Matrix) -> serde_json::Value {
    let rows: Vec<Vec<u8>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect();
    json!(rows)
}

/// Per-`Q` outcome of the Brauer quotient test, with counterexample data
/// when the restriction decomposes.
struct BrauerOutcome {
    result: SubgroupResult,
    counterexample: Option<serde_json::Value>,
}

/// `M(Q)` restricted to `Q C_G(Q)`: indecomposable or zero passes.
fn brauer_at(
    g: &Group,
    m: &Representation,
    q: &Subgroup,
    fully_normalized: bool,
) -> Result<BrauerOutcome> {
    let mut result = SubgroupResult {
        subgroup: describe(g, q),
        order: q.order(),
        fully_normalized,
        brauer_dim: None,
        outcome: String::new(),
        verdict: Verdict::Pass,
        certificate: None,
        notes: vec![format!("type {}", type_name(g, q))],
    };
    let run = || -> Result<(usize, Option<crate::modrep::Indecomposability>, Representation)> {
        let br = brauer_quotient(m, q)?;
        let qc = g.join(q, &g.centralizer(q));
        let local = br.rep.group().localize(&br.normalizer, &qc)?;
        let res = br.rep.restrict(&local)?;
        if res.is_zero() {
            return Ok((0, None, res));
        }
        Ok((res.dim(), Some(is_indecomposable(&res)?), res))
    };
    match run() {
        Ok((dim, ind, res)) => {
            result.brauer_dim = Some(dim);
            let mut counterexample = None;
            match ind {
                None => result.outcome = "zero".into(),
                Some(ind) => {
                    result.certificate = Some(Certificate {
                        end_dim: ind.certificate.end_dim,
                        radical_dim: ind.certificate.radical_dim,
                        residue_dim: ind.certificate.residue_dim,
                        field_degree: ind.extended_to.unwrap_or(m.field().degree()),
                    });
                    if ind.indecomposable {
                        result.outcome = "indecomposable".into();
                    } else {
                        result.outcome = "decomposable".into();
                        result.verdict = Verdict::Fail;
                        let end = crate::modrep::end_basis(&res)?;
                        counterexample = Some(json!({
                            "group_generators": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                            "q": describe(g, q),
                            "restricted_module_generators": res.generator_matrices().iter().map(matrix_json).collect::<Vec<_>>(),
                            "end_basis": end.iter().map(matrix_json).collect::<Vec<_>>(),
                            "field_degree": res.field().degree(),
                        }));
                    }
                }
            }
            Ok(BrauerOutcome {
                result,
                counterexample,
            })
        }
        Err(e) if e.is_resource() => {
            result.outcome = "skipped".into();
            result.verdict = Verdict::Skipped(e.to_string());
            Ok(BrauerOutcome {
                result,
                counterexample: None,
            })
        }
        Err(e) => Err(e),
    }
}

/// Sanity assertions on an extracted Scott module.
fn scott_assertions(report: &mut Report, sc: &ScottModule) -> Result<()> {
    let g = sc.group();
    let fixed = crate::modrep::fixed_points(sc.rep(), &g.whole())?.dim();
    let coinv = {
        let d = sc.dim();
        let f = sc.rep().field();
        let mut span = crate::linalg::Subspace::zero(f, d);
        for a in sc.rep().generator_matrices() {
            let mut x = a.clone();
            x.add_scaled(1, &Matrix::identity(f, d))?;
            span = span.sum(&crate::linalg::Subspace::column_space(&x))?;
        }
        d - span.dim()
    };
    report.assertions.push(
        Check::new("Scott module contains the orbit sum", sc.contains_orbit_sum()).with_witness(
            format!("dim Sc = {} inside a permutation module of dim {}", sc.dim(), sc.parent.dim()),
        ),
    );
    report.assertions.push(Check::new(
        "Scott module has the trivial module in its top",
        has_trivial_top(sc.rep()),
    ));
    report.assertions.push(
        Check::new("Scott module: dim fixed points = dim coinvariants", fixed == coinv)
            .with_witness(format!("{fixed} and {coinv}")),
    );
    report.assertions.push(
        Check::new("Scott module is indecomposable (End/J = F)", sc.certificate.is_local()).with_witness(
            format!(
                "dim End = {}, dim J = {}",
                sc.certificate.end_dim, sc.certificate.radical_dim
            ),
        ),
    );
    Ok(())
}

/// Shared conclusion phase: `Sc(G, P)` and the Brauer test at one fully
/// normalized subgroup per `F_P(G)`-class.
fn brauer_phase(
    report: &mut Report,
    g: &Group,
    p: &Subgroup,
    fusion: &FusionSystem,
    field: Field,
    seed: u64,
) -> Result<(ScottModule, Vec<Subgroup>)> {
    let sc = report.time("scott", || scott(g, p, field, seed))?;
    scott_assertions(report, &sc)?;
    let reps = fusion.fully_normalized_representatives();
    let m = sc.rep().clone();
    let outcomes: Vec<Result<BrauerOutcome>> = report.time("brauer", || {
        reps.par_iter().map(|q| brauer_at(g, &m, q, true)).collect()
    });
    for o in outcomes {
        let o = o?;
        report.subgroup_results.push(o.result);
        report.counterexamples.extend(o.counterexample);
    }

    // one conjugate that is not the chosen representative
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<(usize, Subgroup)> = reps
        .iter()
        .enumerate()
        .filter_map(|(i, q)| {
            let class = fusion.class(q).ok()?;
            class.into_iter().find(|r| r != q).map(|r| (i, r))
        })
        .collect();
    if !candidates.is_empty() {
        let (i, other) = &candidates[rng.gen_range(0..candidates.len())];
        let expected = report.subgroup_results[*i].brauer_dim;
        let found = brauer_quotient(&m, other)?.dim();
        report.assertions.push(
            Check::new(
                "Brauer quotient dimension is constant on a conjugacy class",
                expected == Some(found),
            )
            .with_witness(format!(
                "{} vs {}: {:?} and {found}",
                report.subgroup_results[*i].subgroup,
                describe(g, other),
                expected
            )),
        );
    }
    Ok((sc, reps))
}

/// Extracts `Sc(G, H)` and checks it against the defining properties.
pub fn check_scott(name: &str, g: &Group, h: &Subgroup, field: Field, seed: u64) -> Result<Report> {
    let mut report = Report::new(format!("Sc(G, H), G = {name}, H = {}", describe(g, h)), seed);
    let sc = report.time("scott", || scott(g, h, field, seed))?;
    scott_assertions(&mut report, &sc)?;
    report.assertions.push(
        Check::new("Scott module extracted", true)
            .with_witness(format!("dim Sc = {}, dim F[G/H] = {}", sc.dim(), sc.parent.dim())),
    );
    report.finalize();
    Ok(report)
}

/// Brauer indecomposability of `Sc(G, P)`.
pub fn check_brauer_indecomposability(
    name: &str,
    g: &Group,
    p: &Subgroup,
    field: Field,
    seed: u64,
) -> Result<Report> {
    if !is_power_of_two(p.order()) {
        return Err(Error::Precondition("P must be a 2-subgroup".into()));
    }
    let mut report = Report::new(format!("Brauer indecomposability of Sc(G, P), G = {name}"), seed);
    let fusion = report.time("fusion", || fusion_system(g, p))?;
    brauer_phase(&mut report, g, p, &fusion, field, seed)?;
    report.finalize();
    Ok(report)
}

/// Hypotheses of the semidihedral criterion (saturation and 2-nilpotent
/// centralizers), its conclusion, and the `H_Q` construction.
pub fn check_theorem1(name: &str, g: &Group, p: &Subgroup, field: Field, seed: u64) -> Result<Report> {
    if find_semidihedral_frame(g, p).is_none() {
        return Err(Error::Precondition(format!(
            "P = {} is not semidihedral",
            describe(g, p)
        )));
    }
    let mut report = Report::new(format!("semidihedral criterion for Sc(G, P), G = {name}"), seed);
    let fusion = report.time("fusion", || fusion_system(g, p))?;
    let sat = report.time("saturation", || fusion.is_saturated());
    let mut check = Check::new("F_P(G) is saturated", sat.saturated);
    if let Some(w) = sat.witnesses.first() {
        check = check.with_witness(w.reason.clone());
    }
    report.hypotheses.push(check);

    let reps = fusion.fully_normalized_representatives();
    let nilpotent: Vec<bool> = report.time("centralizers", || {
        reps.par_iter()
            .map(|q| is_two_nilpotent_in(g, &g.centralizer(q)))
            .collect()
    });
    for (q, &ok) in reps.iter().zip(&nilpotent) {
        if q.is_trivial() {
            continue;
        }
        report.hypotheses.push(
            Check::new(format!("C_G(Q) is 2-nilpotent, Q = {}", describe(g, q)), ok)
                .with_witness(format!("|C_G(Q)| = {}", g.centralizer(q).order())),
        );
    }

    brauer_phase(&mut report, g, p, &fusion, field, seed)?;
    hq_assertions(&mut report, g, p, &reps, &nilpotent)?;
    report.finalize();
    Ok(report)
}

/// `find_hq` for every nontrivial representative with 2-nilpotent
/// centralizer; the others get a note on their subgroup result.
fn hq_assertions(
    report: &mut Report,
    g: &Group,
    p: &Subgroup,
    reps: &[Subgroup],
    nilpotent: &[bool],
) -> Result<()> {
    let witnesses: Vec<Option<Result<crate::nilpotent::HQWitness>>> = report.time("hq", || {
        reps.par_iter()
            .zip(nilpotent)
            .map(|(q, &ok)| (ok && !q.is_trivial()).then(|| find_hq(g, p, q)))
            .collect()
    });
    let mut any_s3 = false;
    let mut all_two = true;
    for (i, (q, w)) in reps.iter().zip(witnesses).enumerate() {
        let Some(w) = w else {
            if !q.is_trivial() {
                report.subgroup_results[i]
                    .notes
                    .push("H_Q not attempted: C_G(Q) is not 2-nilpotent".into());
            }
            continue;
        };
        let name = format!("H_Q exists for Q = {}", describe(g, q));
        match w {
            Ok(w) => {
                any_s3 |= w.path == crate::nilpotent::HQPath::S3Lift;
                all_two &= w.quotient_is_two_group;
                report.subgroup_results[i].notes.push(format!(
                    "H_Q via {:?}: |H_Q| = {}, index {}, |N_G(Q) : QC_G(Q)| = {}",
                    w.path,
                    w.h_q.order(),
                    w.index,
                    w.quotient_order
                ));
                report.assertions.push(Check::new(name, w.verify(g, p, q)).with_witness(format!(
                    "{:?}, index {}, quotient order {}",
                    w.path, w.index, w.quotient_order
                )));
            }
            Err(e) => report.assertions.push(Check::new(name, false).with_witness(e.to_string())),
        }
    }
    let note = if any_s3 {
        "at least one Q used the S3 lift".to_string()
    } else if all_two {
        "every N_G(Q)/QC_G(Q) was a 2-group, so the S3 lift was never needed".to_string()
    } else {
        "the S3 lift was not used".to_string()
    };
    report
        .assertions
        .push(Check::new("H_Q construction paths", any_s3 || all_two).with_witness(note));
    Ok(())
}

/// The product criterion for `Sc(G × G', ΔP)`, with `P` identified in both
/// factors through their semidihedral frames.
pub fn check_theorem2(left: &CatalogGroup, right: &CatalogGroup, field: Field, seed: u64) -> Result<Report> {
    let (f1, f2) = (left.require_frame()?, right.require_frame()?);
    let (g1, g2) = (&left.group, &right.group);
    let p1 = left.sylow.clone();
    let p2 = right.sylow.clone();
    let two1 = crate::group::two_part(g1.order());
    let two2 = crate::group::two_part(g2.order());
    if p1.order() != two1 || p2.order() != two2 {
        return Err(Error::Precondition("P must be a Sylow 2-subgroup of both groups".into()));
    }
    let ident = frame_identification(g1, f1, g2, f2)?;
    let mut report = Report::new(
        format!("Sc(G x G', delta P), G = {}, G' = {}", left.name, right.name),
        seed,
    );

    let (fa, fb) = report.time("fusion", || -> Result<(FusionSystem, FusionSystem)> {
        let (a, b) = rayon::join(|| fusion_system(g1, &p1), || fusion_system(g2, &p2));
        Ok((a?, b?))
    })?;
    let local: Vec<usize> = ident.iter().map(|&b| p2.position(b).expect("inside P'")).collect();
    let pushed = fa.transport(g2, &p2, &local)?;
    let equal = fusion_equal(&pushed, &fb)?;
    report.hypotheses.push(Check::new("F_P(G) = F_P(G')", equal));

    let h = CatalogGroup::product(left, right)?;
    let info = h.product.as_ref().expect("product");
    let dp = &info.dp;
    let hg = &h.group;
    let delta = dp.delta(&p1, &ident)?;
    let fusion = report.time("fusion", || fusion_system(hg, &delta))?;
    let sat = report.time("saturation", || fusion.is_saturated());
    report
        .assertions
        .push(Check::new("F_{delta P}(G x G') is saturated", sat.saturated));

    let (_, reps) = brauer_phase(&mut report, hg, &delta, &fusion, field, seed)?;

    let z_elt = f1.z(g1);
    let z = g1.subgroup(&[z_elt]);
    let nilpotent: Vec<bool> = report.time("centralizers", || {
        reps.par_iter()
            .map(|q| is_two_nilpotent_in(hg, &hg.centralizer(q)))
            .collect()
    });
    for (i, dq) in reps.iter().enumerate() {
        let q = dp.project_left(dq);
        let class = classify_subgroup(g1, &q)?;
        let case = match (q.order(), class.tag) {
            (1, _) => "trivial",
            (n, _) if n >= 8 => "case 1: |Q| >= 8",
            (4, SubgroupType::Klein) | (4, SubgroupType::Cyclic) => "case 2: Q = C2xC2 or C4",
            (2, _) => "case 3: Q = C2",
            _ => "unclassified",
        };
        report.subgroup_results[i].notes.push(case.to_string());
        let dq_name = describe(hg, dq);
        match q.order() {
            1 => {}
            2 => {
                if q == z {
                    let n = hg.normalizer(dq);
                    report.assertions.push(Check::new(
                        format!("case 3, Q = Z(P): delta P normalizes delta Q = {dq_name}"),
                        delta.is_subgroup_of(&n),
                    ));
                } else {
                    let c = hg.centralizer_in(&delta, dq);
                    let n = hg.normalizer_in(&delta, dq);
                    let ok = c == n
                        && c.order() == 4
                        && classify_subgroup(hg, &c).map(|t| t.tag) == Ok(SubgroupType::Klein)
                        && c.contains(dp.pair(z_elt, ident[p1.position(z_elt).expect("z in P")]));
                    report.assertions.push(Check::new(
                        format!("case 3, Q = {dq_name}: C_P(Q) = N_P(Q) = <y, z> is Klein four"),
                        ok,
                    ));
                }
            }
            _ => {
                let c = hg.centralizer(dq);
                let split = g1.centralizer(&q).order() * g2.centralizer(&dp_project_right(dp, dq, g2)).order();
                report.assertions.push(
                    Check::new(
                        format!("{}: C_H(delta Q) is 2-nilpotent, Q = {dq_name}", &case[..6]),
                        nilpotent[i],
                    )
                    .with_witness(format!("|C_H(delta Q)| = {}", c.order())),
                );
                report.assertions.push(Check::new(
                    format!("C_H(delta Q) = C_G(Q) x C_G'(Q), Q = {dq_name}"),
                    c.order() == split,
                ));
            }
        }
    }
    hq_assertions(&mut report, hg, &delta, &reps, &nilpotent)?;
    report.finalize();
    Ok(report)
}

fn dp_project_right(dp: &crate::group::DirectProduct, s: &Subgroup, right: &Group) -> Subgroup {
    let elems: Vec<usize> = s.elements().iter().map(|&g| dp.split(g).1).collect();
    right.subgroup(&elems)
}

/// Compares `Sc(G, P)(Q)` with `Sc(N_G(Q), N_P(Q))` as `N_G(Q)`-modules.
pub fn check_ik1_consequence(
    name: &str,
    g: &Group,
    p: &Subgroup,
    q: &Subgroup,
    field: Field,
    seed: u64,
) -> Result<Report> {
    if !q.is_subgroup_of(p) {
        return Err(Error::InvalidArgument("Q must be a subgroup of P".into()));
    }
    let mut report = Report::new(
        format!("Sc(G, P)(Q) = Sc(N_G(Q), N_P(Q)), G = {name}, Q = {}", describe(g, q)),
        seed,
    );
    let fusion = report.time("fusion", || fusion_system(g, p))?;
    report
        .hypotheses
        .push(Check::new("F_P(G) is saturated", fusion.is_saturated().saturated));
    report
        .hypotheses
        .push(Check::new("Q is fully normalized", fusion.is_fully_normalized(q)?));
    let sc = report.time("scott", || scott(g, p, field, seed))?;
    let br = report.time("brauer", || brauer_quotient(sc.rep(), q))?;
    let ng = br.rep.group().clone();
    let np = ng.localize(&br.normalizer, &g.normalizer_in(p, q))?;
    let local = report.time("scott", || scott(&ng, &np, field, seed))?;
    let outcome = report.time("isomorphism", || modules_isomorphic(&br.rep, local.rep(), seed))?;
    let witness = format!("dim Sc(G,P)(Q) = {}, dim Sc(N_G(Q), N_P(Q)) = {}", br.dim(), local.dim());
    let check = match outcome {
        IsoOutcome::Isomorphic => Check::new("modules are isomorphic", true),
        IsoOutcome::NotIsomorphic => Check::new("modules are isomorphic", false),
        IsoOutcome::Unknown => Check::skipped("modules are isomorphic", "isomorphism test inconclusive"),
    };
    report.assertions.push(check.with_witness(witness));
    report.finalize();
    Ok(report)
}

/// For a semidihedral Sylow `P`: every `Q ≤ P` of order at least 8 has a
/// 2-nilpotent centralizer and contains some `x^i ∉ {1, z}`.
pub fn check_lemma31(name: &str, g: &Group, p: &Subgroup, seed: u64) -> Result<Report> {
    let frame = find_semidihedral_frame(g, p)
        .ok_or_else(|| Error::Precondition("P is not semidihedral".into()))?;
    let mut report = Report::new(format!("centralizers of large subgroups of P, G = {name}"), seed);
    report.hypotheses.push(Check::new(
        "P is a Sylow 2-subgroup of G",
        p.order() == crate::group::two_part(g.order()),
    ));
    let subs = g.subgroups_of(p)?;
    let large: Vec<&Subgroup> = subs.iter().filter(|s| s.order() >= 8).collect();
    let z = frame.z(g);
    let cyclic = g.closure(&[frame.x]);
    let rows: Vec<(bool, bool, usize)> = report.time("centralizers", || {
        large
            .par_iter()
            .map(|q| {
                let c = g.centralizer(q);
                let has_xi = cyclic
                    .iter()
                    .any(|&a| a != g.identity() && a != z && q.contains(a));
                (is_two_nilpotent_in(g, &c), has_xi, c.order())
            })
            .collect()
    });
    for (q, (nil, has_xi, c)) in large.iter().zip(rows) {
        let ok = nil && has_xi;
        report.subgroup_results.push(SubgroupResult {
            subgroup: describe(g, q),
            order: q.order(),
            fully_normalized: false,
            brauer_dim: None,
            outcome: if nil { "2-nilpotent".into() } else { "not 2-nilpotent".into() },
            verdict: Verdict::from_bool(ok),
            certificate: None,
            notes: vec![
                format!("type {}", type_name(g, q)),
                format!("|C_G(Q)| = {c}"),
                format!("contains some x^i outside {{1, z}}: {has_xi}"),
            ],
        });
    }
    report.finalize();
    Ok(report)
}

/// Whether `F_P(G) = F_P(G')` for two groups with semidihedral Sylow
/// subgroups of the same order, identified through their frames.
pub fn check_fusion_equal(left: &CatalogGroup, right: &CatalogGroup, seed: u64) -> Result<Report> {
    let (f1, f2) = (left.require_frame()?, right.require_frame()?);
    let ident = frame_identification(&left.group, f1, &right.group, f2)?;
    let mut report = Report::new(format!("F_P({}) = F_P({})", left.name, right.name), seed);
    let fa = fusion_system(&left.group, &left.sylow)?;
    let fb = fusion_system(&right.group, &right.sylow)?;
    let local: Vec<usize> = ident
        .iter()
        .map(|&b| right.sylow.position(b).expect("inside P'"))
        .collect();
    let pushed = fa.transport(&right.group, &right.sylow, &local)?;
    report.assertions.push(Check::new("fusion systems are equal", fusion_equal(&pushed, &fb)?));
    report.finalize();
    Ok(report)
}
