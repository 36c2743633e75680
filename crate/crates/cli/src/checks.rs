//! One function per verification family. Each returns a [`Section`] whose
//! checks are listed in a fixed order, so reports are reproducible.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use witt_core::generation::{battery, check_agreement, default_cutoff, Agreement};
use witt_core::graded::{
    dim_m, dim_n, dim_w, project_m, project_n, submodule_m, submodule_n, GradedBasis,
};
use witt_core::reptheory::{
    compare_weights, expected_maximal_vectors, gl_generators, has_maximal_vector_shape,
    highest_weight, maximal_vectors,
};
use witt_core::{
    action_matrix, random, verify_products, Derivation, Family, Isomorphism, ModuleDescriptor,
    Result, Subspace, WeightVector,
};

use crate::report::{Check, Section};

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

pub fn dims(n: usize, max_degree: i32) -> Result<Section> {
    let mut checks = Vec::new();
    for i in 0..=max_degree {
        let (w, m, nn) = (dim_w(n, i)?, dim_m(n, i)?, dim_n(n, i)?);
        let count = GradedBasis::new(n, i)?.len();
        let kernel = submodule_m(n, i)?.dim();
        let image = submodule_n(n, i)?.dim();
        let passed = w == count && m == kernel && nn == image && m + nn == w;
        checks.push(Check::new(
            format!("degree {i}"),
            passed,
            format!("dim W={w} M={m} N={nn}; basis={count} ker Div={kernel} im E={image}"),
            json!({
                "degree": i,
                "dim_w": w,
                "dim_m": m,
                "dim_n": nn,
                "basis_count": count,
                "divergence_kernel_rank": kernel,
                "euler_image_rank": image,
            }),
        ));
    }
    Ok(Section::new("dims", checks))
}

fn is_invariant(n: usize, m: i32, s: &Subspace) -> Result<bool> {
    for g in gl_generators(n) {
        let op = action_matrix(&g, n, m)?;
        for v in s.basis() {
            if !s.contains(&op.apply(v)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn decompose(n: usize, max_degree: i32, seed: u64, samples: usize) -> Result<Section> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for m in 0..=max_degree {
        let b = GradedBasis::new(n, m)?;
        let sm = submodule_m(n, m)?;
        let sn = submodule_n(n, m)?;
        let direct_sum = sm.intersection(&sn)?.is_zero() && sm.sum(&sn)?.is_full();
        let m_invariant = is_invariant(n, m, &sm)?;
        let n_invariant = is_invariant(n, m, &sn)?;
        let mut failures = 0;
        for _ in 0..samples {
            let h = random::homogeneous(&mut rng, n, m)?;
            let pm = project_m(&h)?;
            let pn = project_n(&h)?;
            let sum_ok = &(pm.derivation() + pn.derivation()) == h.derivation();
            let idempotent = project_n(&pn)? == pn;
            let div_free = pm.derivation().divergence().is_zero();
            let in_pieces = sm.contains(&b.coords_of(pm.derivation())?)?
                && sn.contains(&b.coords_of(pn.derivation())?)?;
            if !(sum_ok && idempotent && div_free && in_pieces) {
                failures += 1;
            }
        }
        let passed = direct_sum && m_invariant && n_invariant && failures == 0;
        checks.push(Check::new(
            format!("degree {m}"),
            passed,
            format!(
                "M+N direct {}; gl-stable M {} N {}; projections {}/{samples}",
                mark(direct_sum),
                mark(m_invariant),
                mark(n_invariant),
                samples - failures
            ),
            json!({
                "degree": m,
                "dim_m": sm.dim(),
                "dim_n": sn.dim(),
                "direct_sum": direct_sum,
                "m_invariant": m_invariant,
                "n_invariant": n_invariant,
                "samples": samples,
                "projection_failures": failures,
            }),
        ));
    }
    Ok(Section::new("decompose", checks))
}

/// `lambda1 = m * delta_1` on `N_m`, `lambda2 = 1 + (m+1) * delta_1` on `M_m`.
pub fn expected_weights(n: usize, m: i32) -> (WeightVector, WeightVector) {
    let m = i64::from(m);
    let mut l1 = vec![0; n - 1];
    l1[0] = m;
    let mut l2 = vec![1; n - 1];
    l2[0] = m + 2;
    (
        WeightVector {
            cartan: l1,
            euler_scalar: m,
        },
        WeightVector {
            cartan: l2,
            euler_scalar: m,
        },
    )
}

fn spans_same(b: &GradedBasis, s: &Subspace, d: &Derivation) -> Result<bool> {
    Ok(s.dim() == 1 && s.contains(&b.coords_of(d)?)?)
}

pub fn highest_weights(n: usize, max_degree: i32) -> Result<Section> {
    let mut checks = Vec::new();
    for m in 0..=max_degree {
        let b = GradedBasis::new(n, m)?;
        let joint = maximal_vectors(n, m, None)?;
        let in_m = maximal_vectors(n, m, Some(&submodule_m(n, m)?))?;
        let in_n = maximal_vectors(n, m, Some(&submodule_n(n, m)?))?;
        let (x1m_e, x1m_dn) = expected_maximal_vectors(n, m)?;
        let vectors_ok = spans_same(&b, &in_n, x1m_e.derivation())?
            && spans_same(&b, &in_m, x1m_dn.derivation())?;
        let normal_form = joint
            .basis()
            .iter()
            .map(|v| Ok(has_maximal_vector_shape(&b.derivation_of(v)?, m)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|ok| ok);
        let (l1, l2) = expected_weights(n, m);
        let w_n = highest_weight(n, ModuleDescriptor::n(m))
            .ok()
            .map(|(_, w)| w);
        let w_m = highest_weight(n, ModuleDescriptor::m(m))
            .ok()
            .map(|(_, w)| w);
        let weights_ok = w_n.as_ref() == Some(&l1) && w_m.as_ref() == Some(&l2);
        let passed = joint.dim() == 2
            && in_m.dim() == 1
            && in_n.dim() == 1
            && vectors_ok
            && normal_form
            && weights_ok;
        let show =
            |w: &Option<WeightVector>| w.as_ref().map_or("-".to_string(), ToString::to_string);
        checks.push(Check::new(
            format!("degree {m}"),
            passed,
            format!(
                "maximal dims joint={} M={} N={}; weight N {} M {}",
                joint.dim(),
                in_m.dim(),
                in_n.dim(),
                show(&w_n),
                show(&w_m)
            ),
            json!({
                "degree": m,
                "joint_dim": joint.dim(),
                "m_dim": in_m.dim(),
                "n_dim": in_n.dim(),
                "expected_vectors": vectors_ok,
                "normal_form": normal_form,
                "weight_n": w_n,
                "weight_m": w_m,
                "expected_weight_n": l1,
                "expected_weight_m": l2,
            }),
        ));
    }
    Ok(Section::new("highest_weights", checks))
}

pub fn products(n: usize, max_degree: i32) -> Result<Section> {
    let checks = verify_products(n, max_degree)?
        .into_iter()
        .map(|r| {
            let text = format!(
                "[{}, {}] -> degree {} dim {} {:?} (expected {:?})",
                r.left, r.right, r.result_degree, r.result_dim, r.classification, r.expected
            );
            Check::new(format!("[{}, {}]", r.left, r.right), r.passed, text, &r)
        })
        .collect();
    Ok(Section::new("products", checks))
}

/// Expected classification of a pair of irreducible pieces.
pub fn expected_isomorphism(n: usize, a: ModuleDescriptor, b: ModuleDescriptor) -> Isomorphism {
    let shifted = |p: ModuleDescriptor, q: ModuleDescriptor| {
        p.family == Family::M && q.family == Family::N && q.degree == p.degree + 2
    };
    if a == b {
        Isomorphism::IsoSlAndGl
    } else if n == 2 && (shifted(a, b) || shifted(b, a)) {
        Isomorphism::IsoSlOnly
    } else {
        Isomorphism::NonIso
    }
}

pub fn isomorphisms(n: usize, max_degree: i32) -> Result<Section> {
    let mut modules: Vec<ModuleDescriptor> = (0..=max_degree).map(ModuleDescriptor::m).collect();
    modules.extend((0..=max_degree + 2).map(ModuleDescriptor::n));
    let mut weights = BTreeMap::new();
    for (k, &module) in modules.iter().enumerate() {
        weights.insert(k, highest_weight(n, module)?.1);
    }
    let mut checks = Vec::new();
    for a in 0..modules.len() {
        for b in a + 1..modules.len() {
            let (ma, mb) = (modules[a], modules[b]);
            let got = compare_weights(&weights[&a], &weights[&b]);
            let want = expected_isomorphism(n, ma, mb);
            let dims = (ma.subspace(n)?.dim(), mb.subspace(n)?.dim());
            let dims_ok = got == Isomorphism::NonIso || dims.0 == dims.1;
            checks.push(Check::new(
                format!("{ma} vs {mb}"),
                got == want && dims_ok,
                format!(
                    "{got:?} (expected {want:?}); dims {} and {}",
                    dims.0, dims.1
                ),
                json!({
                    "left": ma.to_string(),
                    "right": mb.to_string(),
                    "classification": got,
                    "expected": want,
                    "left_dim": dims.0,
                    "right_dim": dims.1,
                }),
            ));
        }
    }
    Ok(Section::new("isomorphisms", checks))
}

#[derive(Serialize)]
struct AgreementData<'a> {
    expression: &'a str,
    generates: bool,
    reasons: &'a [witt_core::generation::Reason],
    top_degree: Option<i32>,
    cutoff: i32,
    per_degree: BTreeMap<String, [usize; 2]>,
    deficits: Vec<i32>,
    iterations: usize,
    agrees: bool,
}

pub fn agreement_check(a: &Agreement) -> Check {
    let data = AgreementData {
        expression: &a.expression,
        generates: a.verdict.generates,
        reasons: &a.verdict.reasons,
        top_degree: a.verdict.top_degree,
        cutoff: a.trace.cutoff,
        per_degree: a
            .trace
            .per_degree
            .iter()
            .map(|(d, f)| (d.to_string(), [f.achieved, f.full]))
            .collect(),
        deficits: a.trace.deficits(),
        iterations: a.trace.iterations,
        agrees: a.agrees,
    };
    let text = format!(
        "criterion {}, closure to T={} {}",
        a.verdict.generates,
        a.trace.cutoff,
        if a.trace.all_full() {
            "fills every degree".to_string()
        } else {
            format!("short in degrees {:?}", a.trace.deficits())
        }
    );
    Check::new(a.expression.clone(), a.agrees, text, data)
}

pub fn generation(n: usize, seed: u64, random_count: usize) -> Result<Section> {
    let checks = battery(&[n], seed, random_count)?
        .iter()
        .map(|d| check_agreement(d, default_cutoff(d)).map(|a| agreement_check(&a)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Section::new("generation", checks))
}

/// Counts of random samples violating each identity.
#[derive(Debug, Default, Serialize)]
pub struct LawFailures {
    pub antisymmetry: usize,
    pub jacobi: usize,
    pub div_additive: usize,
    pub div_module: usize,
    pub div_bracket: usize,
}

pub fn law_failures(n: usize, seed: u64, samples: usize) -> Result<LawFailures> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = LawFailures::default();
    for _ in 0..samples {
        let d1 = random::derivation(&mut rng, n, 2);
        let d2 = random::derivation(&mut rng, n, 2);
        let d3 = random::derivation(&mut rng, n, 2);
        let g = random::polynomial(&mut rng, n, 2, 4);

        let b12 = d1.bracket(&d2)?;
        if b12 != -&d2.bracket(&d1)? {
            f.antisymmetry += 1;
        }
        let jacobi = &(&b12.bracket(&d3)? + &d2.bracket(&d3)?.bracket(&d1)?)
            + &d3.bracket(&d1)?.bracket(&d2)?;
        if !jacobi.is_zero() {
            f.jacobi += 1;
        }
        let (v1, v2) = (d1.divergence(), d2.divergence());
        if (&d1 + &d2).divergence() != &v1 + &v2 || (&d1 - &d2).divergence() != &v1 - &v2 {
            f.div_additive += 1;
        }
        if d1.mul_poly(&g)?.divergence() != &(&g * &v1) + &d1.apply(&g)? {
            f.div_module += 1;
        }
        if b12.divergence() != &d1.apply(&v2)? - &d2.apply(&v1)? {
            f.div_bracket += 1;
        }
    }
    Ok(f)
}

pub fn laws(n: usize, seed: u64, samples: usize) -> Result<Section> {
    let f = law_failures(n, seed, samples)?;
    let rows = [
        ("antisymmetry", f.antisymmetry),
        ("jacobi", f.jacobi),
        ("div of sum and difference", f.div_additive),
        ("div of f*D", f.div_module),
        ("div of bracket", f.div_bracket),
    ];
    let checks = rows
        .into_iter()
        .map(|(name, failures)| {
            Check::new(
                name,
                failures == 0,
                format!("{}/{samples} samples", samples - failures),
                json!({ "samples": samples, "failures": failures }),
            )
        })
        .collect();
    Ok(Section::new("laws", checks))
}
