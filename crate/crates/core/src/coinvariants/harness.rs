use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::site::{FiniteModule, SiteSpec, SiteVector};
use super::verify::{state_pool, verify_theorem, TheoremReport};
use crate::envelope::{Envelope, VacVec};
use crate::exact::q;
use crate::Result;

/// One theorem instance: `A`, `B` from the pool and a single far site `z_1`.
#[derive(Clone, Debug)]
pub struct TheoremCase {
    pub a_label: String,
    pub b_label: String,
    pub far_label: String,
    pub a: VacVec,
    pub b: VacVec,
    pub far: (SiteSpec, SiteVector),
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseOutcome {
    pub a: String,
    pub b: String,
    pub far: String,
    pub report: TheoremReport,
}

/// Draw `count` cases from the twelve-state pool. The far site is trivial or the
/// adjoint module with a vector of entries in `-2..=2`, with equal odds.
pub fn seeded_cases(env: &Envelope, count: usize, seed: u64) -> Vec<TheoremCase> {
    let pool = state_pool(env);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (i, j) = (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()));
            let (far, far_label) = if rng.gen_bool(0.5) {
                ((SiteSpec::trivial(1), SiteVector::Triv), "1".to_string())
            } else {
                let v: Vec<i64> = (0..env.lie.dim()).map(|_| rng.gen_range(-2..3)).collect();
                let label = format!("adjoint {v:?}");
                ((SiteSpec::finite(1, FiniteModule::adjoint(&env.lie)), SiteVector::Module(v.into_iter().map(q).collect())), label)
            };
            TheoremCase {
                a_label: pool[i].0.clone(),
                b_label: pool[j].0.clone(),
                far_label,
                a: pool[i].1.clone(),
                b: pool[j].1.clone(),
                far,
            }
        })
        .collect()
}

/// Verify every case, spread over the available cores; results keep input order.
pub fn verify_cases(env: &Envelope, cases: &[TheoremCase], precision: i32) -> Result<Vec<CaseOutcome>> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(cases.len().max(1));
    let chunk = cases.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<CaseOutcome>>> = thread::scope(|s| {
        let handles: Vec<_> = cases
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|c| {
                            let report = verify_theorem(env, &c.a, &c.b, std::slice::from_ref(&c.far), precision)?;
                            Ok(CaseOutcome { a: c.a_label.clone(), b: c.b_label.clone(), far: c.far_label.clone(), report })
                        })
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification worker panicked")).collect()
    });
    results.into_iter().try_fold(Vec::new(), |mut acc, r| {
        acc.extend(r?);
        Ok(acc)
    })
}
