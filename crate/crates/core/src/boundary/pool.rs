use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::foundation::{dedup, product_sets};
use super::CoreStructure;
use crate::error::Result;

/// Minimum pool size.
pub const POOL_TARGET: usize = 24;

/// Largest set kept in a pool.
pub const MAX_SET: usize = 32;

/// A pool member and how it was made.
#[derive(Clone, Debug, Serialize)]
pub struct PoolEntry<E> {
    pub elements: Vec<E>,
    pub origin: String,
}

/// Seeded mix of elementary sets, products, core translates and random
/// perturbations; elements are drawn from length ≤ `bound`.
pub fn foundation_pool<S: CoreStructure>(
    fam: &S,
    seed: u64,
    bound: usize,
) -> Result<Vec<PoolEntry<S::Elem>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elems = fam.enumerate(bound.min(3))?;
    let cores: Vec<S::Elem> = elems
        .iter()
        .filter(|x| fam.is_core(x) && !fam.is_unit(x))
        .cloned()
        .collect();
    let mut pool: Vec<PoolEntry<S::Elem>> = Vec::new();
    let push = |pool: &mut Vec<PoolEntry<S::Elem>>, set: Vec<S::Elem>, origin: String| {
        let set = dedup(&set);
        if !set.is_empty() && set.len() <= MAX_SET && !pool.iter().any(|e| e.elements == set) {
            pool.push(PoolEntry {
                elements: set,
                origin,
            });
        }
    };
    push(&mut pool, vec![fam.identity()], "identity".into());
    let elementary = fam.elementary_sets()?;
    for (i, f) in elementary.iter().enumerate() {
        push(&mut pool, f.clone(), format!("elementary {i}"));
    }
    for f in &elementary {
        for g in &elementary {
            push(&mut pool, product_sets(fam, f, g), "product".into());
        }
    }
    for c in cores.iter().take(3) {
        push(&mut pool, vec![c.clone()], "core singleton".into());
        for f in &elementary {
            push(&mut pool, product_sets(fam, std::slice::from_ref(c), f), "core translate left".into());
            push(&mut pool, product_sets(fam, f, std::slice::from_ref(c)), "core translate right".into());
        }
    }
    let mut attempts = 0;
    while pool.len() < POOL_TARGET && attempts < 50 * POOL_TARGET {
        attempts += 1;
        let base = pool[rng.gen_range(0..pool.len())].elements.clone();
        let (set, origin) = match rng.gen_range(0..5) {
            0 if base.len() > 1 => {
                let mut s = base.clone();
                s.remove(rng.gen_range(0..s.len()));
                (s, "drop one")
            }
            1 => {
                let mut s = base.clone();
                s.push(elems.choose(&mut rng).expect("nonempty").clone());
                (s, "add random")
            }
            2 => {
                let mut s = base.clone();
                let i = rng.gen_range(0..s.len());
                let g = elems.choose(&mut rng).expect("nonempty");
                s[i] = fam.multiply(&s[i], g);
                (s, "extend one")
            }
            3 => {
                let other = &pool[rng.gen_range(0..pool.len())].elements;
                (product_sets(fam, &base, other), "product")
            }
            _ => {
                let c = cores.choose(&mut rng).unwrap_or(&elems[0]);
                if rng.gen_bool(0.5) {
                    (product_sets(fam, std::slice::from_ref(c), &base), "core translate left")
                } else {
                    (product_sets(fam, &base, std::slice::from_ref(c)), "core translate right")
                }
            }
        };
        push(&mut pool, set, origin.into());
    }
    Ok(pool)
}
