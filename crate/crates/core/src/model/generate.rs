//! Deterministic instance generators.
//!
//! Random instances use ChaCha8 seeded with `seed_from_u64(seed)`; each list
//! is a Fisher-Yates shuffle drawing `gen_range(0..=i)` over `u32`, boys'
//! lists first (ascending id), then girls'. The stream is identical on every
//! platform for a fixed `rand`/`rand_chacha` major version.

use super::ids::{BoyId, GirlId};
use super::instance::Instance;
use super::ModelError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shuffled(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i as u32) as usize;
        v.swap(i, j);
    }
    v
}

/// Uniformly random strict instance of size `n`.
pub fn gen_random(n: usize, seed: u64) -> Result<Instance, ModelError> {
    if n == 0 {
        return Err(ModelError::TooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let boys: Vec<Vec<usize>> = (0..n).map(|_| shuffled(n, &mut rng)).collect();
    let girls: Vec<Vec<usize>> = (0..n).map(|_| shuffled(n, &mut rng)).collect();
    Instance::from_orders(&boys, &girls)
}

/// One proposal as received by a girl.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Receipt {
    pub boy: BoyId,
    pub girl: GirlId,
    pub accepted: bool,
}

/// Girls' lists consistent with a chronological proposal record: accepted
/// proposers in reverse order of acceptance, then rejected proposers in
/// order of receipt, then everyone else ascending.
pub fn girl_lists_from_receipts(n: usize, receipts: &[Receipt]) -> Vec<Vec<BoyId>> {
    let mut accepted: Vec<Vec<BoyId>> = vec![Vec::new(); n];
    let mut rejected: Vec<Vec<BoyId>> = vec![Vec::new(); n];
    for r in receipts {
        let list = if r.accepted { &mut accepted[r.girl.0] } else { &mut rejected[r.girl.0] };
        if !list.contains(&r.boy) {
            list.push(r.boy);
        }
    }
    (0..n)
        .map(|g| {
            let mut order: Vec<BoyId> = accepted[g].iter().rev().copied().collect();
            for &b in &rejected[g] {
                if !order.contains(&b) {
                    order.push(b);
                }
            }
            for b in (0..n).map(BoyId) {
                if !order.contains(&b) {
                    order.push(b);
                }
            }
            order
        })
        .collect()
}

/// The quadratic-length play of a late boy cycling through a ring of boys.
///
/// Boys `0..n-1` form a ring: boy `i` ranks girls `i, i+1, …` cyclically,
/// then the spare girl `n-1`. The last boy ranks the ring girls in order,
/// then the spare girl. Girls' lists are derived from the intended play so
/// that every proposal in the ring is accepted until the last boy is finally
/// refused by the ring's last girl and settles for the spare girl.
pub fn gen_inferno(n: usize) -> Result<Instance, ModelError> {
    if n < 3 {
        return Err(ModelError::TooSmall(n));
    }
    let ring = n - 1;
    let late = BoyId(ring);
    let spare = GirlId(ring);
    let mut boy_orders: Vec<Vec<usize>> =
        (0..ring).map(|i| (0..ring).map(|k| (i + k) % ring).chain([ring]).collect()).collect();
    boy_orders.push((0..=ring).collect());

    let mut receipts = Vec::new();
    let mut holder: Vec<Option<BoyId>> = vec![None; n];
    let mut next = vec![0usize; n];
    for opener in 0..n {
        let mut free = Some(BoyId(opener));
        while let Some(b) = free {
            let g = GirlId(boy_orders[b.0][next[b.0]]);
            next[b.0] += 1;
            let refused = b == late && g == GirlId(ring - 1) && g != spare;
            if refused {
                receipts.push(Receipt { boy: b, girl: g, accepted: false });
                continue;
            }
            receipts.push(Receipt { boy: b, girl: g, accepted: true });
            free = holder[g.0].replace(b);
        }
    }
    debug_assert_eq!(holder[spare.0], Some(late));
    let girl_orders: Vec<Vec<usize>> =
        girl_lists_from_receipts(n, &receipts).into_iter().map(|o| o.into_iter().map(|b| b.0).collect()).collect();
    Instance::from_orders(&boy_orders, &girl_orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_deterministic() {
        assert_eq!(gen_random(5, 1).unwrap(), gen_random(5, 1).unwrap());
        assert_ne!(gen_random(5, 1).unwrap(), gen_random(5, 2).unwrap());
    }

    #[test]
    fn unit_instance() {
        let inst = gen_random(1, 99).unwrap();
        assert_eq!(inst.n(), 1);
    }

    #[test]
    fn inferno_needs_three() {
        assert!(gen_inferno(2).is_err());
        assert_eq!(gen_inferno(3).unwrap().n(), 3);
    }

    #[test]
    fn receipts_reverse_acceptances() {
        let r = [
            Receipt { boy: BoyId(2), girl: GirlId(0), accepted: true },
            Receipt { boy: BoyId(0), girl: GirlId(0), accepted: false },
            Receipt { boy: BoyId(1), girl: GirlId(0), accepted: true },
        ];
        let lists = girl_lists_from_receipts(4, &r);
        assert_eq!(lists[0], vec![BoyId(1), BoyId(2), BoyId(0), BoyId(3)]);
    }
}
