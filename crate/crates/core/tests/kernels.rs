use std::sync::atomic::{AtomicBool, Ordering};
use std::thread;

use cc_core::{KernelCounters, ParentForest, Vertex};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random forest with `parent(v) <= v`.
fn arb_parents() -> impl Strategy<Value = Vec<Vertex>> {
    (1usize..80).prop_flat_map(|n| {
        (0..n)
            .map(|v| (0..=v as Vertex).boxed())
            .collect::<Vec<_>>()
    })
}

fn depth(parents: &[Vertex], mut v: Vertex) -> usize {
    let mut d = 0;
    while parents[v as usize] != v {
        v = parents[v as usize];
        d += 1;
    }
    d
}

fn root(parents: &[Vertex], mut v: Vertex) -> Vertex {
    while parents[v as usize] != v {
        v = parents[v as usize];
    }
    v
}

proptest! {
    #[test]
    fn atomic_hook_connects_trees(parents in arb_parents(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let n = parents.len();
        let (u, v) = (a.index(n) as Vertex, b.index(n) as Vertex);
        let forest = ParentForest::from_parents(&parents).unwrap();
        let mut counters = KernelCounters::default();
        forest.atomic_hook(u, v, &mut counters);
        prop_assert_eq!(forest.find_root(u), forest.find_root(v));
        prop_assert!(forest.check_bound().is_ok());

        let max_depth = (0..n as Vertex).map(|x| depth(&parents, x)).max().unwrap();
        prop_assert!(counters.hook_traversal_steps <= max_depth as u64 + 1);
        prop_assert!(counters.cas_failures <= counters.hook_traversal_steps);

        // Only former roots change, and only downwards.
        let after = forest.snapshot();
        for (x, (&old, &new)) in parents.iter().zip(&after).enumerate() {
            prop_assert!(new <= old);
            if new != old {
                prop_assert_eq!(old as usize, x);
            }
        }
    }

    #[test]
    fn multi_jump_reaches_the_root(parents in arb_parents(), pick in any::<prop::sample::Index>()) {
        let v = pick.index(parents.len()) as Vertex;
        let forest = ParentForest::from_parents(&parents).unwrap();
        let mut counters = KernelCounters::default();
        forest.multi_jump(v, &mut counters);
        prop_assert_eq!(forest.parent(v), root(&parents, v));
        prop_assert_eq!(counters.jump_steps as usize, depth(&parents, v).saturating_sub(1));
        // No other slot is touched.
        let after = forest.snapshot();
        for (x, (&old, &new)) in parents.iter().zip(&after).enumerate() {
            if x != v as usize {
                prop_assert_eq!(old, new);
            }
        }
    }

    #[test]
    fn jump_halves_towards_the_root(parents in arb_parents(), pick in any::<prop::sample::Index>()) {
        let v = pick.index(parents.len()) as Vertex;
        let forest = ParentForest::from_parents(&parents).unwrap();
        let changed = forest.jump(v);
        let p = parents[v as usize];
        prop_assert_eq!(forest.parent(v), parents[p as usize]);
        prop_assert_eq!(changed, parents[p as usize] != p);
    }

    #[test]
    fn star_check_matches_definition(parents in arb_parents()) {
        let forest = ParentForest::from_parents(&parents).unwrap();
        let expected = parents.iter().all(|&p| parents[p as usize] == p);
        prop_assert_eq!(forest.is_star(), expected);
    }
}

fn random_edges(n: usize, m: usize, seed: u64) -> Vec<(Vertex, Vertex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| (rng.gen_range(0..n) as Vertex, rng.gen_range(0..n) as Vertex))
        .collect()
}

/// Spawns `threads` workers that each apply `kernel` to a strided share of
/// `items`, with a sampler thread checking `check` on the live forest.
fn stress<T: Sync>(
    forest: &ParentForest,
    items: &[T],
    threads: usize,
    kernel: impl Fn(&ParentForest, &T, &mut KernelCounters) + Sync,
    mut sample: impl FnMut(&ParentForest) + Send,
) -> KernelCounters {
    let done = AtomicBool::new(false);
    thread::scope(|scope| {
        let sampler = scope.spawn(|| {
            let mut samples = 0;
            while !done.load(Ordering::Acquire) || samples == 0 {
                sample(forest);
                samples += 1;
                thread::yield_now();
            }
            samples
        });
        let workers: Vec<_> = (0..threads)
            .map(|t| {
                let kernel = &kernel;
                scope.spawn(move || {
                    let mut counters = KernelCounters::default();
                    for item in items.iter().skip(t).step_by(threads) {
                        kernel(forest, item, &mut counters);
                    }
                    counters
                })
            })
            .collect();
        let mut total = KernelCounters::default();
        for w in workers {
            total.merge(&w.join().unwrap());
        }
        done.store(true, Ordering::Release);
        assert!(sampler.join().unwrap() > 0);
        total
    })
}

#[test]
fn concurrent_plain_hooks_keep_the_bound() {
    for seed in 0..20 {
        let n = 2000;
        let edges = random_edges(n, 20_000, seed);
        let forest = ParentForest::new(n);
        stress(
            &forest,
            &edges,
            4,
            |f, &(u, v), _| {
                f.hook(u, v);
            },
            |f| f.check_bound().unwrap(),
        );
        forest.check_bound().unwrap();
    }
}

#[test]
fn concurrent_atomic_hooks_connect_every_edge_and_only_decrease() {
    for seed in 0..20 {
        let n = 3000;
        let edges = random_edges(n, 12_000, seed);
        let forest = ParentForest::new(n);
        let mut last = forest.snapshot();
        let counters = stress(
            &forest,
            &edges,
            4,
            |f, &(u, v), c| f.atomic_hook(u, v, c),
            |f| {
                for (v, seen) in last.iter_mut().enumerate() {
                    let now = f.parent(v as Vertex);
                    assert!(now <= v as Vertex);
                    assert!(now <= *seen, "slot {v} rose from {seen} to {now}");
                    *seen = now;
                }
            },
        );
        for &(u, v) in &edges {
            assert_eq!(forest.find_root(u), forest.find_root(v));
        }
        assert!(counters.hook_traversal_steps >= counters.cas_failures);
    }
}

#[test]
fn concurrent_multi_jumps_produce_stars() {
    for seed in 0..20 {
        let n = 5000;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Long chains: each vertex points a short distance below itself.
        let parents: Vec<Vertex> = (0..n)
            .map(|v: usize| v.saturating_sub(rng.gen_range(0..4)) as Vertex)
            .collect();
        let roots: Vec<Vertex> = (0..n as Vertex).map(|v| root(&parents, v)).collect();
        let forest = ParentForest::from_parents(&parents).unwrap();
        let vertices: Vec<Vertex> = (0..n as Vertex).collect();
        let mut last = parents.clone();
        stress(
            &forest,
            &vertices,
            4,
            |f, &v, c| f.multi_jump(v, c),
            |f| {
                for (v, seen) in last.iter_mut().enumerate() {
                    let now = f.parent(v as Vertex);
                    assert!(now <= *seen);
                    *seen = now;
                }
            },
        );
        assert!(forest.is_star());
        assert_eq!(forest.snapshot(), roots);
    }
}
