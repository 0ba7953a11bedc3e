#![allow(dead_code)]

use ji_bisim::lts::{Alphabet, Lts, LtsBuilder, Process, StateId};
use proptest::prelude::*;
use rand::Rng;

pub const ACTIONS: [&str; 4] = ["a", "b", "c", "d"];

/// An LTS with states `s0..` and the given `(src, action, tgt)` edges.
pub fn lts_from(n: usize, k: usize, edges: &[(usize, usize, usize)]) -> Lts {
    let mut b = LtsBuilder::with_alphabet(Alphabet::from_names(ACTIONS[..k].iter().map(|s| s.to_string())));
    for i in 0..n {
        b.add_state(format!("s{i}")).unwrap();
    }
    let ids: Vec<_> = b.alphabet().ids().collect();
    for &(s, a, t) in edges {
        b.add_transition(StateId(s as u32), ids[a], StateId(t as u32)).unwrap();
    }
    b.build()
}

/// Random LTS strategy: up to `max_states` states, up to `max_actions` actions.
pub fn arb_lts(max_states: usize, max_actions: usize) -> impl Strategy<Value = Lts> {
    (1..=max_states, 1..=max_actions).prop_flat_map(|(n, k)| {
        prop::collection::vec((0..n, 0..k, 0..n), 0..=n * 2).prop_map(move |edges| lts_from(n, k, &edges))
    })
}

/// A rooted random process.
pub fn arb_process(max_states: usize, max_actions: usize) -> impl Strategy<Value = Process> {
    arb_lts(max_states, max_actions).prop_flat_map(|l| {
        let n = l.num_states();
        (Just(l), 0..n).prop_map(|(l, r)| Process::new(l, StateId(r as u32)))
    })
}

/// A random LTS drawn from `rng`, with edge density around `density` per state.
pub fn random_lts(rng: &mut impl Rng, max_states: usize, max_actions: usize, density: f64) -> Lts {
    let n = rng.gen_range(1..=max_states);
    let k = rng.gen_range(1..=max_actions);
    let m = ((n as f64) * density * rng.gen_range(0.2..1.5)) as usize;
    let edges: Vec<_> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..k), rng.gen_range(0..n))).collect();
    lts_from(n, k, &edges)
}
