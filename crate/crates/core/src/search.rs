//! Branch-and-bound over integer label vectors for a dimension function that
//! is strictly increasing in every coordinate above the given minima.

use std::thread;

use num_traits::One;

use crate::scalar::Rational;

pub(crate) struct SearchOutcome {
    pub hits: Vec<Vec<Rational>>,
    /// Number of (partial or complete) label vectors evaluated.
    pub nodes: u64,
}

struct Dfs<'a, F> {
    eval: &'a F,
    target: &'a Rational,
    mins: &'a [Rational],
    nodes: u64,
    hits: Vec<Vec<Rational>>,
}

impl<F: Fn(&[Rational]) -> Rational> Dfs<'_, F> {
    /// Coordinates `< depth` are fixed, the rest sit at their minima.
    fn run(&mut self, depth: usize, current: &mut Vec<Rational>) {
        if depth == current.len() {
            self.nodes += 1;
            if &(self.eval)(current) == self.target {
                self.hits.push(current.clone());
            }
            return;
        }
        loop {
            self.nodes += 1;
            if &(self.eval)(current) > self.target {
                break;
            }
            self.run(depth + 1, current);
            current[depth] += Rational::one();
        }
        current[depth] = self.mins[depth].clone();
    }
}

/// All label vectors `x ≥ mins` (componentwise, unit steps) with
/// `eval(x) == target`. `eval` must be strictly increasing in each
/// coordinate on that region; the minimal completion of a partial
/// assignment is then a lower bound for every completion.
///
/// With `workers > 1` the values of the first coordinate are dealt out
/// round-robin to scoped threads. Hits are returned sorted.
pub(crate) fn monotone_search<F>(
    mins: &[Rational],
    target: &Rational,
    eval: &F,
    workers: usize,
) -> SearchOutcome
where
    F: Fn(&[Rational]) -> Rational + Sync,
{
    if mins.is_empty() {
        let hit = &eval(&[]) == target;
        return SearchOutcome { hits: if hit { vec![vec![]] } else { vec![] }, nodes: 1 };
    }
    // Feasible values of the outermost coordinate.
    let mut firsts = Vec::new();
    let mut probe = mins.to_vec();
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        if &eval(&probe) > target {
            break;
        }
        firsts.push(probe[0].clone());
        probe[0] += Rational::one();
    }
    let workers = workers.max(1).min(firsts.len().max(1));
    let run_slice = |assigned: Vec<Rational>| {
        let mut dfs = Dfs { eval, target, mins, nodes: 0, hits: Vec::new() };
        for v in assigned {
            let mut current = mins.to_vec();
            current[0] = v;
            dfs.run(1, &mut current);
        }
        (dfs.hits, dfs.nodes)
    };
    let mut parts: Vec<Vec<Rational>> = vec![Vec::new(); workers];
    for (i, v) in firsts.into_iter().enumerate() {
        parts[i % workers].push(v);
    }
    let results: Vec<(Vec<Vec<Rational>>, u64)> = if workers == 1 {
        parts.into_iter().map(run_slice).collect()
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> =
                parts.into_iter().map(|p| scope.spawn(move || run_slice(p))).collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        })
    };
    let mut hits = Vec::new();
    for (h, n) in results {
        hits.extend(h);
        nodes += n;
    }
    hits.sort();
    SearchOutcome { hits, nodes }
}
