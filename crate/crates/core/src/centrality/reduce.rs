use rayon::prelude::*;

use crate::graph::NodeId;

/// Sources handled sequentially by one task.
const BLOCK: usize = 32;
/// Blocks in flight at once; bounds memory to `WAVE * n` partial values.
const WAVE: usize = 64;

/// Run `pass` once per source and sum the per-source contributions.
///
/// Sources are grouped into fixed blocks; within a block contributions are
/// added in source order, and block partials are added to the total in
/// block order. The summation tree depends only on `sources`, never on the
/// number of threads.
pub(crate) fn sum_over_sources<W, I, F>(n: usize, sources: &[NodeId], init: I, pass: F) -> Vec<f64>
where
    I: Fn() -> W + Sync,
    F: Fn(&mut W, NodeId, &mut [f64]) + Sync,
{
    let mut total = vec![0.0f64; n];
    for wave in sources.chunks(BLOCK * WAVE) {
        let partials: Vec<Vec<f64>> = wave
            .par_chunks(BLOCK)
            .map(|block| {
                let mut ws = init();
                let mut acc = vec![0.0f64; n];
                for &s in block {
                    pass(&mut ws, s, &mut acc);
                }
                acc
            })
            .collect();
        for p in partials {
            for (t, x) in total.iter_mut().zip(p) {
                *t += x;
            }
        }
    }
    total
}
