//! Parallel eigenfunction assembly: the `F̂(n+μ)` expansions are independent,
//! so they run on the rayon pool and are summed afterwards. Exact arithmetic
//! makes the sum independent of the order.

use rayon::prelude::*;

use ecs_core::eigenfunction::AlphaTable;
use ecs_core::fhat::{fhat_series_strict, LaurentPoly};
use ecs_core::{Error, Rational};

/// `Φ = Σ_μ α(μ) F̂(n+μ)` over the window entries of `alpha`.
pub fn assemble_phi_parallel(
    n: &[i64],
    alpha: &AlphaTable<Rational>,
    lambda: &Rational,
    dmax: usize,
) -> Result<LaurentPoly, Error> {
    if n.len() != alpha.n_particles() {
        return Err(Error::usage("quantum numbers and alpha table differ in particle number"));
    }
    let (lq, sg) = (alpha.q2_order(), alpha.gamma_order());
    let entries: Vec<_> = alpha.window_entries().collect();
    let parts = entries
        .par_iter()
        .map(|(mu, a)| {
            let shifted: Vec<i64> = n.iter().zip(mu.as_slice()).map(|(x, m)| x + m).collect();
            let f = fhat_series_strict(&shifted, lambda, lq, dmax)?;
            Ok(f.retruncate(lq, sg).scale_series(a))
        })
        .collect::<Result<Vec<LaurentPoly>, Error>>()?;
    let mut phi = LaurentPoly::zero(n.len(), lq, sg);
    for p in &parts {
        phi.add_assign(p);
    }
    Ok(phi)
}
