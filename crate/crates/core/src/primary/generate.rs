use std::collections::HashSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

use super::component::PrimaryComponent;
use super::family::PrimaryFamily;

/// Parameters of the seeded family generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    /// Fiber degrees `(d_1, .., d_n)`: at every depth-`l` node the children's
    /// exponents sum to `d_{l+1}`.
    pub fibers: Vec<u32>,
    /// Inclusive range of each exponent `delta`.
    pub delta: (u32, u32),
    /// Bound on the height of every tail coefficient.
    pub coeff_bits: u32,
    /// Bound on the height of every point coordinate.
    pub point_bits: u32,
}

impl GenSpec {
    pub fn new(fibers: &[u32], delta: (u32, u32), coeff_bits: u32, point_bits: u32) -> Self {
        Self {
            n: fibers.len(),
            fibers: fibers.to_vec(),
            delta,
            coeff_bits,
            point_bits,
        }
    }

    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Unsatisfiable(m));
        if self.n == 0 || self.fibers.len() != self.n {
            return bad(format!(
                "{} fiber degrees for n = {}",
                self.fibers.len(),
                self.n
            ));
        }
        let (lo, hi) = self.delta;
        if lo == 0 || lo > hi {
            return bad(format!("delta range [{lo}, {hi}]"));
        }
        if self.coeff_bits > 62 || self.point_bits > 62 {
            return bad("bit sizes above 62 are not supported".into());
        }
        let pool = (1u64 << (self.point_bits + 1)) - 1;
        for (l, &d) in self.fibers.iter().enumerate() {
            if !composable(d, lo, hi) {
                return bad(format!(
                    "d{} = {d} is not a sum of exponents in [{lo}, {hi}]",
                    l + 1
                ));
            }
            // the most children a fiber can have is d / lo
            if u64::from(d / lo) > pool {
                return bad(format!(
                    "d{} = {d} may need {} distinct coordinates but {}-bit points give {pool}",
                    l + 1,
                    d / lo,
                    self.point_bits
                ));
            }
        }
        Ok(())
    }
}

fn composable(d: u32, lo: u32, hi: u32) -> bool {
    let mut ok = vec![false; d as usize + 1];
    ok[0] = true;
    for r in 1..=d as usize {
        ok[r] = (lo..=hi).any(|k| k as usize <= r && ok[r - k as usize]);
    }
    ok[d as usize]
}

fn random_rational(rng: &mut ChaCha8Rng, bits: u32) -> Rational {
    if bits == 0 {
        return rat(0);
    }
    let top = (1i64 << bits) - 1;
    let num = rng.gen_range(-top..=top);
    let den = rng.gen_range(1..=top);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Random split of `d` into parts within `[lo, hi]`.
fn random_composition(rng: &mut ChaCha8Rng, d: u32, lo: u32, hi: u32) -> Vec<u32> {
    let mut parts = Vec::new();
    let mut rest = d;
    while rest > 0 {
        let options: Vec<u32> = (lo..=hi.min(rest))
            .filter(|&k| composable(rest - k, lo, hi))
            .collect();
        let k = options[rng.gen_range(0..options.len())];
        parts.push(k);
        rest -= k;
    }
    parts
}

fn distinct_coords(rng: &mut ChaCha8Rng, count: usize, bits: u32) -> Vec<Rational> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut misses = 0;
    while out.len() < count {
        let a = if misses < 1000 {
            random_rational(rng, bits)
        } else {
            // small pools: walk 0, 1, -1, 2, -2, ...
            (0i64..)
                .flat_map(|k| [rat(k), rat(-k)])
                .find(|a| !seen.contains(a))
                .unwrap()
        };
        if seen.insert(a.clone()) {
            out.push(a);
        } else {
            misses += 1;
        }
    }
    out
}

/// Deterministic in `(spec, seed)`. Every generated component satisfies the
/// primary-shape conditions, siblings are distinct and fibers are equi-degree
/// by construction.
pub fn gen_family(spec: &GenSpec, seed: u64) -> Result<PrimaryFamily> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fam = PrimaryFamily::new(spec.n);
    let mut stack = vec![fam.root()];
    while let Some(node) = stack.pop() {
        let depth = fam.depth(node);
        if depth == spec.n {
            continue;
        }
        let deltas_above = fam.deltas(node);
        let parts = random_composition(&mut rng, spec.fibers[depth], spec.delta.0, spec.delta.1);
        let coords = distinct_coords(&mut rng, parts.len(), spec.point_bits);
        let mut kids = Vec::with_capacity(parts.len());
        for (delta, coord) in parts.into_iter().zip(coords) {
            let comp = random_component(
                &mut rng,
                depth + 1,
                coord,
                delta,
                &deltas_above,
                spec.coeff_bits,
            );
            kids.push(fam.add_child(node, comp)?);
        }
        stack.extend(kids.into_iter().rev());
    }
    Ok(fam)
}

fn random_component(
    rng: &mut ChaCha8Rng,
    level: usize,
    coord: Rational,
    delta: u32,
    deltas_above: &[u32],
    bits: u32,
) -> PrimaryComponent {
    let mut comp = PrimaryComponent::pure(level, coord, delta);
    for idx in multi_indices(deltas_above, delta) {
        let c = random_rational(rng, bits);
        // pure (x_l - a_l)^r slots stay zero
        if idx[..level - 1].iter().any(|&i| i > 0) {
            comp.set_coeff(idx, c);
        }
    }
    comp
}

/// All `(i_1, .., i_{l-1}, r)` with `i_u < deltas_above[u]`, `r < delta`, in
/// lexicographic order.
fn multi_indices(deltas_above: &[u32], delta: u32) -> Vec<Vec<u32>> {
    let bounds: Vec<u32> = deltas_above
        .iter()
        .copied()
        .chain(std::iter::once(delta))
        .collect();
    let mut out = vec![vec![]];
    for &b in &bounds {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..b).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}
