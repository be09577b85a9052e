//! Elimination of non-exponential variable powers above two. For a variable
//! `x` whose largest non-exponential exponent in the system is `h >= 2`,
//! chain variables `y_1..y_h` with equations `x - y_1 = 0`,
//! `y_j x - y_(j+1) = 0` replace every occurrence of `x^i` by `y_i`, so the
//! expanded squares need only `G_0..G_2`. Each zero of the original system
//! lifts to exactly one zero of the rewritten one.

use super::{Equation, EquationSystem, ExpMonomial};

/// Where the chain variables went: for each reduced variable `v`, the box
/// indices of its `y_1..y_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMap {
    pub original_k: usize,
    pub new_k: usize,
    pub chains: Vec<(usize, Vec<usize>)>,
}

pub fn gamma_reduce(system: &EquationSystem) -> (EquationSystem, GammaMap) {
    let k = system.k;
    let mut max_pow = vec![0u32; k];
    for eq in &system.equations {
        for atom in &eq.atoms {
            for (v, &g) in atom.gammas.iter().enumerate() {
                max_pow[v] = max_pow[v].max(g);
            }
        }
    }

    let mut chains: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut new_k = k;
    for (v, &h) in max_pow.iter().enumerate() {
        if h >= 2 {
            let ys: Vec<usize> = (0..h as usize).map(|i| new_k + i).collect();
            new_k += h as usize;
            chains.push((v, ys));
        }
    }

    if chains.is_empty() {
        return (
            system.clone(),
            GammaMap {
                original_k: k,
                new_k: k,
                chains,
            },
        );
    }

    let widen = |atom: &ExpMonomial| -> ExpMonomial {
        let mut a = atom.clone();
        a.gammas.resize(new_k, 0);
        a.factors.resize(new_k, None);
        a
    };

    let mut out = EquationSystem::new(new_k);
    for eq in &system.equations {
        let mut atoms = Vec::with_capacity(eq.atoms.len());
        for atom in &eq.atoms {
            let mut a = widen(atom);
            for (v, ys) in &chains {
                let g = a.gammas[*v];
                if g >= 1 {
                    a.gammas[*v] = 0;
                    a.gammas[ys[g as usize - 1]] += 1;
                }
            }
            atoms.push(a);
        }
        out.equations.push(Equation { atoms });
    }

    for (v, ys) in &chains {
        // x - y_1 = 0
        out.push(vec![
            ExpMonomial::new(new_k).gamma(*v, 1),
            ExpMonomial::new(new_k).gamma(ys[0], 1).neg(),
        ]);
        // y_j x - y_(j+1) = 0
        for j in 1..ys.len() {
            out.push(vec![
                ExpMonomial::new(new_k).gamma(ys[j - 1], 1).gamma(*v, 1),
                ExpMonomial::new(new_k).gamma(ys[j], 1).neg(),
            ]);
        }
    }

    (
        out,
        GammaMap {
            original_k: k,
            new_k,
            chains,
        },
    )
}

impl GammaMap {
    /// The unique lift of an original box point: chain values `x^i`.
    pub fn lift(&self, point: &[u64]) -> Vec<u64> {
        let mut out = point.to_vec();
        out.resize(self.new_k, 0);
        for (v, ys) in &self.chains {
            let mut acc = 1u64;
            for (i, &y) in ys.iter().enumerate() {
                let _ = i;
                acc = acc.saturating_mul(point[*v]);
                out[y] = acc;
            }
        }
        out
    }

    /// Bound needed for the auxiliary coordinates of lifted points from a box
    /// of bound `t`: `(t-1)^h + 1` for the longest chain.
    pub fn aux_bound(&self, t: u64) -> u64 {
        self.chains
            .iter()
            .map(|(_, ys)| big_sat_pow(t - 1, ys.len() as u32) + 1)
            .max()
            .unwrap_or(0)
    }
}

fn big_sat_pow(b: u64, e: u32) -> u64 {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.saturating_mul(b);
    }
    acc
}
