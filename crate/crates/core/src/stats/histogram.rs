use serde::{Deserialize, Serialize};

use super::chain::TpmChain;

/// All single-cycle outcomes sharing the same `(q_h, w_tot)`.
///
/// With level indices `s ∈ {0, 1}` the exchanges are
/// `q_h = ħω_h (s₂ − s₁)` and `w_tot = −ħω_h (s₂ − s₁) + ħω_c (s₃ − s₀)`,
/// so the atoms are labelled by `(hot, cold) = (s₂ − s₁, s₃ − s₀)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyAtom {
    pub hot: i8,
    pub cold: i8,
    pub q_h: f64,
    pub w_tot: f64,
    pub probability: f64,
    /// `−w_tot/q_h`; `None` when `q_h = 0`.
    pub eta: Option<f64>,
}

/// Exact single-cycle distribution of `(q_h, w_tot)` and of `η = −w_tot/q_h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyHistogram {
    /// Nine atoms in `(hot, cold)` lexicographic order, including empty ones.
    pub atoms: Vec<EfficiencyAtom>,
    /// Probability of `q_h = 0`, where the stochastic efficiency diverges.
    pub diverging_mass: f64,
    /// Probabilities of the 16 measured sequences `(n₀, n₁, n₂, n₃)`.
    pub sequences: Vec<([usize; 4], f64)>,
}

impl EfficiencyHistogram {
    /// Number of measured sequences with probability above `threshold`.
    pub fn support_size(&self, threshold: f64) -> usize {
        self.sequences
            .iter()
            .filter(|(_, p)| *p > threshold)
            .count()
    }

    pub fn total_probability(&self) -> f64 {
        self.atoms.iter().map(|a| a.probability).sum()
    }

    /// `Σ p·w_tot`.
    pub fn mean_work(&self) -> f64 {
        self.atoms.iter().map(|a| a.probability * a.w_tot).sum()
    }
}

/// Index of the `(hot, cold)` atom, `0..9`.
pub fn atom_index(hot: i8, cold: i8) -> usize {
    (3 * (hot + 1) + (cold + 1)) as usize
}

/// Enumerates the 32 paths of one cycle from the stationary distribution.
pub fn stochastic_efficiency_histogram(chain: &TpmChain) -> EfficiencyHistogram {
    let [ec, eh] = chain.quanta;
    let mut atoms: Vec<EfficiencyAtom> = (-1i8..=1)
        .flat_map(|hot| (-1i8..=1).map(move |cold| (hot, cold)))
        .map(|(hot, cold)| {
            let q_h = eh * f64::from(hot);
            let w_tot = -eh * f64::from(hot) + ec * f64::from(cold);
            EfficiencyAtom {
                hot,
                cold,
                q_h,
                w_tot,
                probability: 0.0,
                eta: (hot != 0).then(|| -w_tot / q_h),
            }
        })
        .collect();
    let mut sequences: Vec<([usize; 4], f64)> = (0..16usize)
        .map(|b| (std::array::from_fn(|k| (b >> (3 - k)) & 1), 0.0))
        .collect();
    for (p, prob) in chain.paths() {
        let hot = p[2] as i8 - p[1] as i8;
        let cold = p[3] as i8 - p[0] as i8;
        atoms[atom_index(hot, cold)].probability += prob;
        sequences[(p[0] << 3) | (p[1] << 2) | (p[2] << 1) | p[3]].1 += prob;
    }
    let diverging_mass = atoms
        .iter()
        .filter(|a| a.hot == 0)
        .map(|a| a.probability)
        .sum();
    EfficiencyHistogram {
        atoms,
        diverging_mass,
        sequences,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::solve_limit_cycle;
    use crate::model::EngineConfig;
    use crate::stats::cgf::work_cumulants;

    #[test]
    fn atoms_match_path_increments() {
        let chain = TpmChain::from_cycle(&solve_limit_cycle(&EngineConfig::fig1()).unwrap());
        for (p, _) in chain.paths() {
            let inc = chain.increments(&p);
            let a = &stochastic_efficiency_histogram(&chain).atoms
                [atom_index(p[2] as i8 - p[1] as i8, p[3] as i8 - p[0] as i8)];
            assert!((a.q_h - inc.q_h).abs() < 1e-9 && (a.w_tot - inc.w_tot()).abs() < 1e-9);
        }
    }

    #[test]
    fn probabilities_and_mean() {
        let chain =
            TpmChain::from_cycle(&solve_limit_cycle(&EngineConfig::fig1().with_r(0.8)).unwrap());
        let h = stochastic_efficiency_histogram(&chain);
        assert!((h.total_probability() - 1.0).abs() < 1e-12);
        let (mean, _) = work_cumulants(&chain);
        assert!((h.mean_work() - mean).abs() < 1e-10 * chain.quanta[1]);
        assert!(h.diverging_mass > 0.0 && h.diverging_mass < 1.0);
    }
}
