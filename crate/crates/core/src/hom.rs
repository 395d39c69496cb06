//! Birth and death of the last homomorphism between two intervals, and the
//! closed-form interleaving distance `min(m1, m2)`.

use crate::interval::{hom_window, width, HomWindow, IntervalModule};
use crate::rational::Rational;

/// Critical shifts for an interval pair `M = [a,b)`, `N = [c,d)`.
///
/// `sigma`/`sigma_prime` bound the window of `M -> N·x`, `tau`/`tau_prime`
/// the window of `N -> M·x`; an empty window contributes `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLifeSummary {
    pub sigma: Rational,
    pub sigma_prime: Rational,
    pub tau: Rational,
    pub tau_prime: Rational,
    /// `max(|a-c|, |b-d|)`
    pub m1: Rational,
    /// `max(width(M), width(N))`
    pub m2: Rational,
    pub distance: Rational,
}

impl HomLifeSummary {
    /// Where the last surviving homomorphism is born.
    pub fn last_birth(&self) -> Rational {
        self.sigma.clone().max(self.tau.clone())
    }

    /// Where the last surviving homomorphism dies.
    pub fn last_death(&self) -> Rational {
        self.sigma_prime.clone().max(self.tau_prime.clone())
    }
}

fn bounds(window: &HomWindow) -> (Rational, Rational) {
    match window {
        HomWindow::Empty => (Rational::zero(), Rational::zero()),
        HomWindow::Window { lo, hi } => (lo.clone(), hi.clone()),
    }
}

/// `max(|a-c|, |b-d|)`: the cost of matching `[a,b)` with `[c,d)`.
pub fn endpoint_displacement(m: &IntervalModule, n: &IntervalModule) -> Rational {
    (m.birth() - n.birth())
        .abs()
        .max((m.death() - n.death()).abs())
}

pub fn hom_life(m: &IntervalModule, n: &IntervalModule) -> HomLifeSummary {
    let (sigma, sigma_prime) = bounds(&hom_window(m, n));
    let (tau, tau_prime) = bounds(&hom_window(n, m));
    let m1 = endpoint_displacement(m, n);
    let m2 = width(m).max(width(n));
    let distance = m1.clone().min(m2.clone());
    let summary = HomLifeSummary {
        sigma,
        sigma_prime,
        tau,
        tau_prime,
        m1,
        m2,
        distance,
    };
    debug_assert_eq!(summary.last_birth(), summary.m1);
    debug_assert_eq!(
        summary.last_death(),
        (m.birth() - n.death())
            .abs()
            .max((m.death() - n.birth()).abs())
    );
    summary
}

/// Whether exactly one of the two hom windows meets `[D, ∞)`.
pub fn single_hom_survives(m: &IntervalModule, n: &IntervalModule) -> bool {
    let d = hom_life(m, n).distance;
    hom_window(m, n).reaches(&d) != hom_window(n, m).reaches(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn iv(b: &str, d: &str) -> IntervalModule {
        IntervalModule::new(q(b), q(d)).unwrap()
    }

    #[test]
    fn disjoint_pair() {
        let s = hom_life(&iv("6", "8"), &iv("1", "2"));
        assert_eq!(s.sigma, q("0"));
        assert_eq!(s.sigma_prime, q("0"));
        assert_eq!(s.tau, q("6"));
        assert_eq!(s.tau_prime, q("7"));
        assert_eq!(s.m1, q("6"));
        assert_eq!(s.m2, q("1"));
        assert_eq!(s.distance, q("1"));
    }

    #[test]
    fn equal_intervals() {
        let s = hom_life(&iv("1", "3"), &iv("1", "3"));
        assert_eq!((s.sigma.clone(), s.tau.clone()), (q("0"), q("0")));
        assert_eq!((s.sigma_prime.clone(), s.tau_prime.clone()), (q("2"), q("2")));
        assert_eq!(s.m1, q("0"));
        assert_eq!(s.m2, q("1"));
        assert_eq!(s.distance, q("0"));
    }

    #[test]
    fn nested_pairs() {
        let s = hom_life(&iv("1", "2.1"), &iv("0.8", "2.2"));
        assert_eq!((s.m1, s.m2, s.distance), (q("0.2"), q("0.7"), q("0.2")));
        let s = hom_life(&iv("0.9", "2.1"), &iv("1", "2"));
        assert_eq!((s.m1, s.m2, s.distance), (q("0.1"), q("0.6"), q("0.1")));
    }

    #[test]
    fn surviving_homs() {
        assert!(single_hom_survives(&iv("6", "8"), &iv("1", "2")));
        assert!(!single_hom_survives(&iv("1", "2.1"), &iv("0.8", "2.2")));
        // m1 = m2 = 1; windows [1,3) and [0,1): only the first reaches D = 1
        let (m, n) = (iv("1", "3"), iv("0", "2"));
        assert_eq!(hom_window(&m, &n), HomWindow::Window { lo: q("0"), hi: q("1") });
        assert_eq!(hom_window(&n, &m), HomWindow::Window { lo: q("1"), hi: q("3") });
        assert!(single_hom_survives(&m, &n));
    }
}
