//! The dihedral group of order `4n` acting on fragments, generated by the
//! column shift `tau` and the reflection `sigma`.

use std::collections::BTreeSet;

use crate::frieze::Fragment;

/// `tau^shift` after `sigma^reflected`; `shift` is taken modulo `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub shift: usize,
    pub reflected: bool,
}

impl DihedralElement {
    pub fn identity() -> Self {
        DihedralElement { shift: 0, reflected: false }
    }

    pub fn tau() -> Self {
        DihedralElement { shift: 1, reflected: false }
    }

    pub fn sigma() -> Self {
        DihedralElement { shift: 0, reflected: true }
    }

    /// All `4n` elements for fragments of period `2n`.
    pub fn all(period: usize) -> Vec<Self> {
        [false, true]
            .iter()
            .flat_map(|&reflected| (0..period).map(move |shift| DihedralElement { shift, reflected }))
            .collect()
    }

    /// `self ∘ other`, using `sigma tau sigma = tau^-1`.
    pub fn compose(self, other: Self, period: usize) -> Self {
        let b = if self.reflected { period - other.shift % period } else { other.shift };
        DihedralElement { shift: (self.shift + b) % period, reflected: self.reflected != other.reflected }
    }

    pub fn inverse(self, period: usize) -> Self {
        if self.reflected {
            self
        } else {
            DihedralElement { shift: (period - self.shift % period) % period, reflected: false }
        }
    }

    pub fn apply(self, f: &Fragment) -> Fragment {
        let g = if self.reflected { sigma(f) } else { f.clone() };
        g.rotate(self.shift as isize)
    }
}

/// Every row shifted left by one entry.
pub fn tau(f: &Fragment) -> Fragment {
    f.rotate(1)
}

/// Each row `(a_0, a_1, …, a_{2n-1})` becomes `(a_0, a_{2n-1}, …, a_1)`.
pub fn sigma(f: &Fragment) -> Fragment {
    let p = f.period();
    let rows = f.rows().iter().map(|row| (0..p).map(|c| row[(p - c) % p].clone()).collect()).collect();
    Fragment::new(f.width(), rows).expect("reflection keeps shape and positivity")
}

pub fn orbit(f: &Fragment) -> BTreeSet<Fragment> {
    DihedralElement::all(f.period()).into_iter().map(|g| g.apply(f)).collect()
}

/// Least element of the orbit in row-major lexicographic order.
pub fn canonical_form(f: &Fragment) -> Fragment {
    orbit(f).into_iter().next().expect("orbit contains f")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn tau_and_sigma_by_hand() {
        let f = corpus::get("width1").unwrap();
        assert_eq!(tau(&f).rows()[0].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "), "1 2 3 2 1 1 2 3 2 1");
        assert_eq!(sigma(&f).rows()[0].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "), "1 2 3 2 1 1 2 3 2 1");
        let e = corpus::get("width2_e").unwrap();
        assert_eq!(tau(&e), e);
        assert_eq!(sigma(&e), e);
    }

    #[test]
    fn relations_on_corpus() {
        for (name, f) in corpus::all() {
            let p = f.period();
            assert_eq!(sigma(&sigma(&f)), f, "{name}");
            assert_eq!(f.rotate(p as isize), f, "{name}");
            assert_eq!(sigma(&tau(&sigma(&f))), f.rotate(-1), "{name}");
            assert!(tau(&f).is_valid() && sigma(&f).is_valid(), "{name}");
        }
    }

    #[test]
    fn composition_matches_action() {
        let f = corpus::get("width3_glued").unwrap();
        let p = f.period();
        let all = DihedralElement::all(p);
        let images: BTreeSet<Fragment> = all.iter().map(|g| g.apply(&f)).collect();
        assert_eq!(images.len(), 2 * p);
        for &a in &all {
            assert_eq!(a.inverse(p).compose(a, p), DihedralElement::identity());
            for &b in all.iter().step_by(3) {
                assert_eq!(a.compose(b, p).apply(&f), a.apply(&b.apply(&f)));
            }
        }
    }

    #[test]
    fn width_two_orbits() {
        let sizes: Vec<usize> = ["width2_a", "width2_b", "width2_c", "width2_d", "width2_e"]
            .iter()
            .map(|n| orbit(&corpus::get(n).unwrap()).len())
            .collect();
        assert_eq!(sizes, vec![6, 12, 24, 8, 1]);
        let f = corpus::get("width2_c").unwrap();
        let c = canonical_form(&f);
        assert_eq!(canonical_form(&tau(&f)), c);
        assert_eq!(canonical_form(&sigma(&f)), c);
        assert_eq!(canonical_form(&c), c);
    }
}
