//! Deterministic Schreier–Sims stabilizer chain.

use super::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// Strong generators fixing all earlier base points.
    generators: Vec<Permutation>,
    /// Orbit of the base point, in discovery order.
    orbit: Vec<usize>,
    /// `transversal[beta]` maps the base point to `beta`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Permutation::identity(degree));
        Level {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point],
            transversal,
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            for s in &self.generators {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().then(s);
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set with transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators.iter().filter(|g| !g.is_identity()) {
            chain.ensure_moves_base(g);
            // g fixes nothing before its first moved base level; it belongs to level 0.
            chain.levels[0].generators.push(g.clone());
        }
        for level in &mut chain.levels {
            level.rebuild_orbit();
        }
        chain.complete();
        chain
    }

    /// Extends the base so that `g` moves some base point.
    fn ensure_moves_base(&mut self, g: &Permutation) -> usize {
        if let Some(i) = self.levels.iter().position(|l| g.apply(l.base_point) != l.base_point) {
            return i;
        }
        let point = g.first_moved_point().expect("non-identity");
        self.levels.push(Level::new(point, self.degree));
        self.levels.len() - 1
    }

    /// Sifts `g` starting at `start`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it went through).
    fn strip_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.apply(level.base_point);
            match &level.transversal[beta] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match self.find_missing(lvl) {
                None => i -= 1,
                Some((residue, j)) => {
                    let j = if j == self.levels.len() {
                        self.ensure_moves_base(&residue)
                    } else {
                        j
                    };
                    for l in lvl + 1..=j {
                        self.levels[l].generators.push(residue.clone());
                        self.levels[l].rebuild_orbit();
                    }
                    i = j as isize;
                }
            }
        }
    }

    /// First Schreier generator at `lvl` that does not sift through the
    /// lower levels.
    fn find_missing(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[lvl];
        for &beta in &level.orbit {
            let u_beta = level.transversal[beta].as_ref().unwrap();
            for s in &level.generators {
                let gamma = s.apply(beta);
                let u_gamma = level.transversal[gamma].as_ref().unwrap();
                let h = u_beta.then(s).then(&u_gamma.inverse());
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = self.strip_from(&h, lvl + 1);
                if j < self.levels.len() || !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    /// Group order, or `None` on overflow of `u128`.
    pub fn order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, j) = self.strip_from(g, 0);
        j == self.levels.len() && residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.first().map(|l| l.generators.clone()).unwrap_or_default()
    }

    /// All group elements, as products of transversal elements.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &beta in &level.orbit {
                let u = level.transversal[beta].as_ref().unwrap();
                next.extend(out.iter().map(|x| x.then(u)));
            }
            out = next;
        }
        out
    }
}
