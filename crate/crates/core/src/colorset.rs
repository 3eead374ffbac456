use std::fmt;

use smallvec::SmallVec;

/// A subset of the vertices of a target graph.
///
/// Stored as a bitset over a fixed universe `0..universe`. Sets over the
/// universes used here (at most a handful of target vertices) fit in one
/// inline word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet {
    universe: usize,
    words: SmallVec<[u64; 1]>,
}

fn word_count(universe: usize) -> usize {
    universe.div_ceil(64).max(1)
}

impl ColorSet {
    pub fn empty(universe: usize) -> Self {
        ColorSet {
            universe,
            words: SmallVec::from_elem(0, word_count(universe)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for x in 0..universe {
            s.insert(x);
        }
        s
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(x);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = Self::empty(universe);
        for x in items {
            s.insert(x);
        }
        s
    }

    /// Builds a set from a bitmask; bit `i` selects vertex `i`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        Self::from_indices(universe, (0..universe.min(64)).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// # Panics
    /// If `x` lies outside the universe.
    pub fn insert(&mut self, x: usize) {
        assert!(x < self.universe, "color {x} outside universe {}", self.universe);
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.universe {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union_with(&mut self, other: &ColorSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &ColorSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union(&self, other: &ColorSet) -> ColorSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ColorSet) -> ColorSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn complement(&self) -> ColorSet {
        let mut s = ColorSet::full(self.universe);
        for (a, b) in s.words.iter_mut().zip(&self.words) {
            *a &= !*b;
        }
        s
    }

    pub fn is_subset(&self, other: &ColorSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ColorSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// The low 64 bits as a mask.
    pub fn mask(&self) -> u64 {
        self.words[0]
    }

    /// Renders the set using vertex names, e.g. `{a,b,d}`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct Named<'a>(&'a ColorSet, &'a [String]);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{")?;
                for (i, x) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    match self.1.get(x) {
                        Some(name) => write!(f, "{name}")?,
                        None => write!(f, "{x}")?,
                    }
                }
                write!(f, "}}")
            }
        }
        Named(self, names)
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}
