use std::fmt;

/// A finite multiset stored as a sorted list of `(element, multiplicity)`
/// pairs. Stored multiplicities are always at least one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset<T> {
    items: Vec<(T, u32)>,
}

impl<T> Default for Multiset<T> {
    fn default() -> Self {
        Multiset { items: Vec::new() }
    }
}

impl<T: fmt::Debug> fmt::Debug for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (x, m) in &self.items {
            for _ in 0..*m {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "{x:?}")?;
            }
        }
        f.write_str("}")
    }
}

impl<T: Ord + Copy> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a multiset from `(element, multiplicity)` pairs in any order.
    /// Zero multiplicities are dropped and repeated keys are merged.
    pub fn from_counts<I: IntoIterator<Item = (T, u32)>>(pairs: I) -> Self {
        let mut items: Vec<(T, u32)> = pairs.into_iter().filter(|&(_, m)| m > 0).collect();
        items.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(T, u32)> = Vec::with_capacity(items.len());
        for (x, m) in items {
            match out.last_mut() {
                Some((y, n)) if *y == x => *n += m,
                _ => out.push((x, m)),
            }
        }
        Multiset { items: out }
    }

    /// Number of distinct elements.
    pub fn distinct(&self) -> usize {
        self.items.len()
    }

    /// Cardinality, counting multiplicity.
    pub fn len(&self) -> u32 {
        self.items.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn count(&self, x: T) -> u32 {
        match self.items.binary_search_by(|p| p.0.cmp(&x)) {
            Ok(i) => self.items[i].1,
            Err(_) => 0,
        }
    }

    pub fn contains(&self, x: T) -> bool {
        self.count(x) > 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, u32)> + '_ {
        self.items.iter().copied()
    }

    pub fn elements(&self) -> impl Iterator<Item = T> + '_ {
        self.items.iter().map(|p| p.0)
    }

    pub fn as_slice(&self) -> &[(T, u32)] {
        &self.items
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.items.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    /// Sets the multiplicity of `x`, removing it when `m == 0`.
    pub fn set(&mut self, x: T, m: u32) {
        match self.items.binary_search_by(|p| p.0.cmp(&x)) {
            Ok(i) if m == 0 => {
                self.items.remove(i);
            }
            Ok(i) => self.items[i].1 = m,
            Err(_) if m == 0 => {}
            Err(i) => self.items.insert(i, (x, m)),
        }
    }

    pub fn insert(&mut self, x: T, m: u32) {
        let c = self.count(x);
        self.set(x, c + m);
    }

    /// Removes up to `m` copies of `x`; returns how many were removed.
    pub fn remove(&mut self, x: T, m: u32) -> u32 {
        let c = self.count(x);
        let r = c.min(m);
        self.set(x, c - r);
        r
    }

    /// Multiset sum: multiplicities add.
    pub fn sum(&self, other: &Self) -> Self {
        self.merge_with(other, |a, b| a + b)
    }

    /// Multiset intersection: minimum multiplicity.
    pub fn intersection(&self, other: &Self) -> Self {
        self.merge_with(other, |a, b| a.min(b))
    }

    /// Multiset difference: multiplicities subtract, saturating at zero.
    pub fn difference(&self, other: &Self) -> Self {
        self.merge_with(other, |a, b| a.saturating_sub(b))
    }

    /// Multiset union: maximum multiplicity.
    pub fn union(&self, other: &Self) -> Self {
        self.merge_with(other, |a, b| a.max(b))
    }

    fn merge_with(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        let (a, b) = (&self.items, &other.items);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (x, m) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, f(a[i - 1].1, 0))
            } else if i >= a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, f(0, b[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, f(a[i - 1].1, b[j - 1].1))
            };
            if m > 0 {
                out.push((x, m));
            }
        }
        Multiset { items: out }
    }

    /// Expands into a sorted list with one entry per copy ("stubs").
    pub fn expand(&self) -> Vec<T> {
        let mut v = Vec::with_capacity(self.len() as usize);
        for &(x, m) in &self.items {
            v.extend(std::iter::repeat_n(x, m as usize));
        }
        v
    }

    /// Multiset of the given (unsorted) elements.
    pub fn from_elements<I: IntoIterator<Item = T>>(xs: I) -> Self {
        let mut v: Vec<T> = xs.into_iter().collect();
        v.sort_unstable();
        let mut items: Vec<(T, u32)> = Vec::new();
        for x in v {
            match items.last_mut() {
                Some((y, n)) if *y == x => *n += 1,
                _ => items.push((x, 1)),
            }
        }
        Multiset { items }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.items.iter().all(|&(x, m)| other.count(x) >= m)
    }

    pub fn map<U: Ord + Copy>(&self, f: impl Fn(T) -> U) -> Multiset<U> {
        Multiset::from_counts(self.items.iter().map(|&(x, m)| (f(x), m)))
    }
}

impl<T: Ord + Copy> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Multiset::from_elements(iter)
    }
}
