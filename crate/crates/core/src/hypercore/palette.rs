// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use crate::error::{Error, Result};

/// Edge colors are dense indices `0..|K_j|`.
pub type Color = u8;

/// A partial order on `0..size` with a unique meet for every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    size: usize,
    covers: Vec<(Color, Color)>,
    leq: Vec<bool>,
    meet: Vec<Color>,
}

impl Semilattice {
    /// Builds the order generated by `covers` (each `(a, b)` means `a < b`)
    /// and checks that it is a meet-semilattice.
    pub fn from_covers(size: usize, covers: &[(Color, Color)]) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for a in 0..size {
            leq[a * size + a] = true;
        }
        for &(a, b) in covers {
            let (a, b) = (a as usize, b as usize);
            if a >= size || b >= size {
                return Err(Error::Palette(format!(
                    "cover ({a}, {b}) outside 0..{size}"
                )));
            }
            leq[a * size + b] = true;
        }
        // Warshall closure
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            for j in i + 1..size {
                if leq[i * size + j] && leq[j * size + i] {
                    return Err(Error::Palette(format!(
                        "order relation has a cycle through {i} and {j}"
                    )));
                }
            }
        }
        let mut meet = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                let lower: Vec<usize> = (0..size)
                    .filter(|&z| leq[z * size + x] && leq[z * size + y])
                    .collect();
                let greatest = lower
                    .iter()
                    .copied()
                    .filter(|&z| lower.iter().all(|&w| leq[w * size + z]))
                    .collect::<Vec<_>>();
                match greatest.as_slice() {
                    [z] => meet[x * size + y] = *z as Color,
                    _ => {
                        return Err(Error::Palette(format!(
                            "colors {x} and {y} have no unique meet"
                        )))
                    }
                }
            }
        }
        Ok(Self {
            size,
            covers: covers.to_vec(),
            leq,
            meet,
        })
    }

    /// Total order `0 < 1 < ... < size-1`.
    pub fn chain(size: usize) -> Self {
        let covers: Vec<(Color, Color)> = (1..size).map(|c| ((c - 1) as Color, c as Color)).collect();
        Self::from_covers(size, &covers).expect("a chain is a semilattice")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn covers(&self) -> &[(Color, Color)] {
        &self.covers
    }

    pub fn leq(&self, a: Color, b: Color) -> bool {
        self.leq[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn meet(&self, a: Color, b: Color) -> Color {
        self.meet[a as usize * self.size + b as usize]
    }
}

/// A finite palette `(K_0, ..., K_k)` of declared order `k`.
#[derive(Debug, Clone)]
pub struct Palette {
    sizes: Vec<usize>,
    orders: Vec<Option<Semilattice>>,
    labels: Option<Vec<Vec<String>>>,
}

impl PartialEq for Palette {
    // labels are cosmetic
    fn eq(&self, other: &Self) -> bool {
        self.sizes == other.sizes && self.orders == other.orders
    }
}

impl Eq for Palette {}

impl Palette {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Palette("at least K_0 is required".into()));
        }
        if let Some(j) = sizes.iter().position(|&s| s == 0 || s > 256) {
            return Err(Error::Palette(format!(
                "level {j} has size {}, expected 1..=256",
                sizes[j]
            )));
        }
        let orders = vec![None; sizes.len()];
        Ok(Self {
            sizes,
            orders,
            labels: None,
        })
    }

    /// `{0,1}_k` style palette: a point at every level below `k`, `size`
    /// colors at level `k`.
    pub fn uniform(order: usize, size: usize) -> Result<Self> {
        let mut sizes = vec![1; order + 1];
        sizes[order] = size;
        Self::new(sizes)
    }

    /// Directed graphs: `{0,1}_2`.
    pub fn digraph() -> Self {
        Self::uniform(2, 2).expect("valid")
    }

    /// Attaches an order specification at `level`.
    pub fn with_order(mut self, level: usize, covers: &[(Color, Color)]) -> Result<Self> {
        let size = *self
            .sizes
            .get(level)
            .ok_or_else(|| Error::Palette(format!("no level {level}")))?;
        self.orders[level] = Some(Semilattice::from_covers(size, covers)?);
        Ok(self)
    }

    /// Orders every level as the chain `0 < 1 < ...`.
    pub fn with_chain_orders(mut self) -> Self {
        self.orders = self.sizes.iter().map(|&s| Some(Semilattice::chain(s))).collect();
        self
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.sizes.len()
            || labels.iter().zip(&self.sizes).any(|(l, &s)| l.len() != s)
        {
            return Err(Error::Palette("label table does not match sizes".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Same color sets, ignoring order specifications and labels.
    pub fn compatible(&self, other: &Palette) -> bool {
        self.sizes == other.sizes
    }

    pub fn order(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, level: usize) -> usize {
        self.sizes[level]
    }

    pub fn label(&self, level: usize, color: Color) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|l| l.get(level))
            .and_then(|l| l.get(color as usize))
            .map(String::as_str)
    }

    pub fn semilattice(&self, level: usize) -> Option<&Semilattice> {
        self.orders.get(level).and_then(Option::as_ref)
    }

    pub fn is_ordered(&self) -> bool {
        self.orders.iter().all(Option::is_some)
    }

    /// Error naming the first level without an order specification.
    pub fn require_ordered(&self) -> Result<()> {
        match self.orders.iter().position(Option::is_none) {
            Some(level) => Err(Error::Unordered(level)),
            None => Ok(()),
        }
    }

    pub fn check_color(&self, level: usize, color: usize) -> Result<()> {
        let size = self.sizes[level];
        if color >= size {
            return Err(Error::ColorOutOfRange { level, color, size });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Palette::new(vec![]).is_err());
        assert!(Palette::new(vec![1, 0]).is_err());
        let p = Palette::uniform(3, 2).unwrap();
        assert_eq!(p.sizes(), &[1, 1, 1, 2]);
        assert_eq!(p.order(), 3);
    }

    #[test]
    fn boolean_meet_is_and() {
        let s = Semilattice::chain(2);
        assert_eq!(s.meet(0, 1), 0);
        assert_eq!(s.meet(1, 1), 1);
        assert_eq!(s.meet(0, 0), 0);
    }

    #[test]
    fn diamond_is_a_semilattice_but_two_maxima_over_nothing_is_not() {
        // 0 < 1, 0 < 2, 1 < 3, 2 < 3
        let d = Semilattice::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(d.meet(1, 2), 0);
        assert_eq!(d.meet(3, 2), 2);
        // two incomparable minimal elements have no meet
        assert!(Semilattice::from_covers(2, &[]).is_err());
        // 0,1 < 2 and 0,1 < 3: meet of 2,3 is not unique
        assert!(Semilattice::from_covers(4, &[(0, 2), (1, 2), (0, 3), (1, 3)]).is_err());
        assert!(Semilattice::from_covers(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let a = Palette::digraph();
        let b = Palette::digraph()
            .with_labels(vec![vec!["pt".into()], vec!["v".into()], vec!["no".into(), "yes".into()]])
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(b.label(2, 1), Some("yes"));
        assert_ne!(a, a.clone().with_chain_orders());
    }
}
