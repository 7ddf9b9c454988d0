use crate::error::ValidationError;
use crate::Elem;

/// An `n × n` operation table over `{0, .., n-1}`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<Elem>,
}

impl CayleyTable {
    pub fn new(order: usize, entries: Vec<Elem>) -> Result<Self, ValidationError> {
        Self::checked(order, entries, "cayley")
    }

    pub(crate) fn checked(
        order: usize,
        entries: Vec<Elem>,
        table: &'static str,
    ) -> Result<Self, ValidationError> {
        if entries.len() != order * order {
            return Err(ValidationError::BadShape {
                len: entries.len(),
                expected: order * order,
            });
        }
        if let Some(pos) = entries.iter().position(|&v| v >= order) {
            return Err(ValidationError::EntryOutOfRange {
                table,
                row: pos / order,
                col: pos % order,
                value: entries[pos],
                order,
            });
        }
        Ok(CayleyTable { order, entries })
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Self, ValidationError> {
        let order = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != order) {
            return Err(ValidationError::BadShape {
                len: r.len(),
                expected: order,
            });
        }
        Self::new(order, rows.concat())
    }

    /// Builds a table from a closure. Panics if the closure leaves the carrier.
    pub fn from_fn(order: usize, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let v = f(a, b);
                assert!(v < order, "table entry {v} out of range for order {order}");
                entries.push(v);
            }
        }
        CayleyTable { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.entries[a * self.order + b]
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.entries[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.order).map(|a| self.row(a).to_vec()).collect()
    }

    #[cfg(test)]
    pub(crate) fn set(&mut self, a: Elem, b: Elem, v: Elem) {
        self.entries[a * self.order + b] = v;
    }

    /// Relabels elements through the bijection `perm` (old index → new index).
    pub fn relabeled(&self, perm: &[Elem]) -> CayleyTable {
        let n = self.order;
        let mut entries = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                entries[perm[a] * n + perm[b]] = perm[self.get(a, b)];
            }
        }
        CayleyTable { order: n, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_entries() {
        assert!(matches!(
            CayleyTable::new(2, vec![0, 1, 1]),
            Err(ValidationError::BadShape { .. })
        ));
        assert!(matches!(
            CayleyTable::new(2, vec![0, 1, 1, 2]),
            Err(ValidationError::EntryOutOfRange { row: 1, col: 1, .. })
        ));
    }

    #[test]
    fn relabel_swaps() {
        let t = CayleyTable::from_fn(3, |a, b| (a + b) % 3);
        let r = t.relabeled(&[1, 0, 2]);
        // old 0 is new 1, so new 1 is the identity
        assert_eq!(r.row(1), &[0, 1, 2]);
    }
}
