/// Compressed per-vertex lists. Each vertex owns one contiguous span of
/// `items`; spans may be laid out in any vertex order. Offsets are 32-bit,
/// so a `Csr` holds fewer than 2^32 items.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Csr<T> {
    spans: Vec<(u32, u32)>,
    items: Vec<T>,
}

impl<T: Copy> Csr<T> {
    /// Bucket `(vertex, item)` pairs, preserving input order within a vertex.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, T)> + Clone) -> Self {
        Self::bucket(n, None, pairs)
    }

    /// As [`Csr::from_pairs`], with spans stored in the order of `layout`, a
    /// permutation of the vertices. Traversals that follow `layout` then
    /// read `items` front to back.
    pub fn from_pairs_in_layout(
        n: usize,
        layout: &[usize],
        pairs: impl IntoIterator<Item = (usize, T)> + Clone,
    ) -> Self {
        Self::bucket(n, Some(layout), pairs)
    }

    fn bucket(n: usize, layout: Option<&[usize]>, pairs: impl IntoIterator<Item = (usize, T)> + Clone) -> Self {
        let mut counts = vec![0usize; n];
        for (v, _) in pairs.clone() {
            counts[v] += 1;
        }
        let mut spans = vec![(0, 0); n];
        let mut next = 0usize;
        let mut place = |v: usize| {
            spans[v] = (offset(next), offset(next));
            next += counts[v];
        };
        match layout {
            Some(order) => order.iter().for_each(|&v| place(v)),
            None => (0..n).for_each(place),
        }
        let Some((_, filler)) = pairs.clone().into_iter().next() else {
            return Csr { spans, items: Vec::new() };
        };
        // every slot is overwritten below
        offset(next);
        let mut items = vec![filler; next];
        for (v, item) in pairs {
            items[spans[v].1 as usize] = item;
            spans[v].1 += 1;
        }
        Csr { spans, items }
    }

    /// Build from lists pushed one vertex at a time, in any vertex order.
    pub fn builder(n: usize, capacity: usize) -> CsrBuilder<T> {
        CsrBuilder { spans: vec![(0, 0); n], mark: 0, items: Vec::with_capacity(capacity) }
    }
}

impl<T> Csr<T> {
    #[inline]
    pub fn get(&self, v: usize) -> &[T] {
        let (start, end) = self.spans[v];
        &self.items[start as usize..end as usize]
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total(&self) -> usize {
        self.items.len()
    }
}

pub struct CsrBuilder<T> {
    spans: Vec<(u32, u32)>,
    mark: u32,
    items: Vec<T>,
}

impl<T> CsrBuilder<T> {
    pub fn push(&mut self, item: T) {
        self.items.push(item);
    }

    /// Close vertex `v`'s list: everything pushed since the previous close.
    /// Vertices never closed get an empty list.
    pub fn finish(&mut self, v: usize) {
        let end = offset(self.items.len());
        self.spans[v] = (self.mark, end);
        self.mark = end;
    }

    pub fn build(self) -> Csr<T> {
        Csr { spans: self.spans, items: self.items }
    }
}

fn offset(len: usize) -> u32 {
    u32::try_from(len).expect("Csr holds fewer than 2^32 items")
}
