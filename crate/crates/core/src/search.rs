//! Deterministic subset enumeration.

/// All nonempty subsets of `items`, as masks over the item positions, ordered by
/// cardinality and lexicographically by position list within one cardinality.
pub fn subsets_by_size(len: usize) -> impl Iterator<Item = u64> {
    assert!(len < 64);
    let mut size = 1;
    let mut idx: Vec<usize> = (0..size.min(len)).collect();
    let mut done = len == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        // advance to the next combination of this size, or the first of the next size
        let mut pos = size;
        loop {
            if pos == 0 {
                size += 1;
                if size > len {
                    done = true;
                } else {
                    idx = (0..size).collect();
                }
                break;
            }
            pos -= 1;
            if idx[pos] < len - size + pos {
                idx[pos] += 1;
                for q in pos + 1..size {
                    idx[q] = idx[q - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    })
}

/// Expands a position mask into the selected items.
pub fn pick<T: Copy>(items: &[T], mask: u64) -> impl Iterator<Item = T> + '_ {
    crate::graph::bits(mask).map(move |i| items[i])
}
