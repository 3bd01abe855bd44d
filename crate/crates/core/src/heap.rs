//! Addressable min-priority queue with decrease-key and arbitrary delete.
//!
//! A pairing heap over a slab of nodes. Handles stay valid from insert
//! until the item is extracted or deleted; afterwards they are detected
//! as stale through a per-slot generation counter. Insert and
//! decrease-key are O(1), extract-min and delete are O(log n) amortized,
//! which matches the accounting the matcher relies on.

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum HeapError {
    #[error("extract_min on an empty heap")]
    Empty,
    #[error("handle does not refer to a live item")]
    StaleHandle,
    #[error("decrease_key called with a larger priority")]
    KeyIncrease,
}

/// Stable identifier for an inserted item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeapHandle {
    index: u32,
    generation: u32,
}

struct Node<K, T> {
    key: K,
    value: Option<T>,
    child: Option<u32>,
    sibling: Option<u32>,
    /// Previous sibling, or parent when this is a first child; None for
    /// a detached node or the root.
    prev: Option<u32>,
    generation: u32,
    live: bool,
}

pub struct PairingHeap<K, T> {
    nodes: Vec<Node<K, T>>,
    free: Vec<u32>,
    root: Option<u32>,
    len: usize,
}

impl<K: PartialOrd + Copy, T> PairingHeap<K, T> {
    pub fn new() -> Self {
        Self {
            nodes: Vec::new(),
            free: Vec::new(),
            root: None,
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Drops all items. Handles from before the clear become stale.
    pub fn clear(&mut self) {
        for (i, node) in self.nodes.iter_mut().enumerate() {
            if node.live {
                node.live = false;
                node.value = None;
                node.generation = node.generation.wrapping_add(1);
                self.free.push(i as u32);
            }
        }
        self.root = None;
        self.len = 0;
    }

    pub fn insert(&mut self, key: K, value: T) -> HeapHandle {
        let idx = match self.free.pop() {
            Some(i) => {
                let node = &mut self.nodes[i as usize];
                node.key = key;
                node.value = Some(value);
                node.child = None;
                node.sibling = None;
                node.prev = None;
                node.live = true;
                i
            }
            None => {
                self.nodes.push(Node {
                    key,
                    value: Some(value),
                    child: None,
                    sibling: None,
                    prev: None,
                    generation: 0,
                    live: true,
                });
                (self.nodes.len() - 1) as u32
            }
        };
        self.len += 1;
        self.root = Some(match self.root {
            Some(r) => self.merge(r, idx),
            None => idx,
        });
        HeapHandle {
            index: idx,
            generation: self.nodes[idx as usize].generation,
        }
    }

    pub fn peek_min(&self) -> Option<(&K, &T)> {
        self.root.map(|r| {
            let node = &self.nodes[r as usize];
            (&node.key, node.value.as_ref().expect("live node holds a value"))
        })
    }

    pub fn extract_min(&mut self) -> Result<(K, T), HeapError> {
        let root = self.root.ok_or(HeapError::Empty)?;
        let children = self.nodes[root as usize].child.take();
        self.root = self.two_pass(children);
        if let Some(r) = self.root {
            self.nodes[r as usize].prev = None;
            self.nodes[r as usize].sibling = None;
        }
        Ok(self.retire(root))
    }

    pub fn decrease_key(&mut self, handle: HeapHandle, new_key: K) -> Result<(), HeapError> {
        let idx = self.check(handle)?;
        let node = &mut self.nodes[idx as usize];
        if new_key > node.key {
            return Err(HeapError::KeyIncrease);
        }
        node.key = new_key;
        if self.root != Some(idx) {
            self.cut(idx);
            let root = self.root.expect("non-root node implies non-empty heap");
            self.root = Some(self.merge(root, idx));
        }
        Ok(())
    }

    /// Removes an arbitrary live item.
    pub fn delete(&mut self, handle: HeapHandle) -> Result<(K, T), HeapError> {
        let idx = self.check(handle)?;
        if self.root == Some(idx) {
            return self.extract_min();
        }
        self.cut(idx);
        let children = self.nodes[idx as usize].child.take();
        let orphans = self.two_pass(children);
        if let Some(o) = orphans {
            self.nodes[o as usize].prev = None;
            self.nodes[o as usize].sibling = None;
            let root = self.root.expect("heap still holds other items");
            self.root = Some(self.merge(root, o));
        }
        Ok(self.retire(idx))
    }

    pub fn key_of(&self, handle: HeapHandle) -> Result<&K, HeapError> {
        let idx = self.check(handle)?;
        Ok(&self.nodes[idx as usize].key)
    }

    fn check(&self, handle: HeapHandle) -> Result<u32, HeapError> {
        let i = handle.index as usize;
        if i >= self.nodes.len()
            || !self.nodes[i].live
            || self.nodes[i].generation != handle.generation
        {
            return Err(HeapError::StaleHandle);
        }
        Ok(handle.index)
    }

    fn retire(&mut self, idx: u32) -> (K, T)
    where
        K: Copy,
    {
        let node = &mut self.nodes[idx as usize];
        node.live = false;
        node.generation = node.generation.wrapping_add(1);
        node.child = None;
        node.sibling = None;
        node.prev = None;
        self.free.push(idx);
        self.len -= 1;
        let key = node.key;
        let value = node.value.take().expect("live node holds a value");
        (key, value)
    }

    /// Links the root with larger key under the other; ties keep `a`.
    fn merge(&mut self, a: u32, b: u32) -> u32 {
        let (upper, lower) = if self.nodes[b as usize].key < self.nodes[a as usize].key {
            (b, a)
        } else {
            (a, b)
        };
        let first = self.nodes[upper as usize].child.replace(lower);
        {
            let low = &mut self.nodes[lower as usize];
            low.sibling = first;
            low.prev = Some(upper);
        }
        if let Some(f) = first {
            self.nodes[f as usize].prev = Some(lower);
        }
        upper
    }

    /// Detaches a non-root node from its parent/sibling chain.
    fn cut(&mut self, idx: u32) {
        let prev = self.nodes[idx as usize].prev.expect("cut on detached node");
        let sibling = self.nodes[idx as usize].sibling.take();
        if self.nodes[prev as usize].child == Some(idx) {
            self.nodes[prev as usize].child = sibling;
        } else {
            self.nodes[prev as usize].sibling = sibling;
        }
        if let Some(s) = sibling {
            self.nodes[s as usize].prev = Some(prev);
        }
        self.nodes[idx as usize].prev = None;
    }

    /// Standard two-pass pairing merge of a sibling list.
    fn two_pass(&mut self, first: Option<u32>) -> Option<u32> {
        let mut pairs: Vec<u32> = Vec::new();
        let mut cur = first;
        while let Some(a) = cur {
            let next = self.nodes[a as usize].sibling.take();
            self.nodes[a as usize].prev = None;
            match next {
                Some(b) => {
                    let after = self.nodes[b as usize].sibling.take();
                    self.nodes[b as usize].prev = None;
                    pairs.push(self.merge(a, b));
                    cur = after;
                }
                None => {
                    pairs.push(a);
                    cur = None;
                }
            }
        }
        let mut merged: Option<u32> = None;
        for &p in pairs.iter().rev() {
            merged = Some(match merged {
                Some(m) => self.merge(p, m),
                None => p,
            });
        }
        merged
    }
}

impl<K: PartialOrd + Copy, T> Default for PairingHeap<K, T> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn insert_and_peek() {
        let mut h = PairingHeap::new();
        h.insert(3, 'a');
        h.insert(1, 'b');
        h.insert(2, 'c');
        assert_eq!(h.peek_min(), Some((&1, &'b')));
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn extract_orders_items() {
        let mut h = PairingHeap::new();
        for k in [4, 2, 7] {
            h.insert(k, k);
        }
        assert_eq!(h.extract_min().unwrap(), (2, 2));
        assert_eq!(h.extract_min().unwrap(), (4, 4));
        assert_eq!(h.extract_min().unwrap(), (7, 7));
        assert_eq!(h.extract_min().unwrap_err(), HeapError::Empty);
    }

    #[test]
    fn decrease_key_reorders() {
        let mut h = PairingHeap::new();
        let a = h.insert(5, 'a');
        h.insert(3, 'b');
        h.decrease_key(a, 0).unwrap();
        assert_eq!(h.peek_min(), Some((&0, &'a')));
        // decreasing the min further keeps it the min
        h.decrease_key(a, -1).unwrap();
        assert_eq!(h.peek_min(), Some((&-1, &'a')));
    }

    #[test]
    fn decrease_key_rejects_increase() {
        let mut h = PairingHeap::new();
        let a = h.insert(5, ());
        assert_eq!(h.decrease_key(a, 6).unwrap_err(), HeapError::KeyIncrease);
        // equal is allowed
        h.decrease_key(a, 5).unwrap();
    }

    #[test]
    fn delete_any_position() {
        let mut h = PairingHeap::new();
        let a = h.insert(1, 'a');
        let b = h.insert(2, 'b');
        h.delete(b).unwrap();
        assert_eq!(h.peek_min(), Some((&1, &'a')));
        h.delete(a).unwrap();
        assert!(h.is_empty());

        let a = h.insert(1, 'a');
        h.insert(2, 'b');
        h.delete(a).unwrap();
        assert_eq!(h.peek_min(), Some((&2, &'b')));
    }

    #[test]
    fn stale_handles_detected() {
        let mut h = PairingHeap::new();
        let a = h.insert(1, ());
        h.extract_min().unwrap();
        assert_eq!(h.decrease_key(a, 0).unwrap_err(), HeapError::StaleHandle);
        assert_eq!(h.delete(a).unwrap_err(), HeapError::StaleHandle);
        // slot reuse does not revive the old handle
        let b = h.insert(2, ());
        assert_eq!(h.delete(a).unwrap_err(), HeapError::StaleHandle);
        h.delete(b).unwrap();
    }

    #[test]
    fn clear_invalidates_everything() {
        let mut h = PairingHeap::new();
        let a = h.insert(1, ());
        h.insert(2, ());
        h.clear();
        assert!(h.is_empty());
        assert_eq!(h.decrease_key(a, 0).unwrap_err(), HeapError::StaleHandle);
    }

    /// Sorted-list reference used as the behavioral oracle.
    struct Reference {
        items: Vec<(i64, u32)>, // (key, id), ascending by (key, id)
    }

    impl Reference {
        fn insert(&mut self, key: i64, id: u32) {
            let pos = self.items.partition_point(|&(k, i)| (k, i) < (key, id));
            self.items.insert(pos, (key, id));
        }
        fn extract_min(&mut self) -> Option<(i64, u32)> {
            if self.items.is_empty() {
                None
            } else {
                Some(self.items.remove(0))
            }
        }
        fn decrease(&mut self, id: u32, new_key: i64) {
            let pos = self.items.iter().position(|&(_, i)| i == id).unwrap();
            self.items.remove(pos);
            self.insert(new_key, id);
        }
        fn delete(&mut self, id: u32) {
            let pos = self.items.iter().position(|&(_, i)| i == id).unwrap();
            self.items.remove(pos);
        }
    }

    /// 10^4 random operation sequences against the sorted-list reference.
    /// Keys are made unique via an (key, id) composite so both sides have
    /// a single legal answer at every step.
    #[test]
    fn matches_reference_on_random_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let ops = rng.gen_range(1..=200);
            let mut heap: PairingHeap<(i64, u32), u32> = PairingHeap::new();
            let mut reference = Reference { items: Vec::new() };
            let mut live: Vec<(u32, HeapHandle, i64)> = Vec::new();
            let mut next_id = 0u32;
            for _ in 0..ops {
                match rng.gen_range(0..10) {
                    0..=4 => {
                        let key = rng.gen_range(-50..50);
                        let id = next_id;
                        next_id += 1;
                        let h = heap.insert((key, id), id);
                        reference.insert(key, id);
                        live.push((id, h, key));
                    }
                    5..=6 => {
                        let got = heap.extract_min().ok().map(|((k, i), v)| {
                            assert_eq!(i, v);
                            (k, v)
                        });
                        assert_eq!(got, reference.extract_min());
                        if let Some((_, id)) = got {
                            live.retain(|&(i, _, _)| i != id);
                        }
                    }
                    7..=8 if !live.is_empty() => {
                        let pick = rng.gen_range(0..live.len());
                        let (id, h, key) = live[pick];
                        let new_key = key - rng.gen_range(0..20);
                        heap.decrease_key(h, (new_key, id)).unwrap();
                        reference.decrease(id, new_key);
                        live[pick].2 = new_key;
                    }
                    _ if !live.is_empty() => {
                        let pick = rng.gen_range(0..live.len());
                        let (id, h, _) = live.swap_remove(pick);
                        heap.delete(h).unwrap();
                        reference.delete(id);
                    }
                    _ => {}
                }
                assert_eq!(heap.len(), reference.items.len());
            }
            while let Ok(((k, i), v)) = heap.extract_min() {
                assert_eq!(i, v);
                assert_eq!(reference.extract_min(), Some((k, v)));
            }
            assert!(reference.items.is_empty());
        }
    }
}
