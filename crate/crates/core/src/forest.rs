//! The shared parent forest and the four per-element kernels that mutate it.
//!
//! Every slot is an `AtomicU32`. Plain reads and writes use relaxed ordering;
//! the only read-modify-write is the root acquisition in [`ParentForest::atomic_hook`],
//! which is acquire-release. Cross-slot visibility is provided by the phase
//! barriers of the drivers, not by the kernels.
//!
//! All kernels preserve `parent(v) <= v`: hooks write a smaller root into a
//! larger slot and jumps replace a parent with an ancestor.

use std::fmt;
use std::ops::AddAssign;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::Serialize;

use crate::error::ForestError;
use crate::graph::Vertex;

/// Work counters accumulated by the kernels. Drivers keep one per worker and
/// merge them at phase boundaries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KernelCounters {
    /// Iterations of the atomic hook retry loop.
    pub hook_traversal_steps: u64,
    /// Root acquisitions that failed, either because the slot was not a root
    /// or because a concurrent hook won the compare-and-swap.
    pub cas_failures: u64,
    /// Jump writes that changed a slot.
    pub jump_steps: u64,
}

impl KernelCounters {
    pub fn merge(&mut self, other: &KernelCounters) {
        self.hook_traversal_steps = self
            .hook_traversal_steps
            .saturating_add(other.hook_traversal_steps);
        self.cas_failures = self.cas_failures.saturating_add(other.cas_failures);
        self.jump_steps = self.jump_steps.saturating_add(other.jump_steps);
    }
}

impl AddAssign<&KernelCounters> for KernelCounters {
    fn add_assign(&mut self, rhs: &KernelCounters) {
        self.merge(rhs);
    }
}

pub struct ParentForest {
    parent: Vec<AtomicU32>,
}

impl ParentForest {
    /// Every vertex starts as its own root.
    pub fn new(n: usize) -> Self {
        assert!(
            n <= Vertex::MAX as usize,
            "{n} vertices exceed 32-bit indices"
        );
        ParentForest {
            parent: (0..n as Vertex).map(AtomicU32::new).collect(),
        }
    }

    /// Builds a forest from explicit parent links, rejecting any link that
    /// points above its vertex.
    pub fn from_parents(parents: &[Vertex]) -> Result<Self, ForestError> {
        let n = parents.len();
        for (vertex, &parent) in parents.iter().enumerate() {
            if parent as usize >= n {
                return Err(ForestError::ParentOutOfRange { vertex, parent, n });
            }
            if parent as usize > vertex {
                return Err(ForestError::ParentAboveVertex { vertex, parent });
            }
        }
        Ok(ParentForest {
            parent: parents.iter().map(|&p| AtomicU32::new(p)).collect(),
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    #[inline]
    pub fn parent(&self, v: Vertex) -> Vertex {
        self.parent[v as usize].load(Ordering::Relaxed)
    }

    #[inline]
    fn set_parent(&self, v: Vertex, p: Vertex) {
        self.parent[v as usize].store(p, Ordering::Relaxed)
    }

    /// Copy of the current parent links. Only a consistent picture when no
    /// kernel is running.
    pub fn snapshot(&self) -> Vec<Vertex> {
        self.parent
            .iter()
            .map(|p| p.load(Ordering::Relaxed))
            .collect()
    }

    /// Follows parent links to a root. Quiescent use only.
    pub fn find_root(&self, mut v: Vertex) -> Vertex {
        loop {
            let p = self.parent(v);
            if p == v {
                return v;
            }
            v = p;
        }
    }

    /// Non-atomic hook: `parent(max) <- min` over the parents of `u` and `v`.
    ///
    /// Concurrent calls may overwrite each other; the lost hooks are redone
    /// by the baseline driver's convergence loop. Returns whether a write to a
    /// different tree happened, which is the driver's change signal.
    #[inline]
    pub fn hook(&self, u: Vertex, v: Vertex) -> bool {
        let pu = self.parent(u);
        let pv = self.parent(v);
        if pu == pv {
            return false;
        }
        let (high, low) = if pu > pv { (pu, pv) } else { (pv, pu) };
        self.set_parent(high, low);
        true
    }

    /// Single-level shortcut `parent(v) <- parent(parent(v))`. Returns whether
    /// the slot changed.
    #[inline]
    pub fn jump(&self, v: Vertex) -> bool {
        let p = self.parent(v);
        let grandparent = self.parent(p);
        if grandparent == p {
            return false;
        }
        self.set_parent(v, grandparent);
        true
    }

    /// Hooks the trees of `u` and `v` without overwriting concurrent hooks.
    ///
    /// Each iteration reads both parents, takes `high = max`, `low = min`, and
    /// tries to swap `low` into slot `high` if `high` is still a root. On
    /// failure the walk continues from the value observed in slot `high`
    /// paired with `low`. Exits once both sides report the same parent.
    #[inline]
    pub fn atomic_hook(&self, mut u: Vertex, mut v: Vertex, counters: &mut KernelCounters) {
        loop {
            let pu = self.parent(u);
            let pv = self.parent(v);
            if pu == pv {
                return;
            }
            counters.hook_traversal_steps += 1;
            let (high, low) = if pu > pv { (pu, pv) } else { (pv, pu) };
            match self.parent[high as usize].compare_exchange(
                high,
                low,
                Ordering::AcqRel,
                Ordering::Acquire,
            ) {
                Ok(_) => return,
                Err(observed) => {
                    counters.cas_failures += 1;
                    u = observed;
                    v = low;
                }
            }
        }
    }

    /// Full compression of `v`'s path: repeats the shortcut until the parent
    /// is a root, writing every intermediate value.
    #[inline]
    pub fn multi_jump(&self, v: Vertex, counters: &mut KernelCounters) {
        loop {
            let p = self.parent(v);
            let grandparent = self.parent(p);
            if grandparent == p {
                return;
            }
            self.set_parent(v, grandparent);
            counters.jump_steps += 1;
        }
    }

    /// True when every vertex points at a root. Quiescent use only.
    pub fn is_star(&self) -> bool {
        self.first_non_star().is_none()
    }

    pub(crate) fn first_non_star(&self) -> Option<usize> {
        (0..self.len() as Vertex)
            .find(|&v| {
                let p = self.parent(v);
                self.parent(p) != p
            })
            .map(|v| v as usize)
    }

    /// Checks `parent(v) <= v` for every slot. Safe to call while kernels run;
    /// each slot is read once.
    pub fn check_bound(&self) -> Result<(), ForestError> {
        for (vertex, slot) in self.parent.iter().enumerate() {
            let parent = slot.load(Ordering::Relaxed);
            if parent as usize > vertex {
                return Err(ForestError::ParentAboveVertex { vertex, parent });
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParentForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.snapshot()).finish()
    }
}

/// Space-separated parent links on one line, for fixtures and debugging.
impl fmt::Display for ParentForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.snapshot().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
