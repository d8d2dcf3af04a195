use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU32, Ordering};

use super::AlgebraError;

static NEXT_REGISTRY: AtomicU32 = AtomicU32::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegistryId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    Bosonic,
    Fermionic,
}

/// Opaque generator tag: a base name plus optional integer indices,
/// e.g. the entry `(2,1)` of matrix `X1` is `X1:2,1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenLabel {
    pub name: String,
    pub indices: Vec<u32>,
}

impl GenLabel {
    pub fn new(name: impl Into<String>, indices: &[u32]) -> Self {
        GenLabel { name: name.into(), indices: indices.to_vec() }
    }
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for (k, i) in self.indices.iter().enumerate() {
            f.write_str(if k == 0 { ":" } else { "," })?;
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GenKind,
    pub label: GenLabel,
    pub index: u32,
}

/// Allocates generators with dense per-kind ids.
///
/// Ids are contiguous per kind and never change once allocated; the pair
/// `(kind, label)` determines the id uniquely.
#[derive(Debug)]
pub struct Registry {
    id: RegistryId,
    bosonic: Vec<GenLabel>,
    fermionic: Vec<GenLabel>,
    lookup: BTreeMap<(GenKind, GenLabel), u32>,
    groups: BTreeSet<String>,
    frozen: bool,
}

impl Default for Registry {
    fn default() -> Self {
        Self::new()
    }
}

impl Registry {
    pub fn new() -> Self {
        Registry {
            id: RegistryId(NEXT_REGISTRY.fetch_add(1, Ordering::Relaxed)),
            bosonic: Vec::new(),
            fermionic: Vec::new(),
            lookup: BTreeMap::new(),
            groups: BTreeSet::new(),
            frozen: false,
        }
    }

    pub fn id(&self) -> RegistryId {
        self.id
    }

    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn count(&self, kind: GenKind) -> usize {
        match kind {
            GenKind::Bosonic => self.bosonic.len(),
            GenKind::Fermionic => self.fermionic.len(),
        }
    }

    pub fn allocate(&mut self, kind: GenKind, label: GenLabel) -> Result<Generator, AlgebraError> {
        if self.frozen {
            return Err(AlgebraError::RegistryFrozen);
        }
        if self.lookup.contains_key(&(kind, label.clone())) {
            return Err(AlgebraError::LabelReused(label));
        }
        let list = match kind {
            GenKind::Bosonic => &mut self.bosonic,
            GenKind::Fermionic => &mut self.fermionic,
        };
        let index = list.len() as u32;
        list.push(label.clone());
        self.lookup.insert((kind, label.clone()), index);
        Ok(Generator { kind, label, index })
    }

    /// Reserves a group name (e.g. a matrix label) so it can only be used once.
    pub fn claim_group(&mut self, name: &str) -> Result<(), AlgebraError> {
        if self.frozen {
            return Err(AlgebraError::RegistryFrozen);
        }
        if !self.groups.insert(String::from(name)) {
            return Err(AlgebraError::LabelReused(GenLabel::new(name, &[])));
        }
        Ok(())
    }

    pub fn find(&self, kind: GenKind, label: &GenLabel) -> Option<Generator> {
        self.lookup
            .get(&(kind, label.clone()))
            .map(|&index| Generator { kind, label: label.clone(), index })
    }

    pub fn label(&self, kind: GenKind, index: u32) -> Option<&GenLabel> {
        match kind {
            GenKind::Bosonic => self.bosonic.get(index as usize),
            GenKind::Fermionic => self.fermionic.get(index as usize),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_ids_per_kind() {
        let mut r = Registry::new();
        let a = r.allocate(GenKind::Bosonic, GenLabel::new("a", &[])).unwrap();
        let b = r.allocate(GenKind::Fermionic, GenLabel::new("b", &[])).unwrap();
        let c = r.allocate(GenKind::Bosonic, GenLabel::new("c", &[1, 2])).unwrap();
        assert_eq!((a.index, b.index, c.index), (0, 0, 1));
        assert_eq!(r.find(GenKind::Bosonic, &GenLabel::new("c", &[1, 2])).unwrap().index, 1);
        assert_eq!(r.label(GenKind::Fermionic, 0).unwrap().name, "b");
    }

    #[test]
    fn reuse_and_freeze_rejected() {
        let mut r = Registry::new();
        r.allocate(GenKind::Bosonic, GenLabel::new("a", &[])).unwrap();
        assert!(matches!(
            r.allocate(GenKind::Bosonic, GenLabel::new("a", &[])),
            Err(AlgebraError::LabelReused(_))
        ));
        // same label, other kind, is a different generator
        assert!(r.allocate(GenKind::Fermionic, GenLabel::new("a", &[])).is_ok());
        r.freeze();
        assert_eq!(
            r.allocate(GenKind::Bosonic, GenLabel::new("z", &[])),
            Err(AlgebraError::RegistryFrozen)
        );
    }

    #[test]
    fn label_text() {
        assert_eq!(alloc::format!("{}", GenLabel::new("X1", &[2, 3])), "X1:2,3");
        assert_eq!(alloc::format!("{}", GenLabel::new("t", &[])), "t");
    }
}
