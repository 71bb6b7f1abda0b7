use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::monomial::{MonomialOrder, MAX_VARS};
use super::PolyError;

/// What a block of variables stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockRole {
    Primal,
    Dual,
    Data,
    Auxiliary,
    Generic,
}

impl BlockRole {
    pub fn name(&self) -> &'static str {
        match self {
            BlockRole::Primal => "primal",
            BlockRole::Dual => "dual",
            BlockRole::Data => "data",
            BlockRole::Auxiliary => "auxiliary",
            BlockRole::Generic => "generic",
        }
    }
}

/// A run of consecutive variables sharing a role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub role: BlockRole,
    pub start: usize,
    pub len: usize,
}

impl Block {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

/// Polynomial ring over a field: named variables grouped in blocks, plus the
/// active monomial order all polynomials of the ring are sorted by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    vars: Vec<String>,
    blocks: Vec<Block>,
    order: MonomialOrder,
    field: F,
}

pub type RingRef<F> = Arc<PolyRing<F>>;

impl<F: Field> PolyRing<F> {
    /// A ring with a single generic block.
    pub fn new<S: AsRef<str>>(
        field: F,
        vars: &[S],
        order: MonomialOrder,
    ) -> Result<RingRef<F>, PolyError> {
        let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        Self::with_blocks(field, vec![(BlockRole::Generic, names)], order)
    }

    pub fn with_blocks(
        field: F,
        blocks: Vec<(BlockRole, Vec<String>)>,
        order: MonomialOrder,
    ) -> Result<RingRef<F>, PolyError> {
        let mut vars = Vec::new();
        let mut out = Vec::new();
        for (i, (role, names)) in blocks.into_iter().enumerate() {
            if role == BlockRole::Auxiliary && i != 0 {
                return Err(PolyError::InvalidRing(
                    "auxiliary block must come first".into(),
                ));
            }
            if names.is_empty() {
                continue;
            }
            out.push(Block {
                role,
                start: vars.len(),
                len: names.len(),
            });
            vars.extend(names);
        }
        if vars.len() > MAX_VARS {
            return Err(PolyError::InvalidRing(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                vars.len()
            )));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if v.is_empty() || !seen.insert(v.as_str()) {
                return Err(PolyError::InvalidRing(format!("bad or duplicate variable '{v}'")));
            }
        }
        Ok(Arc::new(PolyRing {
            vars,
            blocks: out,
            order,
            field,
        }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn require_var(&self, name: &str) -> Result<usize, PolyError> {
        self.var_index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn block(&self, role: BlockRole) -> Option<Block> {
        self.blocks.iter().copied().find(|b| b.role == role)
    }

    pub fn role_of(&self, var: usize) -> BlockRole {
        self.blocks
            .iter()
            .find(|b| b.range().contains(&var))
            .map_or(BlockRole::Generic, |b| b.role)
    }

    /// Same variables, different active order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef<F> {
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            blocks: self.blocks.clone(),
            order,
            field: self.field.clone(),
        })
    }

    /// Variables grouped per block, in sequence.
    pub fn block_names(&self) -> Vec<(BlockRole, Vec<String>)> {
        self.blocks
            .iter()
            .map(|b| (b.role, self.vars[b.range()].to_vec()))
            .collect()
    }

    /// Fresh variable name not used in this ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut k = 0usize;
        loop {
            let cand = if k == 0 {
                format!("_{stem}")
            } else {
                format!("_{stem}{k}")
            };
            if self.var_index(&cand).is_none() {
                return cand;
            }
            k += 1;
        }
    }

    /// Ring with one new auxiliary variable in front (index 0) and the
    /// elimination order for it.
    pub fn with_leading_aux(&self, stem: &str) -> Result<RingRef<F>, PolyError> {
        let name = self.fresh_name(stem);
        let mut blocks = self.block_names();
        match blocks.first_mut() {
            Some((BlockRole::Auxiliary, names)) => names.insert(0, name),
            _ => blocks.insert(0, (BlockRole::Auxiliary, vec![name])),
        }
        let inner = match self.order {
            MonomialOrder::Lex => super::monomial::InnerOrder::Lex,
            _ => super::monomial::InnerOrder::GrevLex,
        };
        Self::with_blocks(
            self.field.clone(),
            blocks,
            MonomialOrder::BlockElim { k: 1, inner },
        )
    }

    /// Subring keeping only the listed variables (in their current
    /// sequence); returns the ring and the index map from this ring.
    pub fn subring(
        &self,
        keep: &[usize],
        order: MonomialOrder,
    ) -> Result<(RingRef<F>, Vec<Option<usize>>), PolyError> {
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        let mut map = vec![None; self.nvars()];
        let mut blocks: Vec<(BlockRole, Vec<String>)> = Vec::new();
        for (new_idx, &old) in keep_sorted.iter().enumerate() {
            map[old] = Some(new_idx);
            let role = self.role_of(old);
            match blocks.last_mut() {
                Some((r, names)) if *r == role => names.push(self.vars[old].clone()),
                _ => blocks.push((role, vec![self.vars[old].clone()])),
            }
        }
        // an auxiliary block may only lead
        for (i, (role, _)) in blocks.iter_mut().enumerate() {
            if *role == BlockRole::Auxiliary && i > 0 {
                *role = BlockRole::Generic;
            }
        }
        let ring = Self::with_blocks(self.field.clone(), blocks, order)?;
        Ok((ring, map))
    }

    /// Same variables rearranged so that new position `i` holds old variable
    /// `sequence[i]`; returns the ring and the index map from this ring.
    pub fn permuted(
        &self,
        sequence: &[usize],
        order: MonomialOrder,
    ) -> Result<(RingRef<F>, Vec<Option<usize>>), PolyError> {
        assert_eq!(sequence.len(), self.nvars());
        let mut map = vec![None; self.nvars()];
        let mut blocks: Vec<(BlockRole, Vec<String>)> = Vec::new();
        for (new_idx, &old) in sequence.iter().enumerate() {
            map[old] = Some(new_idx);
            let role = self.role_of(old);
            match blocks.last_mut() {
                Some((r, names)) if *r == role => names.push(self.vars[old].clone()),
                _ => blocks.push((role, vec![self.vars[old].clone()])),
            }
        }
        for (i, (role, _)) in blocks.iter_mut().enumerate() {
            if *role == BlockRole::Auxiliary && i > 0 {
                *role = BlockRole::Generic;
            }
        }
        let ring = Self::with_blocks(self.field.clone(), blocks, order)?;
        Ok((ring, map))
    }

    /// Structural equality with an `Arc::ptr_eq` fast path.
    pub fn same(a: &RingRef<F>, b: &RingRef<F>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::PrimeField;

    #[test]
    fn rejects_duplicates_and_misplaced_aux() {
        let f = PrimeField::default();
        assert!(PolyRing::new(f, &["x", "x"], MonomialOrder::GrevLex).is_err());
        let bad = PolyRing::with_blocks(
            f,
            vec![
                (BlockRole::Generic, vec!["x".into()]),
                (BlockRole::Auxiliary, vec!["t".into()]),
            ],
            MonomialOrder::GrevLex,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn leading_aux_is_first_block() {
        let r = PolyRing::new(PrimeField::default(), &["x", "y"], MonomialOrder::GrevLex).unwrap();
        let t = r.with_leading_aux("t").unwrap();
        assert_eq!(t.vars(), &["_t", "x", "y"]);
        assert_eq!(t.blocks()[0].role, BlockRole::Auxiliary);
        let t2 = t.with_leading_aux("t").unwrap();
        assert_eq!(t2.vars(), &["_t1", "_t", "x", "y"]);
        assert_eq!(t2.blocks()[0].len, 2);
    }

    #[test]
    fn subring_keeps_blocks() {
        let r = PolyRing::with_blocks(
            PrimeField::default(),
            vec![
                (BlockRole::Primal, vec!["p0".into(), "ps".into()]),
                (BlockRole::Dual, vec!["b0".into(), "bs".into()]),
            ],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let (sub, map) = r.subring(&[2, 3], MonomialOrder::GrevLex).unwrap();
        assert_eq!(sub.vars(), &["b0", "bs"]);
        assert_eq!(sub.blocks()[0].role, BlockRole::Dual);
        assert_eq!(map, vec![None, None, Some(0), Some(1)]);
    }
}
