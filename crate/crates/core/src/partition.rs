use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("vertex {vertex} is out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {vertex} appears in more than one block")]
    Overlap { vertex: usize },
    #[error("vertex {vertex} is not covered by any block")]
    Uncovered { vertex: usize },
    #[error("empty block")]
    EmptyBlock,
}

/// A partition of `0..n` into nonempty blocks.
///
/// Canonical form: blocks sorted by their smallest element, each block
/// ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl VertexPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(Vec::is_empty) {
            return Err(PartitionError::EmptyBlock);
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut block_of = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            for &v in block {
                if v >= n {
                    return Err(PartitionError::OutOfRange { vertex: v, n });
                }
                if block_of[v] != usize::MAX {
                    return Err(PartitionError::Overlap { vertex: v });
                }
                block_of[v] = id;
            }
        }
        if let Some(vertex) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(PartitionError::Uncovered { vertex });
        }
        Ok(Self { blocks, block_of })
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            blocks: (0..n).map(|v| vec![v]).collect(),
            block_of: (0..n).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, id: usize) -> &[usize] {
        &self.blocks[id]
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }
}

impl fmt::Debug for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.blocks).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_block_order() {
        let p = VertexPartition::new(5, vec![vec![4, 2], vec![3, 0], vec![1]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 3], vec![1], vec![2, 4]]);
        assert_eq!(p.block_of(4), 2);
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(
            VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]),
            Err(PartitionError::Overlap { vertex: 1 })
        );
        assert_eq!(
            VertexPartition::new(3, vec![vec![0, 1]]),
            Err(PartitionError::Uncovered { vertex: 2 })
        );
        assert_eq!(
            VertexPartition::new(2, vec![vec![0, 1, 2]]),
            Err(PartitionError::OutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            VertexPartition::new(2, vec![vec![0, 1], vec![]]),
            Err(PartitionError::EmptyBlock)
        );
    }
}
