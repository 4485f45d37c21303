use crate::error::{Error, Result};
use crate::zmod::{FgModule, IntMatrix, ModuleMap};

/// Canonical direct sum of `parts` and, for each part, the canonical index
/// of each of its generators inside the sum.
///
/// Only sums that do not merge cyclic factors are supported; this covers
/// free modules and `l`-primary modules for a single `l`.
pub fn sum_with_positions(parts: &[FgModule]) -> Result<(FgModule, Vec<Vec<usize>>)> {
    let sum = parts.iter().fold(FgModule::zero(), |a, b| a.direct_sum(b));
    let total: usize = parts.iter().map(FgModule::num_generators).sum();
    if sum.num_generators() != total {
        return Err(Error::DimensionMismatch(format!("direct sum {sum} merges cyclic factors")));
    }
    let free: usize = parts.iter().map(FgModule::free_rank).sum();
    let mut torsion: Vec<(u64, usize, usize)> = Vec::new();
    let mut positions: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    let mut next_free = 0;
    for (k, m) in parts.iter().enumerate() {
        positions.push((0..m.free_rank()).map(|i| next_free + i).collect());
        next_free += m.free_rank();
        torsion.extend(m.torsion().iter().enumerate().map(|(i, &d)| (d, k, i)));
    }
    torsion.sort();
    for (slot, &(_, k, _)) in torsion.iter().enumerate() {
        positions[k].push(free + slot);
    }
    Ok((sum, positions))
}

/// The map `(+)_j S_j -> (+)_i T_i` with block `(i, j)` given by `block`.
pub fn block_map(
    sources: &[FgModule],
    targets: &[FgModule],
    block: impl Fn(usize, usize) -> Option<IntMatrix>,
) -> Result<ModuleMap> {
    let (s, sp) = sum_with_positions(sources)?;
    let (t, tp) = sum_with_positions(targets)?;
    let mut m = IntMatrix::zeros(t.num_generators(), s.num_generators());
    for (i, rows) in tp.iter().enumerate() {
        for (j, cols) in sp.iter().enumerate() {
            let Some(b) = block(i, j) else { continue };
            for (r, &gr) in rows.iter().enumerate() {
                for (c, &gc) in cols.iter().enumerate() {
                    m[(gr, gc)] = b[(r, c)].clone();
                }
            }
        }
    }
    ModuleMap::new(s, t, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::mat;

    #[test]
    fn torsion_is_interleaved() {
        let a: FgModule = "Z + Z/4".parse().unwrap();
        let b: FgModule = "Z/2".parse().unwrap();
        let (s, pos) = sum_with_positions(&[a, b]).unwrap();
        assert_eq!(s.to_string(), "Z + Z/2 + Z/4");
        assert_eq!(pos, vec![vec![0, 2], vec![1]]);
        assert!(sum_with_positions(&[FgModule::cyclic(2), FgModule::cyclic(3)]).is_err());
    }

    #[test]
    fn identity_blocks() {
        let a = FgModule::free(1);
        let f = block_map(&[a.clone(), a.clone()], std::slice::from_ref(&a), |_, _| Some(mat(&[[1]]))).unwrap();
        assert_eq!(f.matrix(), &mat(&[[1, 1]]));
    }
}
