use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::FieldPrime;
use super::tensor::{checked_size, DenseTensor, MAX_ENTRIES};
use crate::error::{Error, Result};
use crate::model::TnsModel;
use crate::tree::LeafSet;

/// Cap on the entries of any intermediate tensor during contraction (`2^26`).
pub const MAX_INTERMEDIATE_ENTRIES: usize = 1 << 26;

/// A contracted subtree: axis 0 is the bond to the parent, then one axis per leaf below.
struct Partial {
    bond: usize,
    leaves: Vec<usize>,
    /// Product of the leaf dimensions.
    width: usize,
    data: Vec<u64>,
}

/// Bond used for an edge: `f(e)` capped by the dimension product on either side,
/// which leaves the set of representable tensors unchanged.
fn bond_sizes(model: &TnsModel) -> Result<Vec<usize>> {
    let tree = model.tree();
    let side = |set: &LeafSet| {
        set.iter()
            .map(|l| model.dim(l) as u128)
            .fold(1u128, |acc, d| acc.saturating_mul(d))
    };
    (0..tree.edge_count())
        .map(|i| {
            let id = tree.edge_id(i);
            let left = tree.leaves_left_of(id)?;
            let right = left.complement(tree.n());
            let f = model.f().get(id).expect("function covers the tree") as u128;
            let m = f.min(side(&left)).min(side(&right));
            usize::try_from(m).map_err(|_| Error::SizeCap {
                what: "bond",
                entries: m,
                cap: usize::MAX as u128,
            })
        })
        .collect()
}

fn random_block(rng: &mut ChaCha8Rng, p: FieldPrime, shape: &[usize]) -> Result<Vec<u64>> {
    let len = checked_size(shape, "local tensor", MAX_INTERMEDIATE_ENTRIES)?;
    Ok((0..len).map(|_| p.sample(rng)).collect())
}

/// `out[p][x1][x2] = sum_{a,b} core[p][a][b] * left[a][x1] * right[b][x2]`.
fn contract_node(
    p: FieldPrime,
    core: &[u64],
    bond: usize,
    left: Partial,
    right: Partial,
) -> Result<Partial> {
    let (k1, w1) = (left.bond, left.width);
    let (k2, w2) = (right.bond, right.width);
    checked_size(
        &[bond, k2, w1],
        "intermediate tensor",
        MAX_INTERMEDIATE_ENTRIES,
    )?;
    checked_size(
        &[bond, w1, w2],
        "intermediate tensor",
        MAX_INTERMEDIATE_ENTRIES,
    )?;
    // half[p][b][x1] = sum_a core[p][a][b] * left[a][x1]
    let mut half = vec![0u64; bond * k2 * w1];
    for pi in 0..bond {
        for a in 0..k1 {
            let lrow = &left.data[a * w1..(a + 1) * w1];
            for b in 0..k2 {
                let g = core[(pi * k1 + a) * k2 + b];
                if g == 0 {
                    continue;
                }
                let dst = &mut half[(pi * k2 + b) * w1..(pi * k2 + b + 1) * w1];
                for (d, &l) in dst.iter_mut().zip(lrow) {
                    *d = p.add(*d, p.mul(g, l));
                }
            }
        }
    }
    let mut out = vec![0u64; bond * w1 * w2];
    for pi in 0..bond {
        for b in 0..k2 {
            let rrow = &right.data[b * w2..(b + 1) * w2];
            for x1 in 0..w1 {
                let h = half[(pi * k2 + b) * w1 + x1];
                if h == 0 {
                    continue;
                }
                let dst = &mut out[(pi * w1 + x1) * w2..(pi * w1 + x1 + 1) * w2];
                for (d, &r) in dst.iter_mut().zip(rrow) {
                    *d = p.add(*d, p.mul(h, r));
                }
            }
        }
    }
    let mut leaves = left.leaves;
    leaves.extend(right.leaves);
    Ok(Partial {
        bond,
        leaves,
        width: w1 * w2,
        data: out,
    })
}

/// Moves axes listed by leaf label in `labels` into label order.
fn to_label_order(shape_by_label: &[usize], labels: &[usize], data: Vec<u64>) -> Vec<u64> {
    let n = labels.len();
    if labels.iter().enumerate().all(|(i, &l)| l == i + 1) {
        return data;
    }
    // stride in `data` of the axis holding each label
    let mut stride = vec![0usize; n + 1];
    let mut s = 1;
    for &l in labels.iter().rev() {
        stride[l] = s;
        s *= shape_by_label[l - 1];
    }
    let mut out = Vec::with_capacity(data.len());
    let mut index = vec![0usize; n];
    let mut src = 0usize;
    for _ in 0..data.len() {
        out.push(data[src]);
        for axis in (0..n).rev() {
            index[axis] += 1;
            src += stride[axis + 1];
            if index[axis] < shape_by_label[axis] {
                break;
            }
            src -= stride[axis + 1] * shape_by_label[axis];
            index[axis] = 0;
        }
    }
    out
}

/// Draws a tensor from the model by filling every local tensor with uniform
/// residues from `ChaCha8Rng::seed_from_u64(seed)` and contracting.
///
/// Local tensors are filled in pre-order from leaf 1, children by smallest
/// leaf label. A leaf holds a `dim x bond` matrix and an internal vertex a
/// `parent x child x child` core, so a given seed always yields the same tensor.
pub fn sample_tns_tensor(model: &TnsModel, seed: u64, p: FieldPrime) -> Result<DenseTensor> {
    let tree = model.tree();
    let n = tree.n();
    let shape: Vec<usize> = model
        .dims()
        .iter()
        .map(|&d| usize::try_from(d).unwrap_or(usize::MAX))
        .collect();
    checked_size(&shape, "tensor", MAX_ENTRIES)?;
    let bonds = bond_sizes(model)?;
    let rooted = tree.rooted();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut local: Vec<Vec<u64>> = vec![Vec::new(); tree.vertex_count()];
    for &v in &rooted.order {
        let block = match (tree.vertex_label(v), rooted.parent[v]) {
            (Some(l), None) => {
                let (_, e) = rooted.children[v][0];
                vec![shape[l - 1], bonds[e]]
            }
            (Some(l), Some((_, e))) => vec![bonds[e], shape[l - 1]],
            (None, Some((_, e))) => {
                let ch = &rooted.children[v];
                vec![bonds[e], bonds[ch[0].1], bonds[ch[1].1]]
            }
            (None, None) => unreachable!("the root is a leaf"),
        };
        local[v] = random_block(&mut rng, p, &block)?;
    }

    let mut partial: Vec<Option<Partial>> = (0..tree.vertex_count()).map(|_| None).collect();
    for &v in rooted.order.iter().rev() {
        if v == rooted.root {
            break;
        }
        let (_, e) = rooted.parent[v].expect("non-root vertex");
        let data = std::mem::take(&mut local[v]);
        let piece = match tree.vertex_label(v) {
            Some(l) => Partial {
                bond: bonds[e],
                leaves: vec![l],
                width: shape[l - 1],
                data,
            },
            None => {
                let ch = &rooted.children[v];
                let left = partial[ch[0].0].take().expect("child contracted");
                let right = partial[ch[1].0].take().expect("child contracted");
                contract_node(p, &data, bonds[e], left, right)?
            }
        };
        partial[v] = Some(piece);
    }

    let root = rooted.root;
    let (child, _) = rooted.children[root][0];
    let below = partial[child].take().expect("child contracted");
    let d1 = shape[0];
    let m = below.bond;
    let head = &local[root];
    let mut data = vec![0u64; d1 * below.width];
    for x in 0..d1 {
        let dst = &mut data[x * below.width..(x + 1) * below.width];
        for a in 0..m {
            let g = head[x * m + a];
            if g == 0 {
                continue;
            }
            let row = &below.data[a * below.width..(a + 1) * below.width];
            for (d, &r) in dst.iter_mut().zip(row) {
                *d = p.add(*d, p.mul(g, r));
            }
        }
    }
    let mut labels = vec![1];
    labels.extend(below.leaves);
    debug_assert_eq!(labels.len(), n);
    let data = to_label_order(&shape, &labels, data);
    DenseTensor::from_entries(shape, data, p)
}

/// Largest `a`-flattening rank over `trials` sampled tensors.
///
/// Trial `i` uses seed `seed + i * 0x9E3779B97F4A7C15` (wrapping). A generic
/// rank is attained with probability close to 1 for a large prime, so this is
/// a lower bound that is almost always sharp.
pub fn estimate_generic_rank(
    model: &TnsModel,
    a: &LeafSet,
    trials: usize,
    seed: u64,
    p: FieldPrime,
) -> Result<usize> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    model.tree().check_leaf_set(a)?;
    let mut best = 0;
    for i in 0..trials as u64 {
        let t = sample_tns_tensor(
            model,
            seed.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            p,
        )?;
        best = best.max(t.flattening_rank(a)?);
    }
    Ok(best)
}

/// Whether every edge flattening of `t` has rank at most `f(e)`.
pub fn check_membership(t: &DenseTensor, model: &TnsModel) -> Result<bool> {
    let tree = model.tree();
    let dims_match = t.order() == tree.n()
        && t.shape()
            .iter()
            .zip(model.dims())
            .all(|(&s, &d)| s as u64 == d);
    if !dims_match {
        return Err(Error::ShapeMismatch(format!(
            "tensor shape {:?} does not match leaf dimensions {:?}",
            t.shape(),
            model.dims()
        )));
    }
    for (e, bound) in model.f().iter() {
        let side = tree.leaves_left_of(e)?;
        if t.flattening_rank(&side)? as u64 > bound {
            return Ok(false);
        }
    }
    Ok(true)
}
