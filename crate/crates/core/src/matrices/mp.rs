use super::{FieldElement, FieldMatrix, InvolutiveField};
use crate::{Error, Result};

/// `AXA = A`, `XAX = X`, `(AX)* = AX`, `(XA)* = XA`.
pub fn penrose_holds(a: &FieldMatrix, x: &FieldMatrix) -> bool {
    if a.rows() != x.cols() || a.cols() != x.rows() {
        return false;
    }
    let ax = a.product(x);
    let xa = x.product(a);
    ax.product(a) == *a && xa.product(x) == *x && ax.conj_transpose() == ax && xa.conj_transpose() == xa
}

/// Rank factorization `A = B·C`: `B` is the pivot columns of `A` (leftmost
/// first), `C` the nonzero rows of its reduced echelon form.
pub fn rank_factorization(a: &FieldMatrix) -> (FieldMatrix, FieldMatrix) {
    let echelon = a.echelon();
    let b = a.select_columns(&echelon.pivots);
    let c = echelon.reduced.top_rows(echelon.pivots.len());
    (b, c)
}

/// The Moore-Penrose inverse when it exists.
///
/// The candidate `C*(CC*)⁻¹(B*B)⁻¹B*` is returned only after all four
/// Penrose equations have been checked.
pub fn mp_inverse(a: &FieldMatrix) -> Option<FieldMatrix> {
    if a.is_zero() {
        return Some(FieldMatrix::zero(a.field(), a.cols(), a.rows()));
    }
    let (b, c) = rank_factorization(a);
    let (bs, cs) = (b.conj_transpose(), c.conj_transpose());
    let cc_inv = c.product(&cs).inverse()?;
    let bb_inv = bs.product(&b).inverse()?;
    let candidate = cs.product(&cc_inv).product(&bb_inv).product(&bs);
    penrose_holds(a, &candidate).then_some(candidate)
}

/// Data of the rank-1 formula `A = b*c`, `A† = c*(cc*)⁻¹(bb*)⁻¹b`.
#[derive(Clone, Debug)]
pub struct RankOneInverse {
    /// Row vector with `A = b*c`.
    pub b: Vec<FieldElement>,
    /// Row vector with `A = b*c`; the first nonzero row of `A`.
    pub c: Vec<FieldElement>,
    pub bb: FieldElement,
    pub cc: FieldElement,
    /// `(cc*·bb*)⁻¹`, so that `A† = scalar·A*`.
    pub scalar: FieldElement,
    pub inverse: FieldMatrix,
}

fn norm(field: &InvolutiveField, v: &[FieldElement]) -> FieldElement {
    v.iter().fold(0, |acc, &x| field.add(acc, field.mul(x, field.conj(x))))
}

/// Evaluates the rank-1 formula. Fails with `InvalidArgument` when the rank
/// is not 1 and with `PartialOperation` when `bb*` or `cc*` vanishes.
pub fn mp_rank1(a: &FieldMatrix) -> Result<RankOneInverse> {
    let rank = a.rank();
    if rank != 1 {
        return Err(Error::InvalidArgument(format!("matrix {a} has rank {rank}, not 1")));
    }
    let f = a.field();
    let first = (0..a.rows())
        .find(|&i| a.row(i).iter().any(|&x| x != 0))
        .expect("rank 1");
    let c = a.row(first).to_vec();
    let pivot = c.iter().position(|&x| x != 0).expect("nonzero row");
    let pivot_inv = f.inv(c[pivot]).expect("nonzero");
    // row i = λ_i c and conj(b_i) = λ_i
    let b: Vec<FieldElement> = (0..a.rows())
        .map(|i| f.conj(f.mul(a.get(i, pivot), pivot_inv)))
        .collect();
    let (bb, cc) = (norm(f, &b), norm(f, &c));
    if bb == 0 || cc == 0 {
        return Err(Error::PartialOperation(format!(
            "rank-1 formula inapplicable to {a}: bb* = {bb}, cc* = {cc}"
        )));
    }
    let scalar = f.inv(f.mul(cc, bb)).expect("nonzero");
    let (cc_inv, bb_inv) = (f.inv(cc).expect("nonzero"), f.inv(bb).expect("nonzero"));
    let c_star = FieldMatrix::new(f, c.len(), 1, c.iter().map(|&x| f.conj(x)).collect()).expect("column");
    let b_row = FieldMatrix::new(f, 1, b.len(), b.clone()).expect("row");
    let inverse = c_star.product(&b_row).scale(f.mul(cc_inv, bb_inv));
    Ok(RankOneInverse {
        b,
        c,
        bb,
        cc,
        scalar,
        inverse,
    })
}

/// Every `x ∈ Kⁿ` with `Σ xᵢx̄ᵢ = 0`, in lexicographic order.
pub fn isotropic_vectors(field: &InvolutiveField, n: usize) -> Vec<Vec<FieldElement>> {
    let q = field.size() as u64;
    (0..q.pow(n as u32))
        .map(|mut code| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = (code % q) as FieldElement;
                code /= q;
            }
            v
        })
        .filter(|v| norm(field, v) == 0)
        .collect()
}

/// The least nonzero solution of `Σ xᵢx̄ᵢ = 0`, if any.
pub fn nontrivial_isotropic(field: &InvolutiveField, n: usize) -> Option<Vec<FieldElement>> {
    isotropic_vectors(field, n)
        .into_iter()
        .find(|v| v.iter().any(|&x| x != 0))
}
