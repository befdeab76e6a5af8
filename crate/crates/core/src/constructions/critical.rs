use super::{GroupTable, ReesSemigroup, ReesSpec};
use crate::semigroup::{
    direct_product, verify_morphism, ElementId, FiniteUnarySemigroup, Morphism, MorphismMode, UnarySemigroup,
};
use crate::terms::{evaluate, Substitution, UnaryTerm};
use crate::{Error, Result};

/// Default cap on `|T_k|`.
pub const CRITICAL_SIZE_CAP: u128 = 10_000_000;

/// Group, witnesses `g₁..g_m` for an identity `u = v` failing in the group,
/// and the generator bound `k`.
#[derive(Clone, Debug)]
pub struct CriticalSpec {
    group: GroupTable,
    witnesses: Vec<ElementId>,
    k: usize,
    identity: (UnaryTerm, UnaryTerm),
}

impl CriticalSpec {
    /// Uses `x1 x2 = x2 x1`; needs two non-commuting witnesses.
    pub fn commutator(group: GroupTable, g1: ElementId, g2: ElementId, k: usize) -> Result<Self> {
        let u = UnaryTerm::parse("x1 x2", 1)?;
        let v = UnaryTerm::parse("x2 x1", 1)?;
        Self::new(group, vec![g1, g2], k, (u, v))
    }

    /// `identity` is over `x1..xm`; substituting the witnesses must separate its sides.
    pub fn new(
        group: GroupTable,
        witnesses: Vec<ElementId>,
        k: usize,
        identity: (UnaryTerm, UnaryTerm),
    ) -> Result<Self> {
        if witnesses.len() < 2 {
            return Err(Error::Construction("at least two witnesses are needed".into()));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        if let Some(&bad) = witnesses.iter().find(|&&g| g as usize >= group.size()) {
            return Err(Error::InvalidElement {
                id: bad,
                size: group.size(),
            });
        }
        let g = group.to_semigroup();
        let assignment = witnesses
            .iter()
            .enumerate()
            .map(|(i, &w)| (format!("x{}", i + 1), w))
            .collect();
        let (lhs, rhs) = (
            evaluate(&identity.0, &g, &assignment)?,
            evaluate(&identity.1, &g, &assignment)?,
        );
        if lhs == rhs {
            return Err(Error::Construction("the witnesses satisfy the identity".into()));
        }
        Ok(CriticalSpec {
            group,
            witnesses,
            k,
            identity,
        })
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn witnesses(&self) -> &[ElementId] {
        &self.witnesses
    }

    pub fn m(&self) -> usize {
        self.witnesses.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn identity(&self) -> &(UnaryTerm, UnaryTerm) {
        &self.identity
    }

    /// `n = max(4, 2k + 1)`.
    pub fn n(&self) -> usize {
        (2 * self.k + 1).max(4)
    }

    /// `|I| = mn`.
    pub fn index(&self) -> usize {
        self.m() * self.n()
    }

    /// The blockwise sandwich `P_k`: `M_n(g_b)` on the diagonal, `E_n` above
    /// it, `E_nᵀ` below it, `E_nᵀ` in the top-right and `E_n` in the
    /// bottom-left corner. Overlapping block patterns (m = 2) are superposed.
    pub fn sandwich(&self) -> Vec<Option<ElementId>> {
        let (m, n) = (self.m(), self.n());
        let size = m * n;
        let e = self.group.identity();
        let mut p = vec![None; size * size];
        let mut set = |bi: usize, bj: usize, i: usize, j: usize, value: ElementId| {
            let slot = &mut p[(bi * n + i) * size + bj * n + j];
            debug_assert!(slot.is_none() || *slot == Some(value));
            *slot = Some(value);
        };
        for b in 0..m {
            let g = self.witnesses[b];
            for i in 0..n {
                for j in 0..n {
                    if let Some(v) = m_n_entry(n, g, self.group.inv(g), e, i, j) {
                        set(b, b, i, j, v);
                    }
                }
            }
            let next = (b + 1) % m;
            if b + 1 < m {
                set(b, next, n - 1, 0, e);
                set(next, b, 0, n - 1, e);
            }
        }
        set(0, m - 1, 0, n - 1, e);
        set(m - 1, 0, n - 1, 0, e);
        p
    }

    pub fn rees_spec(&self) -> Result<ReesSpec> {
        ReesSpec::new(self.index(), self.group.clone(), self.sandwich()).map_err(|err| match err {
            Error::SandwichAsymmetric { i, j } => {
                Error::Construction(format!("assembled P_k is not symmetric at ({i}, {j})"))
            }
            other => other,
        })
    }
}

/// Entry `(i, j)` of `M_n(g)`: the tridiagonal band of `e`, with `g` at
/// `(1,2)`, `g⁻¹` at `(2,1)` and `e` in the two off corners (1-based).
fn m_n_entry(n: usize, g: ElementId, g_inv: ElementId, e: ElementId, i: usize, j: usize) -> Option<ElementId> {
    match (i, j) {
        (0, 1) => Some(g),
        (1, 0) => Some(g_inv),
        _ if i.abs_diff(j) <= 1 => Some(e),
        _ if (i, j) == (0, n - 1) || (i, j) == (n - 1, 0) => Some(e),
        _ => None,
    }
}

/// `T_k = M⁰(I, G, I; P_k)` with on-the-fly multiplication.
pub fn critical_tk(spec: &CriticalSpec) -> Result<(ReesSemigroup, ReesSpec)> {
    critical_tk_capped(spec, CRITICAL_SIZE_CAP)
}

pub fn critical_tk_capped(spec: &CriticalSpec, cap: u128) -> Result<(ReesSemigroup, ReesSpec)> {
    let size = (spec.index() as u128).pow(2) * spec.group.size() as u128 + 1;
    if size > cap {
        return Err(Error::SizeCap { size, cap });
    }
    let rees = spec.rees_spec()?;
    Ok((rees.semigroup(), rees))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessVariant {
    /// Blocks built from `h(u) = u u*`.
    Hermitian,
    /// Blocks built from `d`-th powers.
    Power(u64),
}

/// Terms `w₁..w_m` over `x1..x{mn}`. Block `j` of `w_j` is unbundled
/// (`h(x_a)⋯h(x_b)` or `x_a^d⋯x_b^d`); every other block is bundled
/// (`h(x_a⋯x_b) h(x_b)` or `(x_a⋯x_b)^d`).
pub fn sapir_witness_words(m: usize, n: usize, variant: WitnessVariant) -> Result<Vec<UnaryTerm>> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument("witness words need m >= 2 and n >= 2".into()));
    }
    if variant == WitnessVariant::Power(0) {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let x = |i: usize| UnaryTerm::var(format!("x{i}"));
    let h = |t: UnaryTerm| UnaryTerm::concat(t.clone(), t.star());
    let block = |b: usize, unbundled: bool| -> UnaryTerm {
        let letters = (b * n + 1..=(b + 1) * n).map(x);
        match (variant, unbundled) {
            (WitnessVariant::Hermitian, true) => UnaryTerm::product(letters.map(h)).expect("n >= 2"),
            (WitnessVariant::Hermitian, false) => {
                UnaryTerm::concat(h(UnaryTerm::product(letters).expect("n >= 2")), h(x((b + 1) * n)))
            }
            (WitnessVariant::Power(d), true) => UnaryTerm::product(letters.map(|t| t.pow(d))).expect("n >= 2"),
            (WitnessVariant::Power(d), false) => UnaryTerm::product(letters).expect("n >= 2").pow(d),
        }
    };
    Ok((0..m)
        .map(|j| UnaryTerm::product((0..m).map(|b| block(b, b == j))).expect("m >= 2"))
        .collect())
}

/// Both sides of `u(w₁..w_m) = v(w₁..w_m)`.
pub fn substituted_identity(spec: &CriticalSpec, variant: WitnessVariant) -> Result<(UnaryTerm, UnaryTerm)> {
    let words = sapir_witness_words(spec.m(), spec.n(), variant)?;
    let sigma = words
        .into_iter()
        .enumerate()
        .fold(Substitution::new(), |s, (i, w)| s.with(format!("x{}", i + 1), w));
    Ok((sigma.apply(&spec.identity.0)?, sigma.apply(&spec.identity.1)?))
}

/// The substitution `x_i ↦ (i, e, i)` for `i = 1..mn`.
pub fn diagonal_assignment(tk: &ReesSemigroup) -> std::collections::HashMap<String, ElementId> {
    let e = tk.spec().group().identity();
    (0..tk.spec().index())
        .map(|i| (format!("x{}", i + 1), tk.encode(i, e, i)))
        .collect()
}

/// `1 ≤ λ₁ ≤ n < λ₂ ≤ 2n < … ≤ mn` (1-based).
pub fn check_lambda(m: usize, n: usize, lambda: &[usize]) -> Result<()> {
    if lambda.len() != m {
        return Err(Error::InvalidArgument(format!(
            "{} deleted indices for {m} blocks",
            lambda.len()
        )));
    }
    for (b, &l) in lambda.iter().enumerate() {
        if l <= b * n || l > (b + 1) * n {
            return Err(Error::InvalidArgument(format!(
                "lambda_{} = {l} is outside {}..={}",
                b + 1,
                b * n + 1,
                (b + 1) * n
            )));
        }
    }
    Ok(())
}

/// Every admissible `λ` tuple, in lexicographic order.
pub fn all_lambdas(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for b in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (b * n + 1..=(b + 1) * n).map(move |l| {
                    let mut next = prefix.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
    }
    out
}

/// `T_k(λ)`: the Rees structure on `I' = I \ {λ₁..λ_m}` with the inherited sandwich.
#[derive(Clone, Debug)]
pub struct Restricted {
    pub spec: ReesSpec,
    /// Original 0-based index of each kept row.
    pub kept: Vec<usize>,
}

pub fn restrict_tk(spec: &CriticalSpec, tk: &ReesSpec, lambda: &[usize]) -> Result<Restricted> {
    check_lambda(spec.m(), spec.n(), lambda)?;
    let kept: Vec<usize> = (0..tk.index()).filter(|i| !lambda.contains(&(i + 1))).collect();
    Ok(Restricted {
        spec: tk.submatrix(&kept)?,
        kept,
    })
}

/// `Q = u_j p_jk u_k⁻¹` for per-row scalars `u`.
pub fn apply_row_column_scaling(p: &ReesSpec, scaling: &[ElementId]) -> Result<ReesSpec> {
    if scaling.len() != p.index() {
        return Err(Error::Dimension(format!(
            "{} scalars for {} rows",
            scaling.len(),
            p.index()
        )));
    }
    let g = p.group();
    let n = p.index();
    let sandwich = (0..n * n)
        .map(|x| {
            let (j, k) = (x / n, x % n);
            p.entry(j, k).map(|v| g.mul(g.mul(scaling[j], v), g.inv(scaling[k])))
        })
        .collect();
    ReesSpec::new(n, g.clone(), sandwich)
}

/// Result of the row/column normalization of a restricted sandwich.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub q: ReesSpec,
    /// `u_r` for every kept row.
    pub scaling: Vec<ElementId>,
}

impl Normalized {
    /// The isomorphism `(i,g,j) ↦ (i, u_i g u_j⁻¹, j)`, `0 ↦ 0`, as an id map.
    pub fn isomorphism_map(&self, source: &ReesSemigroup, target: &ReesSemigroup) -> Vec<ElementId> {
        let g = source.spec().group();
        (0..source.size() as ElementId)
            .map(|a| match source.decode(a) {
                None => target.zero(),
                Some((i, x, j)) => target.encode(i, g.mul(g.mul(self.scaling[i], x), g.inv(self.scaling[j])), j),
            })
            .collect()
    }
}

/// For each block `i` with `(i−1)n+2 < λ_i`, scales rows and columns
/// `(i−1)n+2 .. λ_i−1` by `g_i` on the left and `g_i⁻¹` on the right.
/// Fails unless every nonzero entry of the result is `e`.
pub fn normalize_sandwich(spec: &CriticalSpec, restricted: &Restricted, lambda: &[usize]) -> Result<Normalized> {
    check_lambda(spec.m(), spec.n(), lambda)?;
    let n = spec.n();
    let e = spec.group.identity();
    let scaling: Vec<ElementId> = restricted
        .kept
        .iter()
        .map(|&r| {
            let row = r + 1;
            let b = r / n;
            let first = b * n + 2;
            if first < lambda[b] && (first..lambda[b]).contains(&row) {
                spec.witnesses[b]
            } else {
                e
            }
        })
        .collect();
    let q = apply_row_column_scaling(&restricted.spec, &scaling)?;
    if let Some(pos) = q.sandwich().iter().position(|&x| x.is_some() && x != Some(e)) {
        let k = q.index();
        return Err(Error::Construction(format!(
            "normalized sandwich keeps a non-identity entry at ({}, {})",
            pos / k + 1,
            pos % k + 1
        )));
    }
    Ok(Normalized { q, scaling })
}

/// `G × U` with `(g, (i,j)) ↦ (i, g, j)` and `(g, 0) ↦ 0` onto `R`.
#[derive(Clone, Debug)]
pub struct ProductCover {
    pub product: FiniteUnarySemigroup,
    pub target: FiniteUnarySemigroup,
    pub morphism: Morphism,
}

/// Tabulates `G × rees(trivialized Q)` and `rees(Q)`, builds the map and verifies it.
pub fn group_times_trivialized(q: &ReesSpec) -> Result<ProductCover> {
    let g = q.group();
    let u_spec = q.trivialize();
    let u = u_spec.semigroup();
    let r = q.semigroup();
    let product = direct_product(&g.to_semigroup(), &u.to_table()?)?;
    let target = r.to_table()?;
    let us = u.size() as ElementId;
    let map: Vec<ElementId> = (0..product.size() as ElementId)
        .map(|x| {
            let (gx, ux) = (x / us, x % us);
            match u.decode(ux) {
                None => r.zero(),
                Some((i, _, j)) => r.encode(i, gx, j),
            }
        })
        .collect();
    verify_morphism(&product, &target, &map, MorphismMode::Onto)?;
    Ok(ProductCover {
        product,
        target,
        morphism: Morphism {
            mode: MorphismMode::Onto,
            map,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_spec() -> CriticalSpec {
        let g = GroupTable::symmetric3();
        let (a, b) = (g.find_label("(12)").unwrap(), g.find_label("(13)").unwrap());
        CriticalSpec::commutator(g, a, b, 1).unwrap()
    }

    #[test]
    fn commuting_witnesses_are_rejected() {
        let g = GroupTable::symmetric3();
        let a = g.find_label("(12)").unwrap();
        assert!(CriticalSpec::commutator(g, a, a, 1).is_err());
    }

    #[test]
    fn tk_size() {
        let spec = s3_spec();
        assert_eq!(spec.n(), 4);
        let (tk, p) = critical_tk(&spec).unwrap();
        assert_eq!(p.index(), 8);
        assert_eq!(tk.size(), 385);
        assert!(matches!(critical_tk_capped(&spec, 100), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn m_n_pattern() {
        let spec = s3_spec();
        let p = spec.rees_spec().unwrap();
        let g = spec.witnesses()[0];
        let e = spec.group().identity();
        assert_eq!(p.entry(0, 1), Some(g));
        assert_eq!(p.entry(1, 0), Some(spec.group().inv(g)));
        assert_eq!(p.entry(0, 3), Some(e));
        assert_eq!(p.entry(0, 2), None);
        // E_n between blocks 1 and 2 plus the corner E_n^T
        assert_eq!(p.entry(3, 4), Some(e));
        assert_eq!(p.entry(0, 7), Some(e));
    }

    #[test]
    fn witness_word_shapes() {
        let w = sapir_witness_words(2, 2, WitnessVariant::Power(3)).unwrap();
        assert_eq!(w[0].to_string(), "((x1 x1 x1) x2 x2 x2) (x3 x4) (x3 x4) x3 x4");
        assert_eq!(w[1].vars(), vec!["x1", "x2", "x3", "x4"]);
        let h = sapir_witness_words(2, 2, WitnessVariant::Hermitian).unwrap();
        assert_eq!(h[0].to_string(), "((x1 x1') x2 x2') ((x3 x4) (x3 x4)') x4 x4'");
    }

    #[test]
    fn lambda_ranges() {
        assert!(check_lambda(2, 4, &[1, 5]).is_ok());
        assert!(check_lambda(2, 4, &[5, 5]).is_err());
        assert_eq!(all_lambdas(2, 4).len(), 16);
        let spec = s3_spec();
        let (_, p) = critical_tk(&spec).unwrap();
        let r = restrict_tk(&spec, &p, &[1, 5]).unwrap();
        assert_eq!(r.spec.index(), 6);
        assert_eq!(r.spec.semigroup_size(), 217);
    }
}
