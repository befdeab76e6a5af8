use std::collections::{HashMap, VecDeque};
use std::fmt::Display;
use std::hash::Hash;
use std::sync::Arc;

use rayon::prelude::*;

use super::{mp_inverse, BoolMatrix, FieldMatrix, InvolutiveField};
use crate::semigroup::{ElementId, FiniteUnarySemigroup, UnarySemigroup};
use crate::{Error, Result};

/// Largest matrix set tabulated into a Cayley table.
pub const MATRIX_TABULATION_LIMIT: usize = 8192;

/// Largest number of matrices enumerated while filtering a family.
pub const MATRIX_ENUMERATION_LIMIT: u64 = 1 << 20;

/// A named unary operation that may be undefined at some matrices.
pub type UnaryOp<'a, M> = (&'a str, &'a (dyn Fn(&M) -> Option<M> + Sync));

/// A tabulated semigroup of matrices; element `i` is `elements()[i]`.
#[derive(Clone, Debug)]
pub struct MatrixSemigroup<M> {
    semigroup: FiniteUnarySemigroup,
    elements: Vec<M>,
    index: HashMap<M, ElementId>,
}

impl<M: Clone + Eq + Hash + Display + Send + Sync> MatrixSemigroup<M> {
    /// Tabulates a set that must be closed under `mul` and every unary;
    /// ids follow the order of `elements`.
    pub fn from_elements(
        elements: Vec<M>,
        mul: impl Fn(&M, &M) -> M + Sync,
        unaries: &[UnaryOp<'_, M>],
    ) -> Result<Self> {
        let size = elements.len();
        if size == 0 {
            return Err(Error::Construction("empty matrix set".into()));
        }
        if size > MATRIX_TABULATION_LIMIT {
            return Err(Error::SizeCap {
                size: size as u128,
                cap: MATRIX_TABULATION_LIMIT as u128,
            });
        }
        let index: HashMap<M, ElementId> = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as ElementId))
            .collect();
        if index.len() != size {
            return Err(Error::Construction("matrix list has repeated entries".into()));
        }
        let lookup = |m: M, what: &dyn Fn() -> String| {
            index
                .get(&m)
                .copied()
                .ok_or_else(|| Error::Construction(format!("{} = {m} leaves the set", what())))
        };
        let rows: Vec<Vec<ElementId>> = elements
            .par_iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| lookup(mul(a, b), &|| format!("{a}·{b}")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let stars = unaries
            .iter()
            .map(|(name, op)| {
                elements
                    .iter()
                    .map(|a| {
                        let image =
                            op(a).ok_or_else(|| Error::PartialOperation(format!("{name} is undefined at {a}")))?;
                        lookup(image, &|| format!("{name}({a})"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = elements.iter().map(|m| m.to_string()).collect();
        let semigroup = FiniteUnarySemigroup::from_trusted_tables(size, rows.concat(), stars, Some(labels))?;
        Ok(MatrixSemigroup {
            semigroup,
            elements,
            index,
        })
    }

    /// Closure of `generators` under `mul` and the unaries, in discovery order.
    pub fn generated(generators: &[M], mul: impl Fn(&M, &M) -> M + Sync, unaries: &[UnaryOp<'_, M>]) -> Result<Self> {
        let mut elements: Vec<M> = Vec::new();
        let mut seen: HashMap<M, usize> = HashMap::new();
        let mut queue: VecDeque<M> = VecDeque::new();
        let mut push = |m: M, elements: &mut Vec<M>, queue: &mut VecDeque<M>| -> Result<()> {
            if !seen.contains_key(&m) {
                if seen.len() >= MATRIX_TABULATION_LIMIT {
                    return Err(Error::SizeCap {
                        size: seen.len() as u128 + 1,
                        cap: MATRIX_TABULATION_LIMIT as u128,
                    });
                }
                seen.insert(m.clone(), elements.len());
                elements.push(m.clone());
                queue.push_back(m);
            }
            Ok(())
        };
        for g in generators {
            push(g.clone(), &mut elements, &mut queue)?;
        }
        let mut done = 0;
        while let Some(m) = queue.pop_front() {
            for (name, op) in unaries {
                let image = op(&m).ok_or_else(|| Error::PartialOperation(format!("{name} is undefined at {m}")))?;
                push(image, &mut elements, &mut queue)?;
            }
            done += 1;
            for i in 0..done {
                let other = elements[i].clone();
                push(mul(&m, &other), &mut elements, &mut queue)?;
                push(mul(&other, &m), &mut elements, &mut queue)?;
            }
        }
        Self::from_elements(elements, mul, unaries)
    }

    pub fn semigroup(&self) -> &FiniteUnarySemigroup {
        &self.semigroup
    }

    pub fn into_semigroup(self) -> FiniteUnarySemigroup {
        self.semigroup
    }

    pub fn elements(&self) -> &[M] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &M {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, m: &M) -> Option<ElementId> {
        self.index.get(m).copied()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldUnary {
    Transpose,
    /// `(a_ij^σ)ᵀ` with `σ: x ↦ x^{p^s}`.
    SigmaTranspose(u32),
    /// `A* = Āᵀ` with the field's involution.
    ConjTranspose,
    MoorePenrose,
    Symplectic,
    AntiDiag,
}

impl FieldUnary {
    pub fn name(&self) -> String {
        match self {
            FieldUnary::Transpose => "transpose".into(),
            FieldUnary::SigmaTranspose(s) => format!("sigma_transpose({s})"),
            FieldUnary::ConjTranspose => "conj_transpose".into(),
            FieldUnary::MoorePenrose => "mp".into(),
            FieldUnary::Symplectic => "symplectic".into(),
            FieldUnary::AntiDiag => "anti_diag".into(),
        }
    }

    /// Accepts the names printed by [`FieldUnary::name`].
    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text {
            "transpose" => FieldUnary::Transpose,
            "conj_transpose" | "conj" => FieldUnary::ConjTranspose,
            "mp" => FieldUnary::MoorePenrose,
            "symplectic" => FieldUnary::Symplectic,
            "anti_diag" => FieldUnary::AntiDiag,
            other => {
                let s = other
                    .strip_prefix("sigma_transpose(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::UnknownName(other.to_string()))?;
                FieldUnary::SigmaTranspose(s)
            }
        })
    }

    pub fn apply(&self, a: &FieldMatrix) -> Option<FieldMatrix> {
        match self {
            FieldUnary::Transpose => Some(a.transpose()),
            FieldUnary::SigmaTranspose(s) => Some(a.sigma_transpose(*s)),
            FieldUnary::ConjTranspose => Some(a.conj_transpose()),
            FieldUnary::MoorePenrose => mp_inverse(a),
            FieldUnary::Symplectic => a.symplectic().ok(),
            FieldUnary::AntiDiag => Some(a.anti_diag()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldFamily {
    /// `M_n(K)`.
    Full,
    /// `GL_n(K)`.
    General,
    /// `{A : Aᵀ = A⁻¹}`.
    Orthogonal,
    /// `{A ∈ GL_n(K) : A† = A*}`.
    StarOrthogonal,
    /// `L¹_n(K)`: matrices of rank at most 1 and the identity.
    RankOneWithIdentity,
    /// `Sing_n(K)`.
    Singular,
}

impl FieldFamily {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text {
            "full" => FieldFamily::Full,
            "gl" => FieldFamily::General,
            "orthogonal" => FieldFamily::Orthogonal,
            "star_orthogonal" => FieldFamily::StarOrthogonal,
            "l1" => FieldFamily::RankOneWithIdentity,
            "sing" => FieldFamily::Singular,
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }

    fn contains(&self, a: &FieldMatrix) -> bool {
        let n = a.rows();
        match self {
            FieldFamily::Full => true,
            FieldFamily::General => a.rank() == n,
            FieldFamily::Orthogonal => a.inverse().is_some_and(|inv| inv == a.transpose()),
            FieldFamily::StarOrthogonal => a.inverse().is_some_and(|inv| inv == a.conj_transpose()),
            FieldFamily::RankOneWithIdentity => a.rank() <= 1 || *a == FieldMatrix::identity(a.field(), n),
            FieldFamily::Singular => a.rank() < n,
        }
    }
}

/// Every `n×n` matrix over `field`, in lexicographic order of the row-major
/// entries (so the zero matrix comes first).
pub fn all_field_matrices(field: &Arc<InvolutiveField>, n: usize) -> Result<Vec<FieldMatrix>> {
    let q = field.size() as u64;
    let count = (n * n) as u32;
    let total = q
        .checked_pow(count)
        .filter(|&t| t <= MATRIX_ENUMERATION_LIMIT)
        .ok_or(Error::SizeCap {
            size: (q as u128).saturating_pow(count),
            cap: MATRIX_ENUMERATION_LIMIT as u128,
        })?;
    Ok((0..total)
        .map(|mut code| {
            let mut entries = vec![0; n * n];
            for slot in entries.iter_mut().rev() {
                *slot = (code % q) as u32;
                code /= q;
            }
            FieldMatrix::square(field, n, entries).expect("entries in range")
        })
        .collect())
}

/// Tabulates a family of `n×n` matrices over `field` with the given unary
/// operations. A partial operation (such as `mp` over `GF(5)`) is an error.
pub fn field_family(
    field: &Arc<InvolutiveField>,
    n: usize,
    family: FieldFamily,
    unaries: &[FieldUnary],
) -> Result<MatrixSemigroup<FieldMatrix>> {
    if n == 0 {
        return Err(Error::Dimension("matrix size 0".into()));
    }
    if unaries.contains(&FieldUnary::Symplectic) && !n.is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "symplectic transpose needs even size, got {n}"
        )));
    }
    let members: Vec<FieldMatrix> = all_field_matrices(field, n)?
        .into_par_iter()
        .filter(|a| family.contains(a))
        .collect();
    field_matrix_set(members, unaries)
}

type BoxedUnary = Box<dyn Fn(&FieldMatrix) -> Option<FieldMatrix> + Sync>;

/// Tabulates an explicit set of field matrices closed under the product
/// and the unaries.
pub fn field_matrix_set(members: Vec<FieldMatrix>, unaries: &[FieldUnary]) -> Result<MatrixSemigroup<FieldMatrix>> {
    let names: Vec<String> = unaries.iter().map(FieldUnary::name).collect();
    let ops: Vec<BoxedUnary> = unaries
        .iter()
        .map(|&u| Box::new(move |a: &FieldMatrix| u.apply(a)) as Box<_>)
        .collect();
    let table: Vec<UnaryOp<'_, FieldMatrix>> = names.iter().zip(&ops).map(|(n, op)| (n.as_str(), &**op as _)).collect();
    MatrixSemigroup::from_elements(members, |a, b| a.product(b), &table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolUnary {
    Transpose,
    AntiDiag,
}

impl BoolUnary {
    pub fn apply(&self, a: &BoolMatrix) -> BoolMatrix {
        match self {
            BoolUnary::Transpose => a.transpose(),
            BoolUnary::AntiDiag => a.anti_diag(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BoolUnary::Transpose => "transpose",
            BoolUnary::AntiDiag => "anti_diag",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolFamily {
    /// `B_n` with transposition.
    All,
    /// `HB_n`, the Hall matrices, with transposition.
    Hall,
    /// `BT_n`, upper triangular, with the anti-diagonal reflection.
    UpperTriangular,
    /// `BR_n`, ones on the diagonal, with transposition.
    Reflexive,
    /// `BU_n`, upper unitriangular, with the anti-diagonal reflection.
    Unitriangular,
}

impl BoolFamily {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text {
            "all" | "b" => BoolFamily::All,
            "hall" | "hb" => BoolFamily::Hall,
            "bt" => BoolFamily::UpperTriangular,
            "br" => BoolFamily::Reflexive,
            "bu" => BoolFamily::Unitriangular,
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }

    pub fn unary(&self) -> BoolUnary {
        match self {
            BoolFamily::All | BoolFamily::Hall | BoolFamily::Reflexive => BoolUnary::Transpose,
            BoolFamily::UpperTriangular | BoolFamily::Unitriangular => BoolUnary::AntiDiag,
        }
    }
}

/// A Boolean matrix family with products computed on demand; ids index
/// the members in increasing bit order.
#[derive(Clone, Debug)]
pub struct BoolMatrixSemigroup {
    n: usize,
    members: Vec<u64>,
    unary: BoolUnary,
}

/// Largest number of free entries enumerated for a Boolean family.
pub const BOOL_FREE_ENTRY_CAP: usize = 20;

pub fn bool_family(family: BoolFamily, n: usize) -> Result<BoolMatrixSemigroup> {
    BoolMatrix::from_bits(n, 0)?;
    let positions =
        |keep: &dyn Fn(usize, usize) -> bool| -> Vec<usize> { (0..n * n).filter(|&k| keep(k / n, k % n)).collect() };
    let (free, forced) = match family {
        BoolFamily::All | BoolFamily::Hall => (positions(&|_, _| true), 0u64),
        BoolFamily::UpperTriangular => (positions(&|i, j| i <= j), 0),
        BoolFamily::Reflexive => (positions(&|i, j| i != j), BoolMatrix::identity(n).bits()),
        BoolFamily::Unitriangular => (positions(&|i, j| i < j), BoolMatrix::identity(n).bits()),
    };
    if free.len() > BOOL_FREE_ENTRY_CAP {
        return Err(Error::SizeCap {
            size: 1u128 << free.len(),
            cap: 1u128 << BOOL_FREE_ENTRY_CAP,
        });
    }
    let members: Vec<u64> = (0..1u64 << free.len())
        .into_par_iter()
        .map(|code| {
            free.iter()
                .enumerate()
                .fold(forced, |bits, (b, &pos)| bits | ((code >> b) & 1) << pos)
        })
        .filter(|&bits| family != BoolFamily::Hall || BoolMatrix::from_bits(n, bits).expect("in range").is_hall())
        .collect();
    Ok(BoolMatrixSemigroup {
        n,
        members,
        unary: family.unary(),
    })
}

impl BoolMatrixSemigroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unary(&self) -> BoolUnary {
        self.unary
    }

    pub fn element(&self, id: ElementId) -> BoolMatrix {
        BoolMatrix::from_bits(self.n, self.members[id as usize]).expect("member")
    }

    pub fn id_of(&self, m: &BoolMatrix) -> Option<ElementId> {
        if m.n() != self.n {
            return None;
        }
        self.members.binary_search(&m.bits()).ok().map(|i| i as ElementId)
    }

    fn lookup(&self, m: BoolMatrix) -> ElementId {
        self.id_of(&m).expect("family is closed under its operations")
    }

    pub fn to_table(&self) -> Result<FiniteUnarySemigroup> {
        if self.members.len() > MATRIX_TABULATION_LIMIT {
            return Err(Error::SizeCap {
                size: self.members.len() as u128,
                cap: MATRIX_TABULATION_LIMIT as u128,
            });
        }
        FiniteUnarySemigroup::tabulate(self)
    }
}

impl UnarySemigroup for BoolMatrixSemigroup {
    fn size(&self) -> usize {
        self.members.len()
    }

    fn arity(&self) -> usize {
        1
    }

    fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.lookup(self.element(a).mul(&self.element(b)))
    }

    fn star(&self, _table: usize, a: ElementId) -> ElementId {
        self.lookup(self.unary.apply(&self.element(a)))
    }

    fn label(&self, a: ElementId) -> String {
        self.element(a).to_string()
    }
}

/// Tabulates an explicit set of Boolean matrices.
pub fn bool_matrix_set(members: Vec<BoolMatrix>, unary: BoolUnary) -> Result<MatrixSemigroup<BoolMatrix>> {
    let op = move |a: &BoolMatrix| Some(unary.apply(a));
    MatrixSemigroup::from_elements(members, |a, b| a.mul(b), &[(unary.name(), &op)])
}

/// The unary submonoid generated by `generators` (identity first).
pub fn bool_generated_monoid(generators: &[BoolMatrix], unary: BoolUnary) -> Result<MatrixSemigroup<BoolMatrix>> {
    let n = generators
        .first()
        .map(BoolMatrix::n)
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
    if generators.iter().any(|g| g.n() != n) {
        return Err(Error::Dimension("generators of different sizes".into()));
    }
    let mut gens = vec![BoolMatrix::identity(n)];
    gens.extend_from_slice(generators);
    let op = move |a: &BoolMatrix| Some(unary.apply(a));
    MatrixSemigroup::generated(&gens, |a, b| a.mul(b), &[(unary.name(), &op)])
}
