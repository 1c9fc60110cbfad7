use sdias_linalg::SparseVector;

use crate::{BilinearProduct, CoreError, Parity, SuperSpace, VectorParity};

fn check_square(space: &SuperSpace, p: &BilinearProduct) -> Result<(), CoreError> {
    let n = space.dim();
    for d in [p.left_dim(), p.right_dim(), p.out_dim()] {
        if d != n {
            return Err(CoreError::DimensionMismatch { expected: n, found: d });
        }
    }
    Ok(())
}

/// A super dialgebra: a graded space with left (⊣) and right (⊢) products
/// and an optional bar-unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperDialgebra {
    space: SuperSpace,
    left: BilinearProduct,
    right: BilinearProduct,
    bar_unit: Option<SparseVector>,
}

impl SuperDialgebra {
    pub fn new(
        space: SuperSpace,
        left: BilinearProduct,
        right: BilinearProduct,
        bar_unit: Option<SparseVector>,
    ) -> Result<Self, CoreError> {
        check_square(&space, &left)?;
        check_square(&space, &right)?;
        if let Some(u) = &bar_unit {
            if u.dim() != space.dim() {
                return Err(CoreError::DimensionMismatch {
                    expected: space.dim(),
                    found: u.dim(),
                });
            }
            if !matches!(
                space.vector_parity(u),
                VectorParity::Homogeneous(Parity::Even)
            ) {
                return Err(CoreError::OddUnit);
            }
        }
        Ok(SuperDialgebra {
            space,
            left,
            right,
            bar_unit,
        })
    }

    /// An associative superalgebra viewed as a dialgebra with ⊣ = ⊢.
    pub fn associative(
        space: SuperSpace,
        product: BilinearProduct,
        unit: Option<SparseVector>,
    ) -> Result<Self, CoreError> {
        SuperDialgebra::new(space, product.clone(), product, unit)
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn name(&self) -> &str {
        self.space.name()
    }

    /// ⊣
    pub fn left(&self) -> &BilinearProduct {
        &self.left
    }

    /// ⊢
    pub fn right(&self) -> &BilinearProduct {
        &self.right
    }

    pub fn bar_unit(&self) -> Option<&SparseVector> {
        self.bar_unit.as_ref()
    }

    pub fn products_coincide(&self) -> bool {
        self.left == self.right
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.space = self.space.with_name(name);
        self
    }

    pub fn without_unit(mut self) -> Self {
        self.bar_unit = None;
        self
    }
}

/// A (left) Leibniz superalgebra given by its bracket.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeibnizSuperalgebra {
    space: SuperSpace,
    bracket: BilinearProduct,
}

impl LeibnizSuperalgebra {
    pub fn new(space: SuperSpace, bracket: BilinearProduct) -> Result<Self, CoreError> {
        check_square(&space, &bracket)?;
        Ok(LeibnizSuperalgebra { space, bracket })
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn name(&self) -> &str {
        self.space.name()
    }

    pub fn bracket(&self) -> &BilinearProduct {
        &self.bracket
    }

    pub fn bracket_of(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        self.bracket.apply(x, y)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.space = self.space.with_name(name);
        self
    }
}

/// Either kind of algebra, for operations shared by both.
#[derive(Clone, Copy, Debug)]
pub enum AlgebraRef<'a> {
    Dialgebra(&'a SuperDialgebra),
    Leibniz(&'a LeibnizSuperalgebra),
}

impl<'a> AlgebraRef<'a> {
    pub fn space(&self) -> &'a SuperSpace {
        match self {
            AlgebraRef::Dialgebra(d) => d.space(),
            AlgebraRef::Leibniz(l) => l.space(),
        }
    }

    pub fn products(&self) -> Vec<&'a BilinearProduct> {
        match self {
            AlgebraRef::Dialgebra(d) => vec![d.left(), d.right()],
            AlgebraRef::Leibniz(l) => vec![l.bracket()],
        }
    }
}

impl<'a> From<&'a SuperDialgebra> for AlgebraRef<'a> {
    fn from(d: &'a SuperDialgebra) -> Self {
        AlgebraRef::Dialgebra(d)
    }
}

impl<'a> From<&'a LeibnizSuperalgebra> for AlgebraRef<'a> {
    fn from(l: &'a LeibnizSuperalgebra) -> Self {
        AlgebraRef::Leibniz(l)
    }
}
