//! Explicit splitting of a closed module M with `I(M) = (x^m, xy, y^n)`:
//! a transcript of elementary operations taking the given columns to
//! `[[y^{n−1}, 0, 0, x], [0, x^{m−1}, y, 0]]`, so that
//! `M ≅ (x, y^{n−1}) ⊕ (x^{m−1}, y)`.
//!
//! Every operation preserves the module up to isomorphism: row operations
//! have unit determinant, scalings are by units, adjoined columns are
//! verified members and removed columns are zero.

use num_traits::Zero;
use serde::Serialize;

use crate::qpoly::{apply_change, is_local_unit, GL2Change, Monomial, Poly};
use crate::staircase::Staircase;
use crate::trunclin::ModuleSpan;

use super::{mat_vec, render_columns, scaled_free_check, Column, ModuleError, ModuleMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyParams {
    pub m: u32,
    pub n: u32,
}

impl FamilyParams {
    pub fn ideal(self) -> Staircase {
        Staircase::family(self.m, self.n)
    }

    /// `[[y^{n−1}, 0, 0, x], [0, x^{m−1}, y, 0]]`.
    pub fn block(self) -> Vec<Column> {
        vec![
            [Poly::xy(0, self.n - 1), Poly::zero()],
            [Poly::zero(), Poly::xy(self.m - 1, 0)],
            [Poly::zero(), Poly::y()],
            [Poly::x(), Poly::zero()],
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ColumnOp {
    /// Every column `c ↦ P·c`.
    Row { matrix: [[Poly; 2]; 2] },
    /// Append a column.
    Adjoin { column: Column },
    /// `col[target] += factor·col[source]`.
    AddMultiple { target: usize, source: usize, factor: Poly },
    /// `col[column] *= factor`.
    Scale { column: usize, factor: Poly },
    /// Drop a zero column.
    Remove { column: usize },
    /// New column i is old column `order[i]`.
    Permute { order: Vec<usize> },
}

impl ColumnOp {
    fn substitute(&self, u: &GL2Change) -> ColumnOp {
        let s = |p: &Poly| apply_change(p, u);
        match self {
            ColumnOp::Row { matrix } => ColumnOp::Row {
                matrix: [
                    [s(&matrix[0][0]), s(&matrix[0][1])],
                    [s(&matrix[1][0]), s(&matrix[1][1])],
                ],
            },
            ColumnOp::Adjoin { column } => ColumnOp::Adjoin {
                column: [s(&column[0]), s(&column[1])],
            },
            ColumnOp::AddMultiple {
                target,
                source,
                factor,
            } => ColumnOp::AddMultiple {
                target: *target,
                source: *source,
                factor: s(factor),
            },
            ColumnOp::Scale { column, factor } => ColumnOp::Scale {
                column: *column,
                factor: s(factor),
            },
            other => other.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonexisDecomposition {
    pub params: FamilyParams,
    /// `(x, y^{n−1})` and `(x^{m−1}, y)`.
    pub summands: (Staircase, Staircase),
    pub transcript: Vec<ColumnOp>,
    pub block: String,
}

fn invalid(what: impl Into<String>) -> ModuleError {
    ModuleError::NormalizationFailed(what.into())
}

fn apply_op(cols: &mut Vec<Column>, op: &ColumnOp) -> Result<(), ModuleError> {
    match op {
        ColumnOp::Row { matrix } => {
            let det = &(&matrix[0][0] * &matrix[1][1]) - &(&matrix[0][1] * &matrix[1][0]);
            if !is_local_unit(&det) {
                return Err(invalid("row operation with non-unit determinant"));
            }
            for c in cols.iter_mut() {
                *c = mat_vec(matrix, c);
            }
        }
        ColumnOp::Adjoin { column } => cols.push(column.clone()),
        ColumnOp::AddMultiple {
            target,
            source,
            factor,
        } => {
            if target == source || *target >= cols.len() || *source >= cols.len() {
                return Err(invalid("column addition with bad indices"));
            }
            let src = cols[*source].clone();
            for k in 0..2 {
                cols[*target][k] = &cols[*target][k] + &(factor * &src[k]);
            }
        }
        ColumnOp::Scale { column, factor } => {
            if *column >= cols.len() || !is_local_unit(factor) {
                return Err(invalid("scaling by a non-unit"));
            }
            for k in 0..2 {
                cols[*column][k] = &cols[*column][k] * factor;
            }
        }
        ColumnOp::Remove { column } => {
            if *column >= cols.len() || !is_zero_column(&cols[*column]) {
                return Err(invalid("removal of a nonzero column"));
            }
            cols.remove(*column);
        }
        ColumnOp::Permute { order } => {
            let mut seen = order.clone();
            seen.sort_unstable();
            if seen != (0..cols.len()).collect::<Vec<_>>() {
                return Err(invalid("permutation of the wrong size"));
            }
            *cols = order.iter().map(|&i| cols[i].clone()).collect();
        }
    }
    Ok(())
}

fn is_zero_column(c: &Column) -> bool {
    c[0].is_zero() && c[1].is_zero()
}

/// Apply a transcript to the columns of `input`.
pub fn replay(input: &ModuleMat, transcript: &[ColumnOp]) -> Result<Vec<Column>, ModuleError> {
    let mut cols = input.cols().to_vec();
    for op in transcript {
        apply_op(&mut cols, op)?;
    }
    Ok(cols)
}

struct Work {
    cols: Vec<Column>,
    ops: Vec<ColumnOp>,
    cutoff: u32,
}

impl Work {
    fn push(&mut self, op: ColumnOp) -> Result<(), ModuleError> {
        apply_op(&mut self.cols, &op)?;
        self.ops.push(op);
        Ok(())
    }

    fn adjoin(&mut self, column: Column, what: &str) -> Result<usize, ModuleError> {
        if !ModuleSpan::new(&self.cols, self.cutoff).contains(&column) {
            return Err(invalid(format!("{what} is not in the module")));
        }
        self.push(ColumnOp::Adjoin { column })?;
        Ok(self.cols.len() - 1)
    }

    fn add_multiple(&mut self, target: usize, source: usize, factor: Poly) -> Result<(), ModuleError> {
        if factor.is_zero() {
            return Ok(());
        }
        self.push(ColumnOp::AddMultiple {
            target,
            source,
            factor,
        })
    }

    /// Cancel the terms of `col[target][comp]` that are divisible by a pivot
    /// monomial, except those selected by `keep`. A pivot `(j, g)` names a
    /// column equal to `g` in coordinate `comp` and zero in the other.
    fn reduce_entry(
        &mut self,
        target: usize,
        comp: usize,
        pivots: &[(usize, Monomial)],
        keep: impl Fn(Monomial) -> bool,
    ) -> Result<(), ModuleError> {
        let mut factors = vec![Poly::zero(); pivots.len()];
        for (mono, c) in self.cols[target][comp].terms() {
            if keep(*mono) {
                continue;
            }
            if let Some(k) = pivots.iter().position(|(_, g)| g.divides(*mono)) {
                factors[k].add_term(pivots[k].1.quotient(*mono).expect("divides"), -c.clone());
            }
        }
        for (k, f) in factors.into_iter().enumerate() {
            let (j, g) = pivots[k];
            debug_assert!(j != target);
            debug_assert!(self.cols[j][comp] == Poly::monomial(g) && self.cols[j][1 - comp].is_zero());
            self.add_multiple(target, j, f)?;
        }
        Ok(())
    }

    /// Remove zero columns, then order the survivors as `keep`.
    fn finish(&mut self, keep: &[usize]) -> Result<(), ModuleError> {
        for j in (0..self.cols.len()).rev() {
            if !keep.contains(&j) {
                if !is_zero_column(&self.cols[j]) {
                    return Err(invalid(format!(
                        "column {j} did not reduce to zero: {}",
                        render_columns(&self.cols[j..=j])
                    )));
                }
                self.push(ColumnOp::Remove { column: j })?;
            }
        }
        let mut survivors = keep.to_vec();
        survivors.sort_unstable();
        let order: Vec<usize> = keep
            .iter()
            .map(|k| survivors.iter().position(|s| s == k).expect("kept"))
            .collect();
        if order.iter().enumerate().any(|(i, &o)| i != o) {
            self.push(ColumnOp::Permute { order })?;
        }
        Ok(())
    }
}

/// Split a module with `I(M) = (x^m, xy, y^n)` into the block form.
pub fn decompose_nonexis(m: &ModuleMat, params: FamilyParams) -> Result<NonexisDecomposition, ModuleError> {
    let FamilyParams { m: a, n: b } = params;
    if a < 2 || b < 2 {
        return Err(ModuleError::NotInFamily { m: a, n: b });
    }
    let ideal = params.ideal();
    if !m.in_mf() || !m.minors_equal(&ideal) {
        return Err(ModuleError::NotInFamily { m: a, n: b });
    }
    let cutoff = scaled_free_check(m, &ideal)?.degree();

    let transcript = if a == 2 && b == 2 {
        split_msquare(m.cols(), cutoff)?
    } else if a >= 3 {
        normalize(m.cols(), a, b, cutoff)?
    } else {
        // a = 2 < b: the variable swap exchanges the roles of m and n
        let swap = GL2Change::swap();
        let swapped: Vec<Column> = m
            .apply_change(&swap)
            .cols()
            .to_vec();
        let mut ops: Vec<ColumnOp> = normalize(&swapped, b, a, cutoff)?
            .iter()
            .map(|op| op.substitute(&swap))
            .collect();
        ops.push(ColumnOp::Row {
            matrix: [[Poly::zero(), Poly::one()], [Poly::one(), Poly::zero()]],
        });
        ops.push(ColumnOp::Permute {
            order: vec![1, 0, 3, 2],
        });
        ops
    };

    let block = params.block();
    if replay(m, &transcript)? != block {
        return Err(invalid("replay does not reach the block form"));
    }
    Ok(NonexisDecomposition {
        params,
        summands: (
            Staircase::from_exponents(&[(1, 0), (0, b - 1)]).expect("m-primary"),
            Staircase::from_exponents(&[(a - 1, 0), (0, 1)]).expect("m-primary"),
        ),
        transcript,
        block: render_columns(&block),
    })
}

/// `I(M) = m²`: M = mF, generated by the four coordinate columns.
fn split_msquare(input: &[Column], cutoff: u32) -> Result<Vec<ColumnOp>, ModuleError> {
    let mut w = Work {
        cols: input.to_vec(),
        ops: Vec::new(),
        cutoff,
    };
    let iy0 = w.adjoin([Poly::y(), Poly::zero()], "(y, 0)")?;
    let i0x = w.adjoin([Poly::zero(), Poly::x()], "(0, x)")?;
    let i0y = w.adjoin([Poly::zero(), Poly::y()], "(0, y)")?;
    let ix0 = w.adjoin([Poly::x(), Poly::zero()], "(x, 0)")?;
    for c in 0..input.len() {
        w.reduce_entry(c, 0, &[(ix0, Monomial::X), (iy0, Monomial::Y)], |_| false)?;
        w.reduce_entry(c, 1, &[(i0x, Monomial::X), (i0y, Monomial::Y)], |_| false)?;
    }
    w.finish(&[iy0, i0x, i0y, ix0])?;
    Ok(w.ops)
}

/// The main normalization, for `m ≥ 3` and `n ≥ 2`.
fn normalize(input: &[Column], m: u32, n: u32, cutoff: u32) -> Result<Vec<ColumnOp>, ModuleError> {
    let mut w = Work {
        cols: input.to_vec(),
        ops: Vec::new(),
        cutoff,
    };
    let maximal = Staircase::maximal();
    let j = Staircase::family(m, n).colon(&maximal);
    let jdeg = j.power_containment_degree();
    let ym = Monomial::new(0, n - 1);
    let xm = Monomial::new(m - 1, 0);

    // A column whose y-coefficients β = (β0, β1) contain a unit; then y·β ∈ M.
    let (b0, b1) = input
        .iter()
        .map(|c| (c[0].split_xy().1, c[1].split_xy().1))
        .find(|(b0, b1)| is_local_unit(b0) || is_local_unit(b1))
        .ok_or_else(|| invalid("no column has a unit y-coefficient"))?;
    let (second, u) = if is_local_unit(&b1) {
        ([Poly::zero(), Poly::one()], b1.clone())
    } else {
        ([Poly::one(), Poly::zero()], b0.clone())
    };
    w.push(ColumnOp::Row {
        matrix: [[b1, -b0], second],
    })?;
    let wy = w.adjoin([Poly::zero(), &Poly::y() * &u], "(0, y·u)")?;

    // J F with J = I : m lies in M.
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for &g in j.corners() {
        top.push((w.adjoin([Poly::monomial(g), Poly::zero()], "(g, 0)")?, g));
        bottom.push((w.adjoin([Poly::zero(), Poly::monomial(g)], "(0, g)")?, g));
    }
    let ty = top.iter().find(|(_, g)| *g == ym).expect("y^{n-1} generates I:m").0;
    let bx = bottom.iter().find(|(_, g)| *g == xm).expect("x^{m-1} generates I:m").0;

    // (0, y·u) → (0, y)
    let inv = u.truncated_inverse(jdeg).expect("unit");
    w.push(ColumnOp::Scale { column: wy, factor: inv })?;
    w.reduce_entry(wy, 1, &bottom, |mono| mono == Monomial::Y)?;
    if w.cols[wy] != [Poly::zero(), Poly::y()] {
        return Err(invalid("normalizing (0, y)"));
    }

    // Second rows become multiples of x.
    for c in 0..w.cols.len() {
        if c == wy {
            continue;
        }
        let (_, qy, q0) = w.cols[c][1].split_xy();
        if !q0.is_zero() {
            return Err(invalid("entry outside m"));
        }
        w.add_multiple(c, wy, -qy)?;
    }

    // First rows lose their pure powers of y.
    for c in 0..w.cols.len() {
        if c == ty {
            continue;
        }
        w.reduce_entry(c, 0, &[(ty, ym)], |mono| mono.a > 0)?;
        let (_, py, p0) = w.cols[c][0].split_xy();
        if !py.is_zero() || !p0.is_zero() {
            return Err(invalid("first row outside (x, y^{n-1})"));
        }
    }

    // For n = 2 the unit may sit in the second row; (y, 0) ∈ JF then lets
    // first += second keep (0, y) and (0, x^{m-1}) in place.
    let has_pivot = |w: &Work, row: usize| {
        (0..w.cols.len()).any(|c| c != ty && !w.cols[c][row].coeff(Monomial::X).is_zero())
    };
    if n == 2 && !has_pivot(&w, 0) && has_pivot(&w, 1) {
        w.push(ColumnOp::Row {
            matrix: [[Poly::one(), Poly::one()], [Poly::zero(), Poly::one()]],
        })?;
        w.add_multiple(wy, ty, -Poly::one())?;
        let tx = top.iter().find(|(_, g)| *g == xm).expect("x^{m-1} generates I:m").0;
        w.add_multiple(bx, tx, -Poly::one())?;
    }

    // Pivot on a first row x·(unit), normalized to x.
    let k = (0..w.cols.len())
        .find(|&c| c != ty && !w.cols[c][0].coeff(Monomial::X).is_zero())
        .ok_or_else(|| invalid("no first-row entry of order one"))?;
    let (p0, _, _) = w.cols[k][0].split_xy();
    let inv = p0.truncated_inverse(jdeg).expect("unit");
    w.push(ColumnOp::Scale { column: k, factor: inv })?;
    w.reduce_entry(k, 0, &top, |mono| mono == Monomial::X)?;
    if w.cols[k][0] != Poly::x() {
        return Err(invalid("normalizing the x pivot"));
    }
    for c in 0..w.cols.len() {
        if c == k || c == ty || w.cols[c][0].is_zero() {
            continue;
        }
        let (q0, _, _) = w.cols[c][0].split_xy();
        w.add_multiple(c, k, -q0)?;
    }

    // Second rows reduce modulo (0, y) and (0, x^{m-1}).
    for c in 0..w.cols.len() {
        if c == wy || c == bx {
            continue;
        }
        w.reduce_entry(c, 1, &[(wy, Monomial::Y), (bx, xm)], |mono| {
            c == k && mono == Monomial::X
        })?;
    }
    let s = w.cols[k][1].coeff(Monomial::X);
    if w.cols[k][1] != Poly::term(s.clone(), Monomial::X) {
        return Err(invalid("second row of the x pivot outside (x)"));
    }

    // (x, s·x) → (x, 0); the y^{n-1} column picks up -s·y^{n-1}, removed via (0, y).
    if !s.is_zero() {
        let neg = Poly::constant(-s);
        w.push(ColumnOp::Row {
            matrix: [[Poly::one(), Poly::zero()], [neg, Poly::one()]],
        })?;
        w.reduce_entry(ty, 1, &[(wy, Monomial::Y)], |_| false)?;
    }

    w.finish(&[ty, bx, wy, k])?;
    Ok(w.ops)
}
