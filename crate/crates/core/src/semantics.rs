//! Exact matrix semantics.
//!
//! Every diagram denotes a matrix over the active semiring, indexed by the
//! basis-name enumerations of its boundary objects extended with one extra
//! empty name each. The evaluator works on that extended ("full") form
//! throughout; the functional semantics is obtained by checking and stripping
//! the extra row and column.
//!
//! Matrices of diagrams are extremely sparse (generators are permutation-like
//! with a handful of fan-outs), so evaluation is carried out on a sparse
//! triplet representation and only converted to the dense [`SemMatrix`] at
//! the boundary. Parallel composition is computed by basis-name pairing: a
//! name of `X ++ Y` splits uniquely into a name of `X` and a name of `Y`
//! (either part possibly empty), which realises the regrouping isomorphisms
//! without materialising any permutation matrices.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::colors::{BasisName, Color, EnumTable, Obj};
use crate::diagram::{Diagram, Node};
use crate::semiring::{parse_scalar, Scalar, SemiringError, SemiringTag};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum EvalError {
    #[error(transparent)]
    Semiring(#[from] SemiringError),
    #[error("diagram is not functional (contains a Unit)")]
    NotFunctional,
    #[error("functional restriction violated at the empty name; this is an evaluator bug")]
    FunctionalAssertion,
    #[error("dense matrix would have {0} x {1} entries; boundary objects are too large")]
    TooLarge(usize, usize),
    #[error("matrix shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("bad matrix file: {0}")]
    BadMatrixFile(String),
}

const DENSE_CAP: usize = 1 << 24;

/// Sparse matrix over the full enumerations of two objects.
#[derive(Clone, Debug)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<(u32, u32), Scalar>,
}

impl SparseMat {
    fn new(rows: usize, cols: usize) -> SparseMat {
        SparseMat {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    fn insert_add(&mut self, r: u32, c: u32, v: Scalar) -> Result<(), SemiringError> {
        if v.is_zero() {
            return Ok(());
        }
        match self.entries.entry((r, c)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&v)?;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    /// self · other (matrix product; `other` is applied first).
    fn product(&self, other: &SparseMat) -> Result<SparseMat, SemiringError> {
        debug_assert_eq!(self.cols, other.rows);
        let mut by_row: HashMap<u32, Vec<(u32, &Scalar)>> = HashMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = SparseMat::new(self.rows, other.cols);
        for (&(r, k), v) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, w) in row {
                    out.insert_add(r, c, v.mul(w)?)?;
                }
            }
        }
        Ok(out)
    }

    fn transpose(&self) -> SparseMat {
        let mut out = SparseMat::new(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            out.entries.insert((c, r), v.clone());
        }
        out
    }

    pub fn get(&self, r: u32, c: u32, tag: SemiringTag) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| tag.zero())
    }

    pub fn equal(&self, other: &SparseMat) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        // zero entries are never stored, so key sets must match
        if self.entries.len() != other.entries.len() {
            return false;
        }
        self.entries
            .iter()
            .zip(other.entries.iter())
            .all(|((ka, va), (kb, vb))| ka == kb && va.sr_eq(vb))
    }

    /// First position where the matrices differ, with both values.
    pub fn first_difference(&self, other: &SparseMat, tag: SemiringTag) -> Option<(u32, u32, Scalar, Scalar)> {
        let mut keys: Vec<(u32, u32)> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for (r, c) in keys {
            let a = self.get(r, c, tag);
            let b = other.get(r, c, tag);
            if !a.sr_eq(&b) {
                return Some((r, c, a, b));
            }
        }
        None
    }
}

/// Dense matrix with named rows and columns, the exchange form of the
/// semantics.
#[derive(Clone, Debug)]
pub struct SemMatrix {
    pub tag: SemiringTag,
    pub row_names: Vec<BasisName>,
    pub col_names: Vec<BasisName>,
    /// Row-major; length `row_names.len() * col_names.len()`.
    pub entries: Vec<Scalar>,
}

impl SemMatrix {
    pub fn rows(&self) -> usize {
        self.row_names.len()
    }

    pub fn cols(&self) -> usize {
        self.col_names.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols() + c]
    }

    pub fn from_rows(tag: SemiringTag, rows: Vec<Vec<Scalar>>) -> SemMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        let nrows = rows.len();
        SemMatrix {
            tag,
            row_names: anonymous_names(nrows),
            col_names: anonymous_names(ncols),
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(tag: SemiringTag, rows: usize, cols: usize) -> SemMatrix {
        SemMatrix {
            tag,
            row_names: anonymous_names(rows),
            col_names: anonymous_names(cols),
            entries: vec![tag.zero(); rows * cols],
        }
    }

    pub fn identity(tag: SemiringTag, n: usize) -> SemMatrix {
        let mut m = SemMatrix::zeros(tag, n, n);
        for i in 0..n {
            m.entries[i * n + i] = tag.one();
        }
        m
    }

    /// Entry-wise semiring equality; names are not compared.
    pub fn equals(&self, other: &SemMatrix) -> bool {
        self.tag == other.tag
            && self.rows() == other.rows()
            && self.cols() == other.cols()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.sr_eq(b))
    }

    /// self · other.
    pub fn product(&self, other: &SemMatrix) -> Result<SemMatrix, EvalError> {
        if self.cols() != other.rows() {
            return Err(EvalError::ShapeMismatch(
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols(),
            ));
        }
        let mut out = SemMatrix::zeros(self.tag, self.rows(), other.cols());
        out.row_names = self.row_names.clone();
        out.col_names = other.col_names.clone();
        for r in 0..self.rows() {
            for c in 0..other.cols() {
                let mut acc = self.tag.zero();
                for k in 0..self.cols() {
                    acc = acc.add(&self.get(r, k).mul(other.get(k, c))?)?;
                }
                out.entries[r * other.cols() + c] = acc;
            }
        }
        Ok(out)
    }

    /// Kronecker product, left factor outer: row (i, j) of the result is
    /// i·rows(other) + j.
    pub fn kron(&self, other: &SemMatrix) -> Result<SemMatrix, EvalError> {
        let mut out = SemMatrix::zeros(
            self.tag,
            self.rows() * other.rows(),
            self.cols() * other.cols(),
        );
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                for k in 0..other.rows() {
                    for l in 0..other.cols() {
                        let r = i * other.rows() + k;
                        let c = j * other.cols() + l;
                        out.entries[r * out.cols() + c] = self.get(i, j).mul(other.get(k, l))?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &SemMatrix) -> SemMatrix {
        let mut out = SemMatrix::zeros(
            self.tag,
            self.rows() + other.rows(),
            self.cols() + other.cols(),
        );
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.entries[i * out.cols() + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows() {
            for j in 0..other.cols() {
                out.entries[(self.rows() + i) * out.cols() + (self.cols() + j)] =
                    other.get(i, j).clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> SemMatrix {
        let mut out = SemMatrix::zeros(self.tag, self.cols(), self.rows());
        out.row_names = self.col_names.clone();
        out.col_names = self.row_names.clone();
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.entries[c * self.rows() + r] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Render as an aligned text table with name annotations.
    pub fn to_text(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::with_capacity(self.rows() + 1);
        let mut header = vec![String::new()];
        header.extend(self.col_names.iter().map(|n| n.to_string()));
        cells.push(header);
        for r in 0..self.rows() {
            let mut row = vec![self.row_names[r].to_string()];
            row.extend((0..self.cols()).map(|c| self.get(r, c).to_literal()));
            cells.push(row);
        }
        let ncols = cells[0].len();
        let widths: Vec<usize> = (0..ncols)
            .map(|c| cells.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &cells {
            for (c, cell) in row.iter().enumerate() {
                let pad = widths[c].saturating_sub(cell.chars().count());
                let _ = write!(out, "{}{} ", " ".repeat(pad), cell);
            }
            out.pop();
            out.push('\n');
        }
        out
    }

    /// Exchange format: `{"semiring": tag, "rows": n, "cols": m,
    /// "entries": [[literal, ...], ...]}` with rows in enumeration order.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Vec<String>> = (0..self.rows())
            .map(|r| (0..self.cols()).map(|c| self.get(r, c).to_literal()).collect())
            .collect();
        serde_json::json!({
            "semiring": self.tag.name(),
            "rows": self.rows(),
            "cols": self.cols(),
            "entries": entries,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SemMatrix, EvalError> {
        let bad = |m: &str| EvalError::BadMatrixFile(m.to_string());
        let tag_name = value
            .get("semiring")
            .and_then(|v| v.as_str())
            .ok_or_else(|| bad("missing semiring"))?;
        let tag = SemiringTag::from_name(tag_name)
            .ok_or_else(|| bad(&format!("unknown semiring `{tag_name}`")))?;
        let rows = value.get("rows").and_then(|v| v.as_u64()).ok_or_else(|| bad("missing rows"))? as usize;
        let cols = value.get("cols").and_then(|v| v.as_u64()).ok_or_else(|| bad("missing cols"))? as usize;
        let entries = value
            .get("entries")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing entries"))?;
        if entries.len() != rows {
            return Err(bad("row count mismatch"));
        }
        let mut out = Vec::with_capacity(rows * cols);
        for row in entries {
            let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
            if row.len() != cols {
                return Err(bad("column count mismatch"));
            }
            for cell in row {
                let lit = cell.as_str().ok_or_else(|| bad("entry is not a string"))?;
                out.push(parse_scalar(tag, lit).map_err(EvalError::Semiring)?);
            }
        }
        Ok(SemMatrix {
            tag,
            row_names: anonymous_names(rows),
            col_names: anonymous_names(cols),
            entries: out,
        })
    }
}

fn anonymous_names(n: usize) -> Vec<BasisName> {
    (0..n).map(|i| BasisName::singleton(0, i as u32)).collect()
}

/// Evaluator with per-session caches for enumerations and shared subterms.
pub struct Evaluator {
    tag: SemiringTag,
    tables: HashMap<Obj, Arc<EnumTable>>,
    memo: HashMap<usize, (Diagram, Arc<SparseMat>)>,
}

impl Evaluator {
    pub fn new(tag: SemiringTag) -> Evaluator {
        Evaluator {
            tag,
            tables: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    pub fn table(&mut self, obj: &Obj) -> Arc<EnumTable> {
        if let Some(t) = self.tables.get(obj) {
            return t.clone();
        }
        let t = Arc::new(EnumTable::build(obj));
        self.tables.insert(obj.clone(), t.clone());
        t
    }

    /// Full-calculus semantics as a sparse matrix over the extended
    /// enumerations of cod (rows) and dom (columns).
    pub fn eval_sparse(&mut self, d: &Diagram) -> Result<Arc<SparseMat>, EvalError> {
        if let Some((_, m)) = self.memo.get(&d.addr()) {
            return Ok(m.clone());
        }
        let mat = match d.node() {
            Node::Seq(f, g) => {
                let mf = self.eval_sparse(f)?;
                let mg = self.eval_sparse(g)?;
                mg.product(&mf)?
            }
            Node::Par(f, g) => {
                let mf = self.eval_sparse(f)?;
                let mg = self.eval_sparse(g)?;
                self.par_compose(f, &mf, g, &mg, d)?
            }
            Node::Mirror(inner) => self.eval_sparse(inner)?.transpose(),
            _ => self.generator_matrix(d)?,
        };
        let mat = Arc::new(mat);
        self.memo.insert(d.addr(), (d.clone(), mat.clone()));
        Ok(mat)
    }

    fn par_compose(
        &mut self,
        f: &Diagram,
        mf: &SparseMat,
        g: &Diagram,
        mg: &SparseMat,
        whole: &Diagram,
    ) -> Result<SparseMat, EvalError> {
        let f_dom = self.table(f.dom());
        let f_cod = self.table(f.cod());
        let g_dom = self.table(g.dom());
        let g_cod = self.table(g.cod());
        let dom = self.table(whole.dom());
        let cod = self.table(whole.cod());
        let dom_split = f.dom().wires() as u16;
        let cod_split = f.cod().wires() as u16;

        let mut out = SparseMat::new(cod.dim_full(), dom.dim_full());
        for (&(rf, cf), vf) in &mf.entries {
            let row_f = f_cod.name_at(rf as usize);
            let col_f = f_dom.name_at(cf as usize);
            for (&(rg, cg), vg) in &mg.entries {
                let row = BasisName::merge_offset(&row_f, &g_cod.name_at(rg as usize), cod_split);
                let col = BasisName::merge_offset(&col_f, &g_dom.name_at(cg as usize), dom_split);
                let r = cod.index_of(&row).expect("merged row name");
                let c = dom.index_of(&col).expect("merged col name");
                out.insert_add(r, c, vf.mul(vg)?)?;
            }
        }
        Ok(out)
    }

    fn generator_matrix(&mut self, d: &Diagram) -> Result<SparseMat, EvalError> {
        let dom = self.table(d.dom());
        let cod = self.table(d.cod());
        let mut m = SparseMat::new(cod.dim_full(), dom.dim_full());
        let one = self.tag.one();
        let empty_r = cod.dim() as u32;
        let empty_c = dom.dim() as u32;
        // every generator fixes the empty name
        let mut set = |m: &mut SparseMat, r: u32, c: u32, v: Scalar| -> Result<(), SemiringError> {
            m.insert_add(r, c, v)
        };
        match d.node() {
            Node::Id(a) => {
                for l in 0..a.dim() as u32 {
                    let n = BasisName::singleton(0, l);
                    set(&mut m, cod.index_of(&n).unwrap(), dom.index_of(&n).unwrap(), one.clone())?;
                }
            }
            Node::Swap(a, b) => {
                for la in 0..a.dim() as u32 {
                    for lb in 0..b.dim() as u32 {
                        let mut from = BasisName::singleton(0, la);
                        from.push(1, lb);
                        let mut to = BasisName::singleton(0, lb);
                        to.push(1, la);
                        set(&mut m, cod.index_of(&to).unwrap(), dom.index_of(&from).unwrap(), one.clone())?;
                    }
                }
                for la in 0..a.dim() as u32 {
                    let from = BasisName::singleton(0, la);
                    let to = BasisName::singleton(1, la);
                    set(&mut m, cod.index_of(&to).unwrap(), dom.index_of(&from).unwrap(), one.clone())?;
                }
                for lb in 0..b.dim() as u32 {
                    let from = BasisName::singleton(1, lb);
                    let to = BasisName::singleton(0, lb);
                    set(&mut m, cod.index_of(&to).unwrap(), dom.index_of(&from).unwrap(), one.clone())?;
                }
            }
            Node::Ten(a, b) => {
                let db = b.dim() as u32;
                for la in 0..a.dim() as u32 {
                    for lb in 0..db {
                        let mut from = BasisName::singleton(0, la);
                        from.push(1, lb);
                        let to = BasisName::singleton(0, la * db + lb);
                        set(&mut m, cod.index_of(&to).unwrap(), dom.index_of(&from).unwrap(), one.clone())?;
                    }
                }
            }
            Node::PlusG(a, b) => {
                let da = a.dim() as u32;
                for la in 0..da {
                    let from = BasisName::singleton(0, la);
                    let to = BasisName::singleton(0, la);
                    set(&mut m, cod.index_of(&to).unwrap(), dom.index_of(&from).unwrap(), one.clone())?;
                }
                for lb in 0..b.dim() as u32 {
                    let from = BasisName::singleton(1, lb);
                    let to = BasisName::singleton(0, da + lb);
                    set(&mut m, cod.index_of(&to).unwrap(), dom.index_of(&from).unwrap(), one.clone())?;
                }
            }
            Node::Contr(a) => {
                for wire in 0..2u16 {
                    for l in 0..a.dim() as u32 {
                        let from = BasisName::singleton(wire, l);
                        let to = BasisName::singleton(0, l);
                        set(&mut m, cod.index_of(&to).unwrap(), dom.index_of(&from).unwrap(), one.clone())?;
                    }
                }
            }
            Node::Null(_) => {}
            Node::Unit => {
                let to = BasisName::singleton(0, 0);
                set(&mut m, cod.index_of(&to).unwrap(), empty_c, one.clone())?;
            }
            Node::Adapt(a, b) => {
                debug_assert_eq!(a.dim(), b.dim());
                for l in 0..a.dim() as u32 {
                    let n = BasisName::singleton(0, l);
                    set(&mut m, cod.index_of(&n).unwrap(), dom.index_of(&n).unwrap(), one.clone())?;
                }
            }
            Node::Scal(s, a) => {
                if s.tag() != self.tag {
                    return Err(EvalError::Semiring(SemiringError::TagMismatch(self.tag, s.tag())));
                }
                for l in 0..a.dim() as u32 {
                    let n = BasisName::singleton(0, l);
                    set(&mut m, cod.index_of(&n).unwrap(), dom.index_of(&n).unwrap(), s.clone())?;
                }
            }
            Node::Mirror(_) | Node::Seq(_, _) | Node::Par(_, _) => unreachable!(),
        }
        set(&mut m, empty_r, empty_c, one)?;
        Ok(m)
    }

    fn to_dense(
        &mut self,
        m: &SparseMat,
        dom: &Obj,
        cod: &Obj,
        strip: bool,
    ) -> Result<SemMatrix, EvalError> {
        let dom_t = self.table(dom);
        let cod_t = self.table(cod);
        let (rows, cols) = if strip {
            (cod_t.dim(), dom_t.dim())
        } else {
            (cod_t.dim_full(), dom_t.dim_full())
        };
        if rows.saturating_mul(cols) > DENSE_CAP {
            return Err(EvalError::TooLarge(rows, cols));
        }
        let mut out = SemMatrix::zeros(self.tag, rows, cols);
        out.row_names = (0..rows).map(|i| cod_t.name_at(i)).collect();
        out.col_names = (0..cols).map(|i| dom_t.name_at(i)).collect();
        for (&(r, c), v) in &m.entries {
            if strip && (r as usize >= rows || c as usize >= cols) {
                continue;
            }
            out.entries[r as usize * cols + c as usize] = v.clone();
        }
        Ok(out)
    }

    /// Full-calculus semantics: rows and columns run over the extended
    /// enumerations, with the empty name last.
    pub fn eval_full(&mut self, d: &Diagram) -> Result<SemMatrix, EvalError> {
        let m = self.eval_sparse(d)?;
        self.to_dense(&m, d.dom(), d.cod(), false)
    }

    /// Functional semantics: requires a Unit-free diagram, checks that the
    /// extra row and column carry exactly the unit vector, and strips them.
    pub fn eval(&mut self, d: &Diagram) -> Result<SemMatrix, EvalError> {
        if !d.is_functional() {
            return Err(EvalError::NotFunctional);
        }
        let m = self.eval_sparse(d)?;
        let dom_t = self.table(d.dom());
        let cod_t = self.table(d.cod());
        let er = cod_t.dim() as u32;
        let ec = dom_t.dim() as u32;
        for (&(r, c), v) in &m.entries {
            let on_border = r == er || c == ec;
            if on_border && !(r == er && c == ec && v.sr_eq(&self.tag.one())) {
                return Err(EvalError::FunctionalAssertion);
            }
        }
        if !m.get(er, ec, self.tag).sr_eq(&self.tag.one()) {
            return Err(EvalError::FunctionalAssertion);
        }
        self.to_dense(&m, d.dom(), d.cod(), true)
    }
}

/// One-shot full evaluation.
pub fn eval_full(d: &Diagram, tag: SemiringTag) -> Result<SemMatrix, EvalError> {
    Evaluator::new(tag).eval_full(d)
}

/// One-shot functional evaluation.
pub fn eval(d: &Diagram, tag: SemiringTag) -> Result<SemMatrix, EvalError> {
    Evaluator::new(tag).eval(d)
}

/// Generator semantics on its own, in full form.
pub fn gen_matrix_full(d: &Diagram, tag: SemiringTag) -> Result<SemMatrix, EvalError> {
    eval_full(d, tag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::par_all;
    use crate::semiring::Scalar;

    fn b() -> Color {
        Color::bit()
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rat(n, d)
    }

    fn tag() -> SemiringTag {
        SemiringTag::Rat
    }

    fn dense(rows: Vec<Vec<i64>>) -> SemMatrix {
        SemMatrix::from_rows(
            tag(),
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| q(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_full() {
        let m = eval_full(&Diagram::id(b()), tag()).unwrap();
        assert!(m.equals(&SemMatrix::identity(tag(), 3)));
    }

    #[test]
    fn plus_and_contraction_functional_blocks() {
        let m = eval(&Diagram::plus(Color::One, Color::One), tag()).unwrap();
        assert!(m.equals(&dense(vec![vec![0, 1, 0], vec![0, 0, 1]])));

        let m = eval(&Diagram::contr(Color::One), tag()).unwrap();
        assert!(m.equals(&dense(vec![vec![0, 1, 1]])));

        let m = eval(&Diagram::ten(Color::One, Color::One), tag()).unwrap();
        assert!(m.equals(&dense(vec![vec![1, 0, 0]])));
    }

    #[test]
    fn unit_column() {
        let m = eval_full(&Diagram::unit(), tag()).unwrap();
        assert!(m.equals(&dense(vec![vec![1], vec![1]])));
        assert_eq!(m.row_names[1], BasisName::empty());
    }

    #[test]
    fn mirrored_plus_then_ten_is_zero_on_functional_block() {
        let d = Diagram::seq(
            Diagram::plus(Color::One, Color::One).mirror(),
            Diagram::ten(Color::One, Color::One),
        )
        .unwrap();
        let m = eval(&d, tag()).unwrap();
        assert!(m.equals(&dense(vec![vec![0, 0]])));
    }

    #[test]
    fn null_matrices() {
        let m = eval(&Diagram::null(b()), tag()).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 0));
        let m = eval_full(&Diagram::null(b()), tag()).unwrap();
        assert!(m.equals(&dense(vec![vec![0], vec![0], vec![1]])));
    }

    #[test]
    fn scal_diag() {
        let m = eval(&Diagram::scal(q(3, 2), b()), tag()).unwrap();
        let expect = SemMatrix::from_rows(
            tag(),
            vec![vec![q(3, 2), q(0, 1)], vec![q(0, 1), q(3, 2)]],
        );
        assert!(m.equals(&expect));
    }

    #[test]
    fn two_units_in_parallel() {
        // the column over {pair, first alone, second alone, empty}; computed
        // by hand as the Kronecker square of the unit column
        let d = Diagram::par(Diagram::unit(), Diagram::unit());
        let m = eval_full(&d, tag()).unwrap();
        assert!(m.equals(&dense(vec![vec![1], vec![1], vec![1], vec![1]])));
    }

    #[test]
    fn functional_assertion_strips() {
        let d = par_all([Diagram::id(b()), Diagram::null(Color::One)]).unwrap();
        let m = eval(&d, tag()).unwrap();
        assert_eq!((m.rows(), m.cols()), (5, 2));
    }

    #[test]
    fn eval_rejects_unit() {
        assert!(matches!(eval(&Diagram::unit(), tag()), Err(EvalError::NotFunctional)));
    }

    #[test]
    fn mirror_is_transpose() {
        let d = Diagram::plus(b(), Color::One);
        let m = eval_full(&d, tag()).unwrap();
        let mt = eval_full(&d.mirror(), tag()).unwrap();
        assert!(mt.equals(&m.transpose()));
    }

    #[test]
    fn mat_ops() {
        let a = SemMatrix::from_rows(SemiringTag::Bool, vec![vec![Scalar::Bool(true), Scalar::Bool(true)]]);
        let v = SemMatrix::from_rows(
            SemiringTag::Bool,
            vec![vec![Scalar::Bool(true)], vec![Scalar::Bool(false)]],
        );
        let p = a.product(&v).unwrap();
        assert!(p.equals(&SemMatrix::from_rows(SemiringTag::Bool, vec![vec![Scalar::Bool(true)]])));

        let d1 = dense(vec![vec![2, 0], vec![0, 3]]);
        let d2 = dense(vec![vec![5, 0], vec![0, 7]]);
        let k = d1.kron(&d2).unwrap();
        assert!(k.equals(&dense(vec![
            vec![10, 0, 0, 0],
            vec![0, 14, 0, 0],
            vec![0, 0, 15, 0],
            vec![0, 0, 0, 21],
        ])));

        let t = dense(vec![vec![1, 2], vec![3, 4]]);
        assert!(t.transpose().transpose().equals(&t));
    }

    #[test]
    fn json_round_trip() {
        let m = dense(vec![vec![1, 2], vec![3, 4]]);
        let j = m.to_json();
        let back = SemMatrix::from_json(&j).unwrap();
        assert!(m.equals(&back));
    }
}
