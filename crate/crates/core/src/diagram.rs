//! The typed diagram IR: generators, sequential/parallel composition, and
//! up-down mirroring.
//!
//! Terms are free; none of the categorical equalities are quotiented into the
//! structure. Equality of meaning is decided through the matrix semantics.
//! Boundaries are cached on every node so composition is checked eagerly.

use std::fmt;
use std::sync::Arc;

use crate::colors::{colors_equivalent, Color, Obj};
use crate::semiring::Scalar;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum DiagramError {
    #[error("sequential composition mismatch: left has codomain {0}, right has domain {1}")]
    BoundaryMismatch(Obj, Obj),
    #[error("adapter endpoints are not equivalent: {0} vs {1}")]
    AdapterMismatch(Color, Color),
    #[error("empty argument list: {0}")]
    EmptyArity(&'static str),
    #[error("spider boundary tensors are not equivalent: {0} vs {1}")]
    SpiderMismatch(Color, Color),
}

/// One node of a diagram term.
#[derive(Clone, PartialEq, Debug)]
pub enum Node {
    /// Identity wire.
    Id(Color),
    /// Crossing of two wires.
    Swap(Color, Color),
    /// Merge two wires into their pair type: [A, B] → [A ⊗ B].
    Ten(Color, Color),
    /// Merge two wires into their sum type: [A, B] → [A ⊕ B].
    PlusG(Color, Color),
    /// Codiagonal: [A, A] → [A].
    Contr(Color),
    /// The zero map out of nothing: [] → [A].
    Null(Color),
    /// Spontaneous production of a unit datum: [] → [1]. Not functional.
    Unit,
    /// Identity between equivalent colors: [A] → [A'].
    Adapt(Color, Color),
    /// Scalar weight on a wire: [A] → [A].
    Scal(Scalar, Color),
    /// Up-down mirror of a generator that is not self-mirrored.
    Mirror(Diagram),
    /// d then e (read top to bottom).
    Seq(Diagram, Diagram),
    /// d beside e.
    Par(Diagram, Diagram),
}

struct Inner {
    node: Node,
    dom: Obj,
    cod: Obj,
}

/// A typed diagram with cached boundaries. Cloning is cheap.
#[derive(Clone)]
pub struct Diagram(Arc<Inner>);

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.node() == other.node()
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({:?} : {} -> {})", self.node(), self.dom(), self.cod())
    }
}

fn mk(node: Node, dom: Obj, cod: Obj) -> Diagram {
    Diagram(Arc::new(Inner { node, dom, cod }))
}

impl Diagram {
    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn dom(&self) -> &Obj {
        &self.0.dom
    }

    pub fn cod(&self) -> &Obj {
        &self.0.cod
    }

    /// Stable address of the shared term, used for evaluation memoisation.
    pub(crate) fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn id(a: Color) -> Diagram {
        let o = Obj::single(a.clone());
        mk(Node::Id(a), o.clone(), o)
    }

    pub fn swap(a: Color, b: Color) -> Diagram {
        mk(
            Node::Swap(a.clone(), b.clone()),
            Obj(vec![a.clone(), b.clone()]),
            Obj(vec![b, a]),
        )
    }

    pub fn ten(a: Color, b: Color) -> Diagram {
        mk(
            Node::Ten(a.clone(), b.clone()),
            Obj(vec![a.clone(), b.clone()]),
            Obj::single(Color::times(a, b)),
        )
    }

    pub fn plus(a: Color, b: Color) -> Diagram {
        mk(
            Node::PlusG(a.clone(), b.clone()),
            Obj(vec![a.clone(), b.clone()]),
            Obj::single(Color::plus(a, b)),
        )
    }

    pub fn contr(a: Color) -> Diagram {
        mk(
            Node::Contr(a.clone()),
            Obj(vec![a.clone(), a.clone()]),
            Obj::single(a),
        )
    }

    pub fn null(a: Color) -> Diagram {
        mk(Node::Null(a.clone()), Obj::empty(), Obj::single(a))
    }

    pub fn unit() -> Diagram {
        mk(Node::Unit, Obj::empty(), Obj::single(Color::One))
    }

    pub fn adapt(a: Color, b: Color) -> Result<Diagram, DiagramError> {
        if !colors_equivalent(&a, &b) {
            return Err(DiagramError::AdapterMismatch(a, b));
        }
        Ok(mk(
            Node::Adapt(a.clone(), b.clone()),
            Obj::single(a),
            Obj::single(b),
        ))
    }

    pub fn scal(s: Scalar, a: Color) -> Diagram {
        let o = Obj::single(a.clone());
        mk(Node::Scal(s, a), o.clone(), o)
    }

    /// d then e; requires cod(d) = dom(e) as plain lists of colors.
    pub fn seq(d: Diagram, e: Diagram) -> Result<Diagram, DiagramError> {
        if d.cod() != e.dom() {
            return Err(DiagramError::BoundaryMismatch(d.cod().clone(), e.dom().clone()));
        }
        let dom = d.dom().clone();
        let cod = e.cod().clone();
        Ok(mk(Node::Seq(d, e), dom, cod))
    }

    pub fn par(d: Diagram, e: Diagram) -> Diagram {
        let dom = d.dom().concat(e.dom());
        let cod = d.cod().concat(e.cod());
        mk(Node::Par(d, e), dom, cod)
    }

    /// The up-down mirror. Distributes over composition, is an involution,
    /// and leaves Id/Swap/Adapt/Scal as generators of their own kind.
    pub fn mirror(&self) -> Diagram {
        match self.node() {
            Node::Id(a) => Diagram::id(a.clone()),
            Node::Swap(a, b) => Diagram::swap(b.clone(), a.clone()),
            Node::Adapt(a, b) => {
                Diagram::adapt(b.clone(), a.clone()).expect("mirrored adapter stays valid")
            }
            Node::Scal(s, a) => Diagram::scal(s.clone(), a.clone()),
            Node::Mirror(inner) => inner.clone(),
            Node::Seq(d, e) => {
                Diagram::seq(e.mirror(), d.mirror()).expect("mirrored boundaries stay compatible")
            }
            Node::Par(d, e) => Diagram::par(d.mirror(), e.mirror()),
            Node::Ten(_, _) | Node::PlusG(_, _) | Node::Contr(_) | Node::Null(_) | Node::Unit => {
                mk(
                    Node::Mirror(self.clone()),
                    self.cod().clone(),
                    self.dom().clone(),
                )
            }
        }
    }

    /// True when the term contains no Unit generator under any nesting.
    pub fn is_functional(&self) -> bool {
        match self.node() {
            Node::Unit => false,
            Node::Mirror(d) => d.is_functional(),
            Node::Seq(d, e) | Node::Par(d, e) => d.is_functional() && e.is_functional(),
            _ => true,
        }
    }

    /// Convenience: seq that panics on a boundary mismatch. Used by builders
    /// whose composition is correct by construction.
    pub(crate) fn then(self, e: Diagram) -> Diagram {
        match Diagram::seq(self, e) {
            Ok(d) => d,
            Err(err) => panic!("builder composed ill-typed diagrams: {err}"),
        }
    }
}

/// Parallel composite of a non-empty list of diagrams.
pub fn par_all(parts: impl IntoIterator<Item = Diagram>) -> Option<Diagram> {
    let mut it = parts.into_iter();
    let first = it.next()?;
    Some(it.fold(first, Diagram::par))
}

/// Sequential composite of a non-empty list of diagrams.
pub fn seq_all(parts: impl IntoIterator<Item = Diagram>) -> Result<Option<Diagram>, DiagramError> {
    let mut it = parts.into_iter();
    let Some(first) = it.next() else {
        return Ok(None);
    };
    let mut acc = first;
    for d in it {
        acc = Diagram::seq(acc, d)?;
    }
    Ok(Some(acc))
}

/// The empty diagram from the empty object to itself, represented as
/// "create a 0-wire, then discard it".
pub fn empty_diagram() -> Diagram {
    let n = Diagram::null(Color::Zero);
    let m = n.mirror();
    n.then(m)
}

/// Parallel identity on a whole object.
pub fn id_obj(obj: &Obj) -> Diagram {
    match par_all(obj.0.iter().cloned().map(Diagram::id)) {
        Some(d) => d,
        None => empty_diagram(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seq_types() {
        let a = Color::bit();
        let d = Diagram::seq(Diagram::id(a.clone()), Diagram::id(a.clone())).unwrap();
        assert_eq!(d.dom(), &Obj::single(a.clone()));
        assert_eq!(d.cod(), &Obj::single(a.clone()));

        // cod of ten is [A⊗B], dom of ~plus is [A⊕B]: mismatch
        let err = Diagram::seq(
            Diagram::ten(Color::One, Color::One),
            Diagram::plus(Color::One, Color::One).mirror(),
        )
        .unwrap_err();
        assert!(matches!(err, DiagramError::BoundaryMismatch(_, _)));

        // plus ; ~plus is the binary disjunction [A,B] → [A,B]
        let d = Diagram::seq(
            Diagram::plus(Color::One, Color::One),
            Diagram::plus(Color::One, Color::One).mirror(),
        )
        .unwrap();
        assert_eq!(d.dom(), &Obj(vec![Color::One, Color::One]));
        assert_eq!(d.cod(), &Obj(vec![Color::One, Color::One]));
    }

    #[test]
    fn mirror_involution() {
        let t = Diagram::ten(Color::bit(), Color::One);
        assert_eq!(t.mirror().mirror(), t);
        let s = Diagram::swap(Color::bit(), Color::One);
        assert_eq!(s.mirror(), Diagram::swap(Color::One, Color::bit()));
        let c = Diagram::par(t.clone(), s).mirror().mirror();
        assert_eq!(c, Diagram::par(t, Diagram::swap(Color::bit(), Color::One)));
    }

    #[test]
    fn mirror_swaps_boundaries() {
        let t = Diagram::ten(Color::bit(), Color::One);
        let m = t.mirror();
        assert_eq!(m.dom(), t.cod());
        assert_eq!(m.cod(), t.dom());
    }

    #[test]
    fn functional_flag() {
        assert!(Diagram::null(Color::bit()).is_functional());
        assert!(!Diagram::unit().is_functional());
        assert!(!Diagram::par(Diagram::id(Color::bit()), Diagram::unit().mirror()).is_functional());
    }

    #[test]
    fn adapter_needs_equivalence() {
        assert!(Diagram::adapt(Color::times(Color::One, Color::bit()), Color::bit()).is_ok());
        assert!(Diagram::adapt(Color::bit(), Color::One).is_err());
    }

    #[test]
    fn empty_diagram_boundaries() {
        let e = empty_diagram();
        assert_eq!(e.dom(), &Obj::empty());
        assert_eq!(e.cod(), &Obj::empty());
    }
}
