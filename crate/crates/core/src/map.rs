//! Maps between rational vector spaces.

use crate::value::Value;

/// A total map `Q^p -> Q^q`.
pub trait VectorMap {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn apply(&self, x: &Value) -> Value;
}

impl<M: VectorMap + ?Sized> VectorMap for &M {
    fn dim_in(&self) -> usize {
        (**self).dim_in()
    }

    fn dim_out(&self) -> usize {
        (**self).dim_out()
    }

    fn apply(&self, x: &Value) -> Value {
        (**self).apply(x)
    }
}

/// Wraps a closure as a [`VectorMap`].
pub struct FnMap<F> {
    dim_in: usize,
    dim_out: usize,
    f: F,
}

impl<F: Fn(&Value) -> Value> FnMap<F> {
    pub fn new(dim_in: usize, dim_out: usize, f: F) -> Self {
        FnMap { dim_in, dim_out, f }
    }
}

impl<F: Fn(&Value) -> Value> VectorMap for FnMap<F> {
    fn dim_in(&self) -> usize {
        self.dim_in
    }

    fn dim_out(&self) -> usize {
        self.dim_out
    }

    fn apply(&self, x: &Value) -> Value {
        (self.f)(x)
    }
}

/// `outer ∘ inner`.
pub struct Compose<A, B> {
    pub outer: A,
    pub inner: B,
}

impl<A: VectorMap, B: VectorMap> Compose<A, B> {
    pub fn new(outer: A, inner: B) -> Self {
        assert_eq!(
            outer.dim_in(),
            inner.dim_out(),
            "composition dimension mismatch"
        );
        Compose { outer, inner }
    }
}

impl<A: VectorMap, B: VectorMap> VectorMap for Compose<A, B> {
    fn dim_in(&self) -> usize {
        self.inner.dim_in()
    }

    fn dim_out(&self) -> usize {
        self.outer.dim_out()
    }

    fn apply(&self, x: &Value) -> Value {
        self.outer.apply(&self.inner.apply(x))
    }
}
