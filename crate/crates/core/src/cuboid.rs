//! k-cuboids: families of vectors indexed by the discrete cube `{0,1}^k`.
//!
//! The discrete tangent functor is the conjugation `T_k(f) = Δ ∘ f_* ∘ Δ⁻¹`,
//! where `Δ` takes alternating down-set sums and `Δ⁻¹` takes plain down-set
//! sums. Components are stored densely, indexed by [`MultiIndex::as_index`].

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};
use crate::map::VectorMap;
use crate::value::Value;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cuboid {
    dim: usize,
    space: usize,
    components: Vec<Value>,
}

/// A base point together with `k` direction vectors; `⟨⟨x; u⟩⟩` once injected.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointedDirections {
    pub base: Value,
    pub vectors: Vec<Value>,
}

impl PointedDirections {
    pub fn new(base: Value, vectors: Vec<Value>) -> Result<Self> {
        for v in &vectors {
            if v.dim() != base.dim() {
                return Err(Error::DimensionMismatch {
                    expected: base.dim(),
                    found: v.dim(),
                });
            }
        }
        Ok(PointedDirections { base, vectors })
    }
}

impl Cuboid {
    pub fn new(dim: usize, components: Vec<Value>) -> Result<Self> {
        if components.len() != 1 << dim {
            return Err(Error::DimensionMismatch {
                expected: 1 << dim,
                found: components.len(),
            });
        }
        let space = components[0].dim();
        for c in &components {
            if c.dim() != space {
                return Err(Error::DimensionMismatch {
                    expected: space,
                    found: c.dim(),
                });
            }
        }
        Ok(Cuboid {
            dim,
            space,
            components,
        })
    }

    pub fn from_fn(dim: usize, space: usize, mut f: impl FnMut(MultiIndex) -> Value) -> Self {
        let components: Vec<Value> = MultiIndex::cube(dim).map(&mut f).collect();
        assert!(components.iter().all(|c| c.dim() == space));
        Cuboid {
            dim,
            space,
            components,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn space(&self) -> usize {
        self.space
    }

    pub fn get(&self, index: MultiIndex) -> &Value {
        assert_eq!(index.len(), self.dim, "cuboid index length");
        &self.components[index.as_index()]
    }

    pub fn components(&self) -> &[Value] {
        &self.components
    }

    /// The base point `u_0`.
    pub fn base(&self) -> &Value {
        &self.components[0]
    }

    pub fn checked_add(&self, other: &Cuboid) -> Result<Cuboid> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Cuboid) -> Result<Cuboid> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Cuboid, f: impl Fn(&Value, &Value) -> Value) -> Result<Cuboid> {
        self.check_same_shape(other)?;
        Ok(Cuboid {
            dim: self.dim,
            space: self.space,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Difference operator: component `α` becomes `Σ_{β≤α} (-1)^{|α|-|β|} u_β`.
    pub fn delta(&self) -> Cuboid {
        let mut c = self.components.clone();
        for bit in 0..self.dim {
            let step = 1usize << bit;
            for m in 0..c.len() {
                if m & step != 0 {
                    let (lo, hi) = c.split_at_mut(m);
                    hi[0].sub_assign(&lo[m ^ step]);
                }
            }
        }
        Cuboid {
            dim: self.dim,
            space: self.space,
            components: c,
        }
    }

    /// Sum operator: component `α` becomes `Σ_{β≤α} u_β`.
    pub fn delta_inv(&self) -> Cuboid {
        let mut c = self.components.clone();
        for bit in 0..self.dim {
            let step = 1usize << bit;
            for m in 0..c.len() {
                if m & step != 0 {
                    let (lo, hi) = c.split_at_mut(m);
                    hi[0].add_assign(&lo[m ^ step]);
                }
            }
        }
        Cuboid {
            dim: self.dim,
            space: self.space,
            components: c,
        }
    }

    /// `[ū, v̄]`: the (k+1)-cuboid with `w_{α⋄0} = u_α` and `w_{α⋄1} = v_α`.
    pub fn pair(&self, other: &Cuboid) -> Result<Cuboid> {
        self.check_same_shape(other)?;
        // With the new digit as the top bit, the first half is exactly ū.
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Ok(Cuboid {
            dim: self.dim + 1,
            space: self.space,
            components,
        })
    }

    /// Inverse of [`Cuboid::pair`]. Panics on a 0-cuboid.
    pub fn split(&self) -> (Cuboid, Cuboid) {
        assert!(self.dim >= 1, "cannot split a 0-cuboid");
        let half = self.components.len() / 2;
        let make = |c: &[Value]| Cuboid {
            dim: self.dim - 1,
            space: self.space,
            components: c.to_vec(),
        };
        (
            make(&self.components[..half]),
            make(&self.components[half..]),
        )
    }

    /// `⟨⟨x; u⟩⟩`: base `x`, first-order components `u_i`, zero elsewhere.
    pub fn inject(p: &PointedDirections) -> Cuboid {
        let k = p.vectors.len();
        let space = p.base.dim();
        Cuboid::from_fn(k, space, |alpha| match alpha.order() {
            0 => p.base.clone(),
            1 => p.vectors[alpha.least().unwrap()].clone(),
            _ => Value::zeros(space),
        })
    }

    /// `f_*`: applies `f` to every component.
    pub fn pointwise<F: VectorMap + ?Sized>(&self, f: &F) -> Result<Cuboid> {
        if f.dim_in() != self.space {
            return Err(Error::DimensionMismatch {
                expected: f.dim_in(),
                found: self.space,
            });
        }
        let components: Vec<Value> = self.components.iter().map(|c| f.apply(c)).collect();
        let space = components[0].dim();
        if let Some(bad) = components.iter().find(|c| c.dim() != space) {
            return Err(Error::DimensionMismatch {
                expected: space,
                found: bad.dim(),
            });
        }
        Ok(Cuboid {
            dim: self.dim,
            space,
            components,
        })
    }

    /// `T_k(f)(ū) = Δ f_* Δ⁻¹ ū`.
    pub fn discrete_tangent<F: VectorMap + ?Sized>(&self, f: &F) -> Result<Cuboid> {
        Ok(self.delta_inv().pointwise(f)?.delta())
    }

    fn check_same_shape(&self, other: &Cuboid) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: self.space,
                found: other.space,
            });
        }
        Ok(())
    }
}

impl Serialize for Cuboid {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Components<'a>(&'a Cuboid);
        impl Serialize for Components<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.components.len()))?;
                for (alpha, v) in MultiIndex::cube(self.0.dim).zip(&self.0.components) {
                    map.serialize_entry(&alpha.to_string(), v)?;
                }
                map.end()
            }
        }

        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("dim", &self.dim)?;
        map.serialize_entry("space", &self.space)?;
        map.serialize_entry("components", &Components(self))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Cuboid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;

        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            space: usize,
            components: BTreeMap<String, Value>,
        }

        let raw = Raw::deserialize(deserializer)?;
        let mut slots: Vec<Option<Value>> = vec![None; 1 << raw.dim];
        for (key, v) in raw.components {
            let alpha: MultiIndex = key.parse().map_err(D::Error::custom)?;
            if alpha.len() != raw.dim {
                return Err(D::Error::custom(format!(
                    "component key {key} has wrong length"
                )));
            }
            if v.dim() != raw.space {
                return Err(D::Error::custom(format!(
                    "component {key} has wrong space dimension"
                )));
            }
            slots[alpha.as_index()] = Some(v);
        }
        let components = slots
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| D::Error::custom(format!("missing component #{i}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Cuboid {
            dim: raw.dim,
            space: raw.space,
            components,
        })
    }
}
