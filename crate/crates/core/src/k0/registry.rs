use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::komplex::{MatObject, TermFunctor};
use crate::zmod::{FgModule, Ring};

pub type FunctorFn<O> = Arc<dyn Fn(&O) -> FgModule + Send + Sync>;

/// Named additive functors out of a heart. Registration audits additivity on
/// the registry's sample objects; the registry is append-only.
pub struct FunctorRegistry<O> {
    functors: BTreeMap<String, FunctorFn<O>>,
    samples: Vec<O>,
    sum: fn(&O, &O) -> O,
}

impl<O> fmt::Debug for FunctorRegistry<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctorRegistry").field("functors", &self.functors.keys().collect::<Vec<_>>()).finish()
    }
}

impl<O> FunctorRegistry<O> {
    pub fn new(samples: Vec<O>, sum: fn(&O, &O) -> O) -> Self {
        Self { functors: BTreeMap::new(), samples, sum }
    }

    /// Checks `F(A + B) = F(A) + F(B)` on every pair of samples before adding.
    pub fn register(&mut self, name: impl Into<String>, f: FunctorFn<O>) -> Result<()> {
        let name = name.into();
        for a in &self.samples {
            for b in &self.samples {
                if f(&(self.sum)(a, b)) != f(a).direct_sum(&f(b)) {
                    return Err(Error::NotAdditive(name));
                }
            }
        }
        self.functors.insert(name, f);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&FunctorFn<O>> {
        self.functors.get(name).ok_or_else(|| Error::UnregisteredFunctor(name.to_string()))
    }

    pub fn apply(&self, name: &str, obj: &O) -> Result<FgModule> {
        Ok(self.get(name)?(obj))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.functors.keys().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.functors.contains_key(name)
    }

    pub fn samples(&self) -> &[O] {
        &self.samples
    }
}

fn mat_sum(a: &MatObject, b: &MatObject) -> MatObject {
    MatObject { ring: a.ring, rank: a.rank + b.rank }
}

impl FunctorRegistry<MatObject> {
    /// Matrix category over `ring` with `id`, `rational` and `tensor-mod-n`
    /// for `2 <= n <= 12` registered.
    pub fn matrix(ring: Ring) -> Self {
        let samples = (0..=3).map(|rank| MatObject { ring, rank }).collect();
        let mut reg = Self::new(samples, mat_sum);
        let standard = [TermFunctor::Identity, TermFunctor::Rational].into_iter().chain((2..=12).map(TermFunctor::TensorMod));
        for a in standard {
            reg.register_term(a).expect("termwise functors are additive");
        }
        reg
    }

    pub fn register_term(&mut self, a: TermFunctor) -> Result<()> {
        self.register(a.to_string(), Arc::new(move |o: &MatObject| a.apply_object(o.ring, o.rank)))
    }
}
