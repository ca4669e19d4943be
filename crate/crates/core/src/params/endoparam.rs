use std::collections::BTreeMap;

use super::ParamsError;
use crate::endo::EndoClass;

/// A finite formal sum of endo-classes with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EndoParameter {
    terms: BTreeMap<EndoClass, u32>,
}

impl EndoParameter {
    /// Repeated classes are merged.
    pub fn make<I: IntoIterator<Item = (EndoClass, u32)>>(terms: I) -> Result<Self, ParamsError> {
        let mut map = BTreeMap::new();
        for (c, m) in terms {
            if m == 0 {
                return Err(ParamsError::ZeroMultiplicity(c.display_label()));
            }
            *map.entry(c).or_insert(0) += m;
        }
        Ok(EndoParameter { terms: map })
    }

    pub fn terms(&self) -> &BTreeMap<EndoClass, u32> {
        &self.terms
    }

    pub fn degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(c, &m)| m as u64 * c.degree as u64)
            .sum()
    }

    pub fn is_self_dual(&self) -> bool {
        self.terms.keys().all(|c| c.self_dual)
    }

    pub fn square(&self) -> Self {
        self.map_classes(EndoClass::square)
    }

    pub fn unsquare(&self) -> Self {
        self.map_classes(EndoClass::unsquare)
    }

    fn map_classes(&self, f: impl Fn(&EndoClass) -> EndoClass) -> Self {
        let mut map = BTreeMap::new();
        for (c, &m) in &self.terms {
            *map.entry(f(c)).or_insert(0) += m;
        }
        EndoParameter { terms: map }
    }

    /// `Σ m Θ² + Θ₀`, of degree `2N + 1`.
    pub fn iota_2n(&self) -> Result<Self, ParamsError> {
        if !self.is_self_dual() {
            return Err(ParamsError::NotSelfDual);
        }
        if self.degree() % 2 == 1 {
            return Err(ParamsError::OddDegree(self.degree()));
        }
        let mut sq = self.square();
        *sq.terms.entry(EndoClass::trivial()).or_insert(0) += 1;
        Ok(sq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::DualType;

    fn ram(l: &str) -> EndoClass {
        EndoClass::self_dual(l, 2, 1, DualType::RamifiedQuadratic)
    }

    #[test]
    fn degrees() {
        assert_eq!(EndoParameter::make([(ram("a"), 1)]).unwrap().degree(), 2);
        assert_eq!(EndoParameter::default().degree(), 0);
        let ep = EndoParameter::make([(ram("a"), 2), (EndoClass::trivial(), 1)]).unwrap();
        assert_eq!(ep.degree(), 5);
        assert!(EndoParameter::make([(ram("a"), 0)]).is_err());
    }

    #[test]
    fn iota_examples() {
        let ep = EndoParameter::make([(ram("a"), 1)]).unwrap();
        let i = ep.iota_2n().unwrap();
        assert_eq!(i.degree(), 3);
        assert_eq!(i.terms().get(&EndoClass::trivial()), Some(&1));
        assert_eq!(i.terms().get(&ram("a").square()), Some(&1));
        let empty = EndoParameter::default().iota_2n().unwrap();
        assert_eq!(empty.terms().len(), 1);
        assert_eq!(empty.degree(), 1);
        let odd = EndoParameter::make([(EndoClass::trivial(), 1)]).unwrap();
        assert_eq!(odd.iota_2n().unwrap_err(), ParamsError::OddDegree(1));
        let gl = EndoParameter::make([(EndoClass::plain("g", 2, 1), 1)]).unwrap();
        assert_eq!(gl.iota_2n().unwrap_err(), ParamsError::NotSelfDual);
    }

    #[test]
    fn square_round_trip() {
        let ep = EndoParameter::make([(ram("a"), 2), (EndoClass::trivial(), 2), (ram("b"), 1)]).unwrap();
        assert_eq!(ep.square().unsquare(), ep);
        assert_eq!(ep.square().degree(), ep.degree());
    }
}
