//! Document formats for posets and families.

use serde::{Deserialize, Serialize};

use super::{AbstractElement, DistinguishingFamily, MultSubsetModel, PrimePoset, PrimeSet, SpectrumError};

/// `{"primes": [...], "covers": [[lower, upper], ...]}`; the order is the
/// transitive closure of the covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub primes: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

impl PosetDocument {
    pub fn parse(text: &str) -> Result<Self, SpectrumError> {
        serde_json::from_str(text).map_err(|e| SpectrumError::Parse(e.to_string()))
    }

    pub fn to_poset(&self) -> Result<PrimePoset, SpectrumError> {
        PrimePoset::from_relations(self.primes.clone(), &self.covers)
    }

    pub fn from_poset(poset: &PrimePoset) -> Self {
        PosetDocument {
            primes: poset.names().to_vec(),
            covers: poset
                .covers()
                .into_iter()
                .map(|(p, q)| (poset.name(p).to_string(), poset.name(q).to_string()))
                .collect(),
        }
    }
}

/// Subsets, each a list of generators, each a sorted list of the primes
/// containing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FamilyDocument(pub Vec<Vec<Vec<String>>>);

impl FamilyDocument {
    pub fn from_family(poset: &PrimePoset, family: &DistinguishingFamily) -> Self {
        FamilyDocument(
            family
                .subsets
                .iter()
                .map(|s| s.generators.iter().map(|g| poset.names_of(&g.locus)).collect())
                .collect(),
        )
    }

    pub fn to_family(&self, poset: &PrimePoset) -> Result<DistinguishingFamily, SpectrumError> {
        let mut subsets = Vec::new();
        for (k, subset) in self.0.iter().enumerate() {
            let mut gens = Vec::new();
            for (g, locus) in subset.iter().enumerate() {
                let ids = locus.iter().map(|p| poset.id(p)).collect::<Result<Vec<_>, _>>()?;
                let set = PrimeSet::from_indices(poset.len(), ids);
                gens.push(AbstractElement::new(poset, format!("s{k}.{g}"), set)?);
            }
            subsets.push(MultSubsetModel::new(gens));
        }
        Ok(DistinguishingFamily {
            subsets,
            dimension: poset.dimension(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip() {
        let doc = PosetDocument::parse(
            r#"{"primes":["q","p1","p2","m"],"covers":[["q","p1"],["q","p2"],["p1","m"],["p2","m"]]}"#,
        )
        .unwrap();
        let p = doc.to_poset().unwrap();
        assert_eq!(p.dimension(), 2);
        let back = PosetDocument::from_poset(&p);
        assert_eq!(back.to_poset().unwrap(), p);
        assert!(PosetDocument::parse("{\"primes\": 3}").is_err());
    }

    #[test]
    fn family_round_trip() {
        let p = PosetDocument {
            primes: vec!["a".into(), "b".into()],
            covers: vec![("a".into(), "b".into())],
        }
        .to_poset()
        .unwrap();
        let doc = FamilyDocument(vec![vec![vec!["b".into()]]]);
        let fam = doc.to_family(&p).unwrap();
        assert_eq!(FamilyDocument::from_family(&p, &fam), doc);
        let bad = FamilyDocument(vec![vec![vec!["a".into()]]]);
        assert!(matches!(bad.to_family(&p), Err(SpectrumError::NotUpwardClosed(_))));
    }
}
