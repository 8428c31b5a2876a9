//! The embedded catalog of reference graphs: each entry carries an
//! intersection array, a concrete builder where one exists at desk scale,
//! and the primitivity attestation (cross-validated against the oracle).

use crate::oracle::{self, ConcreteGraph};
use crate::params::{cocktail_party_array, hamming_array, johnson_array, IntersectionArray};

#[derive(Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub array: IntersectionArray,
    pub builder: Option<fn() -> ConcreteGraph>,
    pub primitive: bool,
    pub note: &'static str,
}

fn arr(b: &[u64], c: &[u64]) -> IntersectionArray {
    IntersectionArray::new(b.to_vec(), c.to_vec()).expect("catalog array is structurally valid")
}

fn build_j52() -> ConcreteGraph {
    oracle::johnson(5, 2).expect("valid parameters")
}

fn build_j83() -> ConcreteGraph {
    oracle::johnson(8, 3).expect("valid parameters")
}

fn build_h23() -> ConcreteGraph {
    oracle::hamming(2, 3).expect("valid parameters")
}

fn build_h33() -> ConcreteGraph {
    oracle::hamming(3, 3).expect("valid parameters")
}

fn build_octagon() -> ConcreteGraph {
    oracle::cycle(8).expect("valid parameters")
}

fn build_cocktail3() -> ConcreteGraph {
    oracle::cocktail_party(3).expect("valid parameters")
}

fn build_k44mm() -> ConcreteGraph {
    oracle::complete_bipartite_minus_matching(4).expect("valid parameters")
}

/// All catalog entries.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            id: "petersen",
            array: arr(&[3, 2], &[1, 1]),
            builder: Some(oracle::petersen),
            primitive: true,
            note: "Kneser graph on the 2-subsets of a 5-set",
        },
        CatalogEntry {
            id: "j52",
            array: johnson_array(5, 2).unwrap(),
            builder: Some(build_j52),
            primitive: true,
            note: "Johnson graph J(5,2), the triangular graph T(5)",
        },
        CatalogEntry {
            id: "j83",
            array: johnson_array(8, 3).unwrap(),
            builder: Some(build_j83),
            primitive: true,
            note: "Johnson graph J(8,3) on 56 vertices",
        },
        CatalogEntry {
            id: "j303",
            array: johnson_array(30, 3).unwrap(),
            builder: None,
            primitive: true,
            note: "Johnson graph J(30,3), array only (n = 4060)",
        },
        CatalogEntry {
            id: "h23",
            array: hamming_array(2, 3).unwrap(),
            builder: Some(build_h23),
            primitive: true,
            note: "Hamming graph H(2,3), the 3x3 rook graph",
        },
        CatalogEntry {
            id: "h33",
            array: hamming_array(3, 3).unwrap(),
            builder: Some(build_h33),
            primitive: true,
            note: "Hamming graph H(3,3)",
        },
        CatalogEntry {
            id: "cube",
            array: arr(&[3, 2, 1], &[1, 2, 3]),
            builder: Some(oracle::cube),
            primitive: false,
            note: "3-cube H(3,2); bipartite and antipodal",
        },
        CatalogEntry {
            id: "heawood",
            array: arr(&[3, 2, 2], &[1, 1, 3]),
            builder: Some(oracle::heawood),
            primitive: false,
            note: "Heawood graph, the Fano plane incidence graph; bipartite",
        },
        CatalogEntry {
            id: "icosahedron",
            array: arr(&[5, 2, 1], &[1, 2, 5]),
            builder: Some(oracle::icosahedron),
            primitive: false,
            note: "icosahedron; antipodal 2-cover of K_6",
        },
        CatalogEntry {
            id: "octagon",
            array: arr(&[2, 1, 1, 1], &[1, 1, 1, 2]),
            builder: Some(build_octagon),
            primitive: false,
            note: "8-cycle; bipartite antipodal of diameter 4",
        },
        CatalogEntry {
            id: "cocktail3",
            array: cocktail_party_array(3).unwrap(),
            builder: Some(build_cocktail3),
            primitive: false,
            note: "cocktail-party graph K_{3x2}, the octahedron",
        },
        CatalogEntry {
            id: "k44_minus_matching",
            array: arr(&[3, 2, 1], &[1, 2, 3]),
            builder: Some(build_k44mm),
            primitive: false,
            note: "K_{4,4} minus a perfect matching (isomorphic to the 3-cube)",
        },
    ]
}

/// Looks up a catalog entry by id.
pub fn entry(id: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::feasibility_report;

    #[test]
    fn every_entry_is_feasible() {
        for e in catalog() {
            assert!(
                feasibility_report(&e.array).is_empty(),
                "catalog entry {} fails feasibility",
                e.id
            );
        }
    }

    #[test]
    fn primitivity_flags_match_oracle() {
        for e in catalog() {
            if let Some(build) = e.builder {
                assert_eq!(
                    oracle::is_primitive(&build()),
                    e.primitive,
                    "primitivity flag wrong for {}",
                    e.id
                );
            }
        }
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = catalog().iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), catalog().len());
    }
}
