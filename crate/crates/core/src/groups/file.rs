use serde::{Deserialize, Serialize};

use crate::chow::{ring_from_schema, ChowRing, RingSchema};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::groups::{AbelianGroup, FiniteGroup, ORDER_CAP};

/// How a group was described.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Table(Vec<Vec<usize>>),
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
    Abelian(Vec<u64>),
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct GroupSchema {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prime: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    faithful_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    abelian: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ring: Option<RingSchema>,
}

/// A loaded group file. Besides the group itself a file may carry a default
/// prime, the degree of a faithful representation, and a Chow ring.
#[derive(Clone, Debug)]
pub struct GroupFile {
    pub name: Option<String>,
    pub spec: GroupSpec,
    pub group: FiniteGroup,
    pub prime: Option<Prime>,
    pub faithful_degree: Option<usize>,
    pub ring: Option<ChowRing>,
}

impl GroupFile {
    /// The abelian group behind an `abelian` descriptor.
    pub fn abelian(&self, p: Prime) -> Option<AbelianGroup> {
        match &self.spec {
            GroupSpec::Abelian(orders) => AbelianGroup::new(p, orders.clone()).ok(),
            _ => None,
        }
    }

    pub fn display_name(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        match &self.spec {
            GroupSpec::Abelian(o) => AbelianGroup::new(Prime::new(2).expect("2 is prime"), o.clone())
                .map(|a| a.to_string())
                .unwrap_or_default(),
            _ => format!("group of order {}", self.group.order()),
        }
    }
}

/// Parses and validates a group file.
pub fn load_group(text: &str) -> Result<GroupFile> {
    let s: GroupSchema = serde_json::from_str(text)?;
    let shapes = [s.table.is_some(), s.generators.is_some(), s.abelian.is_some()];
    if shapes.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::validation("$", "exactly one of 'table', 'generators', 'abelian' is required"));
    }
    let (spec, group) = if let Some(table) = s.table {
        if let Some(n) = s.order {
            if n != table.len() {
                return Err(Error::validation("$.order", format!("order {n} but the table has {} rows", table.len())));
            }
        }
        let g = FiniteGroup::from_table(&table)?;
        (GroupSpec::Table(table), g)
    } else if let Some(gens) = s.generators {
        let degree = s
            .degree
            .ok_or_else(|| Error::validation("$.degree", "required with 'generators'"))?;
        if degree > ORDER_CAP {
            return Err(Error::OrderCap { cap: ORDER_CAP });
        }
        let one_based = !gens.is_empty()
            && gens.iter().flatten().all(|&x| x >= 1)
            && gens.iter().flatten().any(|&x| x == degree);
        let gens: Vec<Vec<usize>> = if one_based {
            gens.iter().map(|g| g.iter().map(|x| x - 1).collect()).collect()
        } else {
            gens
        };
        let g = FiniteGroup::from_permutations(degree, &gens)?;
        if let Some(n) = s.order {
            if n != g.order() {
                return Err(Error::validation("$.order", format!("order {n} but the generators give {}", g.order())));
            }
        }
        (GroupSpec::Permutations { degree, generators: gens }, g)
    } else {
        let orders = s.abelian.expect("checked above");
        // the prime only matters for the Chow ring; any prime validates the orders
        let a = AbelianGroup::new(Prime::new(2).expect("2 is prime"), orders.clone())?;
        let g = a.to_finite_group();
        (GroupSpec::Abelian(orders), g)
    };
    let prime = s
        .prime
        .map(|q| Prime::new(q).map_err(|e| Error::validation("$.prime", e.to_string())))
        .transpose()?;
    let ring = s.ring.as_ref().map(ring_from_schema).transpose()?;
    if let (Some(r), Some(q)) = (&ring, prime) {
        if r.prime() != q {
            return Err(Error::validation("$.ring.prime", "does not match the file's prime"));
        }
    }
    Ok(GroupFile {
        name: s.name,
        spec,
        group,
        prime,
        faithful_degree: s.faithful_degree,
        ring,
    })
}

/// Reads a group file from disk.
pub fn load_group_path(path: &std::path::Path) -> Result<GroupFile> {
    load_group(&std::fs::read_to_string(path)?)
}
