use std::fmt;

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::groups::{FiniteGroup, ORDER_CAP};

/// A finite abelian group ∏ Z/n_i, remembered together with the prime used
/// for its Chow ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    p: Prime,
    orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(p: Prime, orders: Vec<u64>) -> Result<Self> {
        if let Some(i) = orders.iter().position(|&n| n == 0) {
            return Err(Error::validation(format!("abelian[{i}]"), "cyclic order must be positive"));
        }
        let mut total: u64 = 1;
        for &n in &orders {
            total = total.saturating_mul(n);
            if total > ORDER_CAP as u64 {
                return Err(Error::OrderCap { cap: ORDER_CAP });
            }
        }
        Ok(AbelianGroup { p, orders })
    }

    /// (Z/p)^r
    pub fn elementary(p: Prime, r: usize) -> Self {
        AbelianGroup {
            p,
            orders: vec![p.value() as u64; r],
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Number of cyclic factors of order divisible by p.
    pub fn p_rank(&self) -> usize {
        let p = self.p.value() as u64;
        self.orders.iter().filter(|&&n| n % p == 0).count()
    }

    /// Element index of a coordinate vector (first coordinate varies slowest).
    pub fn index_of(&self, coords: &[u64]) -> usize {
        let mut i = 0u64;
        for (&c, &n) in coords.iter().zip(&self.orders) {
            i = i * n + c % n;
        }
        i as usize
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = index as u64 % n;
            index /= n as usize;
        }
        out
    }

    pub fn to_finite_group(&self) -> FiniteGroup {
        let n = self.order() as usize;
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let a = self.coords_of(i);
                (0..n)
                    .map(|j| {
                        let b = self.coords_of(j);
                        let s: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                        self.index_of(&s)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&rows).expect("abelian tables are groups")
    }

    /// Whether `images` (one coordinate vector in `self` per generator of
    /// `h`) defines an injective homomorphism h -> self.
    pub fn is_injective(&self, h: &AbelianGroup, images: &[Vec<u64>]) -> bool {
        if images.len() != h.orders.len() || images.iter().any(|v| v.len() != self.orders.len()) {
            return false;
        }
        for (l, &m) in h.orders.iter().enumerate() {
            for (j, &n) in self.orders.iter().enumerate() {
                if !(m as u128 * images[l][j] as u128).is_multiple_of(n as u128) {
                    return false;
                }
            }
        }
        (1..h.order() as usize).all(|x| {
            let c = h.coords_of(x);
            self.orders.iter().enumerate().any(|(j, &n)| {
                let s: u128 = c.iter().zip(images).map(|(&cl, v)| cl as u128 * v[j] as u128).sum();
                !s.is_multiple_of(n as u128)
            })
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z/{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}
