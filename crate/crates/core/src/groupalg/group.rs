use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlinalg::{smith_normal_form, IntMatrix};

/// Largest group order the engine accepts.
pub const MAX_GROUP_ORDER: usize = 128;

/// How a group was built; drives the choice of resolution.
#[derive(Clone, Debug)]
pub enum Structure {
    /// `Z/n`, element `k` is `g^k`.
    Cyclic(usize),
    /// `A × B`, element `(a, b)` has index `a·|B| + b`.
    Product(Arc<FiniteGroup>, Arc<FiniteGroup>),
    /// Quaternion group with elements `1, i, j, k, −1, −i, −j, −k` in that order.
    Quaternion,
    /// Anything given by an explicit table.
    Table,
}

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    structure: Structure,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a table (Latin square, associativity, identity) and builds the group.
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_table_with(name.into(), rows, Structure::Table)
    }

    fn from_table_with(name: String, rows: Vec<Vec<usize>>, structure: Structure) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::ResourceCap(format!(
                "group order {n} exceeds the cap {MAX_GROUP_ORDER}"
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            let set: BTreeSet<usize> = row.iter().copied().collect();
            if set.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidTable(format!("row {i} is not a permutation")));
            }
            table.extend_from_slice(row);
        }
        for j in 0..n {
            let set: BTreeSet<usize> = (0..n).map(|i| table[i * n + j]).collect();
            if set.len() != n {
                return Err(Error::InvalidTable(format!(
                    "column {j} is not a permutation"
                )));
            }
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul(a, b) == identity)
                    .expect("latin square")
            })
            .collect();
        Ok(FiniteGroup {
            name,
            order: n,
            table,
            identity,
            inverses,
            structure,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("cyclic group of order 0".into()));
        }
        let rows = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table_with(format!("cyclic:{n}"), rows, Structure::Cyclic(n))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }

    pub fn product(a: Arc<FiniteGroup>, b: Arc<FiniteGroup>) -> Result<Self> {
        let (na, nb) = (a.order, b.order);
        if na * nb > MAX_GROUP_ORDER {
            return Err(Error::ResourceCap(format!(
                "group order {} exceeds the cap {MAX_GROUP_ORDER}",
                na * nb
            )));
        }
        let mut rows = Vec::with_capacity(na * nb);
        for x in 0..na * nb {
            let (xa, xb) = (x / nb, x % nb);
            rows.push(
                (0..na * nb)
                    .map(|y| {
                        let (ya, yb) = (y / nb, y % nb);
                        a.mul(xa, ya) * nb + b.mul(xb, yb)
                    })
                    .collect(),
            );
        }
        let name = format!("product:{},{}", a.name, b.name);
        Self::from_table_with(name, rows, Structure::Product(a, b))
    }

    /// Q8 = {±1, ±i, ±j, ±k}, indexed `1, i, j, k, −1, −i, −j, −k`.
    pub fn quaternion() -> Self {
        // unit products on the letters 1,i,j,k as (sign, letter)
        const UNIT: [[(i8, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let split = |x: usize| (if x < 4 { 1i8 } else { -1 }, x % 4);
        let rows = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (sa, la) = split(a);
                        let (sb, lb) = split(b);
                        let (s, l) = UNIT[la][lb];
                        if sa * sb * s == 1 {
                            l
                        } else {
                            l + 4
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_table_with("q8".into(), rows, Structure::Quaternion).expect("quaternion table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        if elements.is_empty() || elements.iter().any(|&x| x >= self.order) {
            return false;
        }
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| {
                set.contains(&self.inv(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b)))
            })
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let comms: BTreeSet<usize> = (0..self.order)
            .flat_map(|a| (0..self.order).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            .collect();
        self.generated(&comms.into_iter().collect::<Vec<_>>())
    }

    /// One representative per left coset `gH`, the smallest index in each,
    /// listed in increasing order.
    pub fn coset_reps(&self, h: &[usize]) -> Result<Vec<usize>> {
        if !self.is_subgroup(h) {
            return Err(Error::NotSubgroup(format!("{h:?} in {}", self.name)));
        }
        let mut seen = vec![false; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &x in h {
                seen[self.mul(g, x)] = true;
            }
        }
        Ok(reps)
    }

    /// Invariant factors of `G/[G,G]` (divisibility order, all > 1) and the
    /// projection sending each element to its coordinates.
    pub fn abelianization(&self) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
        let comm = self.commutator_subgroup();
        let reps = self.coset_reps(&comm).expect("commutator subgroup");
        let q = reps.len();
        // class of each element in the quotient
        let mut class = vec![0usize; self.order];
        for (ci, &r) in reps.iter().enumerate() {
            for &c in &comm {
                class[self.mul(r, c)] = ci;
            }
        }
        let qmul = |a: usize, b: usize| class[self.mul(reps[a], reps[b])];
        // monoid generating set of the quotient, chosen greedily
        let mut gens: Vec<usize> = Vec::new();
        let mut span = BTreeSet::from([class[self.identity]]);
        for x in 0..q {
            if span.contains(&x) {
                continue;
            }
            gens.push(x);
            let mut frontier: Vec<usize> = span.iter().copied().collect();
            while let Some(a) = frontier.pop() {
                for &g in &gens {
                    let y = qmul(a, g);
                    if span.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        // columns are relations e_{a s} − e_a − e_s, plus e_1
        let mut rel_cols = vec![];
        let one = class[self.identity];
        let mut unit = vec![BigInt::from(0); q];
        unit[one] += 1;
        rel_cols.push(unit);
        for a in 0..q {
            for &s in &gens {
                let mut col = vec![BigInt::from(0); q];
                col[qmul(a, s)] += 1;
                col[a] -= 1;
                col[s] -= 1;
                rel_cols.push(col);
            }
        }
        let rel = IntMatrix::from_columns(q, &rel_cols);
        let snf = smith_normal_form(&rel);
        let mut kept = Vec::new();
        let mut factors = Vec::new();
        for i in 0..q {
            let d = snf.diag(i);
            if d != BigInt::from(1) {
                kept.push(i);
                factors.push(d);
            }
        }
        let proj = (0..self.order)
            .map(|g| {
                let c = class[g];
                kept.iter()
                    .zip(&factors)
                    .map(|(&i, d)| {
                        let x = snf.u.get(i, c).clone();
                        num_integer::Integer::mod_floor(&x, d)
                    })
                    .collect()
            })
            .collect();
        (factors, proj)
    }
}

/// A subgroup given by an explicit element list, with its own multiplication
/// table and the embedding into the ambient group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: Arc<FiniteGroup>,
    pub group: Arc<FiniteGroup>,
    /// `embedding[i]` is the ambient index of the subgroup's element `i`.
    pub embedding: Vec<usize>,
}

impl Subgroup {
    /// Keeps the given element order; the subgroup's element `i` is `elements[i]`.
    pub fn new(ambient: Arc<FiniteGroup>, elements: &[usize]) -> Result<Self> {
        if !ambient.is_subgroup(elements) {
            return Err(Error::NotSubgroup(format!(
                "{elements:?} in {}",
                ambient.name()
            )));
        }
        let dedup: BTreeSet<usize> = elements.iter().copied().collect();
        if dedup.len() != elements.len() {
            return Err(Error::NotSubgroup("repeated elements".into()));
        }
        let pos = |x: usize| elements.iter().position(|&e| e == x).expect("closed");
        let rows = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos(ambient.mul(a, b))).collect())
            .collect();
        let name = format!("subgroup of {} of order {}", ambient.name(), elements.len());
        let group = Arc::new(FiniteGroup::from_table(name, rows)?);
        Ok(Subgroup {
            ambient,
            group,
            embedding: elements.to_vec(),
        })
    }

    pub fn index(&self) -> usize {
        self.ambient.order() / self.group.order()
    }

    pub fn elements(&self) -> &[usize] {
        &self.embedding
    }
}

/// A group homomorphism by its values on elements.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(Error::InvalidHom(
                "map has the wrong length or range".into(),
            ));
        }
        if map[source.identity()] != target.identity() {
            return Err(Error::InvalidHom("identity not preserved".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidHom(format!(
                        "not multiplicative on ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let map = (0..g.order()).collect();
        GroupHom {
            source: g.clone(),
            target: g,
            map,
        }
    }

    /// `Z/n → Z/m`, `1 ↦ 1`; requires `m | n`.
    pub fn cyclic_projection(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Result<Self> {
        let (n, m) = (source.order(), target.order());
        match (source.structure(), target.structure()) {
            (Structure::Cyclic(_), Structure::Cyclic(_)) if n % m == 0 => {
                Self::new(source, target, (0..n).map(|k| k % m).collect())
            }
            _ => Err(Error::InvalidHom(format!(
                "no canonical projection {} → {}",
                source.name(),
                target.name()
            ))),
        }
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn is_surjective(&self) -> bool {
        let img: BTreeSet<usize> = self.map.iter().copied().collect();
        img.len() == self.target.order()
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order())
            .filter(|&g| self.map[g] == self.target.identity())
            .collect()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if *first.target != *self.source {
            return Err(Error::InvalidHom("homomorphisms do not compose".into()));
        }
        let map = first.map.iter().map(|&x| self.map[x]).collect();
        Ok(GroupHom {
            source: first.source.clone(),
            target: self.target.clone(),
            map,
        })
    }
}
