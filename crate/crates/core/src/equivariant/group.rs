use std::fmt;

use crate::error::{Error, Result};

/// How a group was produced; presets carry extra structure used to build
/// their standard representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic(usize),
    Symmetric(usize),
    Klein4,
    Table,
}

/// Finite group on elements `0..n` with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    kind: GroupKind,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    /// For symmetric groups, the permutation each element stands for.
    perms: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Validates identity, associativity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        Self::build(GroupKind::Table, table, None)
    }

    fn build(kind: GroupKind, table: Vec<Vec<usize>>, perms: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} in row {a} is out of range")));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::InvalidGroup(format!("0 is not an identity for {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverse.push(b),
                None => return Err(Error::InvalidGroup(format!("{a} has no inverse"))),
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| table[table[g][a]][inverse[g]]).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        Ok(FiniteGroup {
            kind,
            table,
            inverse,
            classes,
            class_of,
            perms,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::build(GroupKind::Cyclic(n), table, None)
    }

    /// `S_n` for `1 ≤ n ≤ 5`, elements in lexicographic order of the
    /// permutations (identity first); the product `a*b` applies `b` first.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidGroup(format!("symmetric group on {n} letters is not supported")));
        }
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&(0..n).map(|i| a[b[i]]).collect()))
                    .collect()
            })
            .collect();
        Self::build(GroupKind::Symmetric(n), table, Some(perms))
    }

    pub fn symmetric3() -> Self {
        Self::symmetric(3).expect("S3")
    }

    /// `C₂ × C₂` with `(a, b) ↦ 2a + b`.
    pub fn klein4() -> Self {
        let table = (0..4).map(|x: usize| (0..4).map(|y: usize| x ^ y).collect()).collect();
        Self::build(GroupKind::Klein4, table, None).expect("Klein four-group")
    }

    /// Named preset: `cyclic n`, `symmetric n` (or `symmetric3`),
    /// `klein4`. Also accepts `C2`, `C3`, `S3`, `V4`.
    pub fn preset(name: &str) -> Result<Self> {
        let words: Vec<&str> = name.split_whitespace().collect();
        match words.as_slice() {
            ["klein4"] | ["V4"] | ["C2xC2"] => Ok(Self::klein4()),
            ["symmetric3"] => Ok(Self::symmetric3()),
            ["cyclic", n] => Self::cyclic(parse_order(n)?),
            ["symmetric", n] => Self::symmetric(parse_order(n)?),
            [w] if w.starts_with('C') => Self::cyclic(parse_order(&w[1..])?),
            [w] if w.starts_with('S') => Self::symmetric(parse_order(&w[1..])?),
            _ => Err(Error::InvalidGroup(format!("unknown preset {name:?}"))),
        }
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Conjugacy classes, ordered by smallest member; the identity class
    /// comes first.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.perms.as_deref()
    }

    /// Smallest generating set found greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for a in 1..self.order() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        let mut out = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    stack.push(y);
                }
            }
        }
        out
    }
}

fn parse_order(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidGroup(format!("bad group order {s:?}")))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Cyclic(n) => write!(f, "C{n}"),
            GroupKind::Symmetric(n) => write!(f, "S{n}"),
            GroupKind::Klein4 => write!(f, "C2xC2"),
            GroupKind::Table => write!(f, "table({})", self.order()),
        }
    }
}
