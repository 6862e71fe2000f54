//! Finite abelian groups `Z_{n1} x … x Z_{nr}` and their generalized dihedral
//! extensions `Dih(A, x)`.
//!
//! An element of `Dih(A, x)` is written `x^flip * a` and stored as a flip bit
//! plus the exponent vector of `a`. Multiplication uses the relation
//! `a * x = x * a^-1`:
//!
//! ```text
//! (f1, a1) * (f2, a2) = (f1 xor f2, (-1)^f2 * a1 + a2)
//! ```
//!
//! Plain abelian groups are the `flip = 0` slice with the same arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order [`FiniteGroup`] will construct by default.
pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

/// Orders of the cyclic factors of an abelian group, as given (not normalized).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianSpec {
    factors: Vec<usize>,
}

impl AbelianSpec {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Format("an abelian group needs at least one factor".into()));
        }
        if let Some(&bad) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::Format(format!("cyclic factor {bad} is below 2")));
        }
        Ok(AbelianSpec { factors })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        self.factors.iter().try_fold(1usize, |acc, &f| acc.checked_mul(f))
    }

    /// Every factor equals 2.
    pub fn is_elementary_abelian_2(&self) -> bool {
        self.factors.iter().all(|&f| f == 2)
    }

    /// The factor list of `A x C_2`.
    pub fn times_c2(&self) -> AbelianSpec {
        let mut factors = self.factors.clone();
        factors.push(2);
        AbelianSpec { factors }
    }

    fn joined(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|f| f.to_string()).collect();
        parts.join("x")
    }
}

/// `x^flip * a`, where `vector` holds the exponents of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub flip: bool,
    pub vector: Vec<usize>,
}

impl GroupElement {
    pub fn new(flip: bool, vector: Vec<usize>) -> Self {
        GroupElement { flip, vector }
    }

    /// Element of the abelian part.
    pub fn plain(vector: Vec<usize>) -> Self {
        GroupElement { flip: false, vector }
    }

    /// Element of the coset `xA`.
    pub fn flipped(vector: Vec<usize>) -> Self {
        GroupElement { flip: true, vector }
    }
}

/// A group `A` or `Dih(A, x)` with a canonical element enumeration.
///
/// Element indices run lexicographically over `(flip, vector)` with the first
/// coordinate most significant, so index 0 is the identity and, in the
/// dihedral case, indices `|A|..2|A|` are the coset `xA`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    abelian: AbelianSpec,
    dihedral: bool,
    abelian_order: usize,
    strides: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(abelian: AbelianSpec, dihedral: bool) -> Result<Self> {
        Self::with_max_order(abelian, dihedral, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(abelian: AbelianSpec, dihedral: bool, max_order: usize) -> Result<Self> {
        let abelian_order = abelian.order().ok_or(Error::ResourceLimit {
            what: "group order",
            limit: max_order,
            reached: usize::MAX,
        })?;
        let order = abelian_order.checked_mul(if dihedral { 2 } else { 1 });
        match order {
            Some(o) if o <= max_order => {}
            _ => {
                return Err(Error::ResourceLimit {
                    what: "group order",
                    limit: max_order,
                    reached: order.unwrap_or(usize::MAX),
                })
            }
        }
        let mut strides = vec![1; abelian.rank()];
        for i in (0..abelian.rank().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * abelian.factors[i + 1];
        }
        Ok(FiniteGroup {
            abelian,
            dihedral,
            abelian_order,
            strides,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(AbelianSpec::new(vec![n])?, false)
    }

    pub fn abelian(factors: &[usize]) -> Result<Self> {
        Self::new(AbelianSpec::new(factors.to_vec())?, false)
    }

    /// `Dih(A, x)` over `A = Z_{f1} x … x Z_{fr}`.
    pub fn gendih(factors: &[usize]) -> Result<Self> {
        Self::new(AbelianSpec::new(factors.to_vec())?, true)
    }

    pub fn abelian_part(&self) -> &AbelianSpec {
        &self.abelian
    }

    pub fn is_dihedral(&self) -> bool {
        self.dihedral
    }

    /// A single cyclic factor and no dihedral extension.
    pub fn is_cyclic_spec(&self) -> bool {
        !self.dihedral && self.abelian.rank() == 1
    }

    pub fn order(&self) -> usize {
        if self.dihedral {
            2 * self.abelian_order
        } else {
            self.abelian_order
        }
    }

    pub fn abelian_order(&self) -> usize {
        self.abelian_order
    }

    /// `Dih(A, x)` is abelian exactly when `A` is elementary abelian of exponent 2.
    pub fn is_abelian(&self) -> bool {
        !self.dihedral || self.abelian.is_elementary_abelian_2()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::plain(vec![0; self.abelian.rank()])
    }

    /// The involution `x`; `None` for a plain abelian group.
    pub fn x(&self) -> Option<GroupElement> {
        self.dihedral
            .then(|| GroupElement::flipped(vec![0; self.abelian.rank()]))
    }

    /// One generator per cyclic factor, followed by `x` when dihedral.
    pub fn standard_generators(&self) -> Vec<GroupElement> {
        let r = self.abelian.rank();
        let mut gens: Vec<GroupElement> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                GroupElement::plain(v)
            })
            .collect();
        gens.extend(self.x());
        gens
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        (!g.flip || self.dihedral)
            && g.vector.len() == self.abelian.rank()
            && g.vector.iter().zip(&self.abelian.factors).all(|(v, n)| v < n)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::ElementShape {
                element: format!("{g:?}"),
                group: self.to_string(),
            })
        }
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(self.index_unchecked(g))
    }

    fn index_unchecked(&self, g: &GroupElement) -> usize {
        let base: usize = g
            .vector
            .iter()
            .zip(&self.strides)
            .map(|(v, s)| v * s)
            .sum();
        if g.flip {
            base + self.abelian_order
        } else {
            base
        }
    }

    /// The element at canonical position `index`. Panics when out of range.
    pub fn element(&self, index: usize) -> GroupElement {
        assert!(index < self.order(), "element index {index} out of range");
        let flip = index >= self.abelian_order;
        let mut rest = index % self.abelian_order;
        let vector = self
            .strides
            .iter()
            .map(|s| {
                let v = rest / s;
                rest %= s;
                v
            })
            .collect();
        GroupElement { flip, vector }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// The elements of `A` (the `flip = 0` slice).
    pub fn abelian_elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.abelian_order).map(|i| self.element(i))
    }

    /// The elements of the coset `xA`, empty for a plain abelian group.
    pub fn coset_elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (self.abelian_order..self.order()).map(|i| self.element(i))
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul_unchecked(g, h))
    }

    fn mul_unchecked(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let vector = g
            .vector
            .iter()
            .zip(&h.vector)
            .zip(&self.abelian.factors)
            .map(|((&a, &b), &n)| {
                let a = if h.flip { (n - a) % n } else { a };
                (a + b) % n
            })
            .collect();
        GroupElement {
            flip: g.flip ^ h.flip,
            vector,
        }
    }

    /// `(0, a)^-1 = (0, -a)`; every `(1, a)` is an involution.
    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(self.inv_unchecked(g))
    }

    fn inv_unchecked(&self, g: &GroupElement) -> GroupElement {
        if g.flip {
            return g.clone();
        }
        let vector = g
            .vector
            .iter()
            .zip(&self.abelian.factors)
            .map(|(&v, &n)| (n - v) % n)
            .collect();
        GroupElement::plain(vector)
    }

    /// Least `m >= 1` with `g^m = e`.
    pub fn element_order(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        let id = self.identity();
        let mut acc = g.clone();
        let mut m = 1;
        while acc != id {
            acc = self.mul_unchecked(&acc, g);
            m += 1;
        }
        Ok(m)
    }

    /// Product of the elements at canonical positions `i` and `j`.
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.index_unchecked(&self.mul_unchecked(&self.element(i), &self.element(j)))
    }

    pub fn inv_index(&self, i: usize) -> usize {
        self.index_unchecked(&self.inv_unchecked(&self.element(i)))
    }

    /// Element token: optional `x:` prefix, then residues joined by `.`.
    pub fn token(&self, g: &GroupElement) -> String {
        let body: Vec<String> = g.vector.iter().map(|v| v.to_string()).collect();
        let body = body.join(".");
        if g.flip {
            format!("x:{body}")
        } else {
            body
        }
    }

    /// Parses one element token for this group.
    pub fn parse_token(&self, token: &str) -> Result<GroupElement> {
        self.parse_token_at(token, 0)
    }

    pub(crate) fn parse_token_at(&self, token: &str, offset: usize) -> Result<GroupElement> {
        let err = |position: usize, message: String| Error::Parse {
            input: token.to_string(),
            position: offset + position,
            message,
        };
        let (flip, body, start) = match token.strip_prefix("x:") {
            Some(rest) => (true, rest, 2),
            None => (false, token, 0),
        };
        if flip && !self.dihedral {
            return Err(err(0, format!("`x:` tokens need a dihedral group, not {self}")));
        }
        let mut vector = Vec::with_capacity(self.abelian.rank());
        let mut pos = start;
        for part in body.split('.') {
            let v: usize = part
                .parse()
                .map_err(|_| err(pos, format!("expected a residue, found {part:?}")))?;
            vector.push(v);
            pos += part.len() + 1;
        }
        if vector.len() != self.abelian.rank() {
            return Err(err(
                start,
                format!(
                    "expected {} residues for {self}, found {}",
                    self.abelian.rank(),
                    vector.len()
                ),
            ));
        }
        let g = GroupElement { flip, vector };
        if !self.contains(&g) {
            return Err(err(start, format!("residue out of range for {self}")));
        }
        Ok(g)
    }
}

impl fmt::Display for FiniteGroup {
    /// The group-spec string: `cyclic:n`, `abelian:…`, or `gendih:…`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dihedral {
            write!(f, "gendih:{}", self.abelian.joined())
        } else if self.abelian.rank() == 1 {
            write!(f, "cyclic:{}", self.abelian.factors[0])
        } else {
            write!(f, "abelian:{}", self.abelian.joined())
        }
    }
}

impl FromStr for FiniteGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        build_group(s)
    }
}

/// Parses a group spec:
/// `cyclic:<n>` | `abelian:<n1>x…x<nr>` | `dihedral:<k>` | `gendih:<n1>x…x<nr>`.
pub fn build_group(spec: &str) -> Result<FiniteGroup> {
    build_group_capped(spec, DEFAULT_MAX_ORDER)
}

pub fn build_group_capped(spec: &str, max_order: usize) -> Result<FiniteGroup> {
    let err = |position: usize, message: String| Error::Parse {
        input: spec.to_string(),
        position,
        message,
    };
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| err(0, "expected `<kind>:<factors>`".into()))?;
    let body_start = kind.len() + 1;
    let (dihedral, single) = match kind {
        "cyclic" => (false, true),
        "abelian" => (false, false),
        "dihedral" => (true, true),
        "gendih" => (true, false),
        _ => {
            return Err(err(
                0,
                format!("unknown group kind {kind:?}; expected cyclic, abelian, dihedral or gendih"),
            ))
        }
    };
    let mut factors = Vec::new();
    let mut pos = body_start;
    for part in body.split('x') {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(pos, format!("expected a base-10 integer, found {part:?}")));
        }
        let n: usize = part
            .parse()
            .map_err(|_| err(pos, format!("integer {part:?} is too large")))?;
        if n < 2 {
            return Err(err(pos, format!("factor {n} is below 2")));
        }
        factors.push(n);
        pos += part.len() + 1;
    }
    if single && factors.len() != 1 {
        return Err(err(body_start, format!("`{kind}` takes exactly one factor")));
    }
    FiniteGroup::with_max_order(AbelianSpec::new(factors)?, dihedral, max_order)
}

/// Invariant-factor lists `n1, n2, …` with `n_{i+1} | n_i` and product `n`.
pub fn invariant_factor_lists(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, bound: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in (2..=rest.min(bound)).rev() {
            if rest.is_multiple_of(d) && bound.is_multiple_of(d) {
                prefix.push(d);
                go(rest / d, d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Pairwise non-isomorphic constructible groups of order `n`: every abelian
/// group in invariant-factor form, then `Dih(A, x)` for every non-elementary
/// abelian `A` of order `n / 2`.
pub fn catalog(n: usize) -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = invariant_factor_lists(n)
        .into_iter()
        .filter_map(|f| FiniteGroup::abelian(&f).ok())
        .collect();
    if n.is_multiple_of(2) {
        out.extend(
            invariant_factor_lists(n / 2)
                .into_iter()
                .filter(|f| f.iter().any(|&x| x != 2))
                .filter_map(|f| FiniteGroup::gendih(&f).ok()),
        );
    }
    out
}
