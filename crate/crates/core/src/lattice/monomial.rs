use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One site block `x_i^a y_i^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    pub site: i32,
    pub a: i32,
    pub b: i32,
}

/// Normal-ordered Laurent monomial: sites ascending, `x` before `y` per site.
/// Never stores a `(0,0)` block.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticeMonomial {
    blocks: Vec<Block>,
}

impl LatticeMonomial {
    pub fn one() -> Self {
        LatticeMonomial { blocks: Vec::new() }
    }

    /// Builds from arbitrary blocks; merges equal sites and drops trivial ones.
    /// The blocks are read as already commuting exponents, not as a word.
    pub fn from_blocks<I: IntoIterator<Item = (i32, i32, i32)>>(it: I) -> Self {
        let mut v: Vec<Block> = it.into_iter().map(|(site, a, b)| Block { site, a, b }).collect();
        v.sort_by_key(|b| b.site);
        let mut out: Vec<Block> = Vec::with_capacity(v.len());
        for blk in v {
            match out.last_mut() {
                Some(last) if last.site == blk.site => {
                    last.a += blk.a;
                    last.b += blk.b;
                }
                _ => out.push(blk),
            }
        }
        out.retain(|b| b.a != 0 || b.b != 0);
        LatticeMonomial { blocks: out }
    }

    pub fn x(site: i32, k: i32) -> Self {
        Self::from_blocks([(site, k, 0)])
    }

    pub fn y(site: i32, k: i32) -> Self {
        Self::from_blocks([(site, 0, k)])
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_one(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn min_site(&self) -> Option<i32> {
        self.blocks.first().map(|b| b.site)
    }

    pub fn max_site(&self) -> Option<i32> {
        self.blocks.last().map(|b| b.site)
    }

    pub fn exponents_at(&self, site: i32) -> (i32, i32) {
        self.blocks
            .binary_search_by_key(&site, |b| b.site)
            .map(|k| (self.blocks[k].a, self.blocks[k].b))
            .unwrap_or((0, 0))
    }

    pub fn degree(&self) -> i64 {
        self.blocks.iter().map(|b| (b.a - b.b) as i64).sum()
    }

    pub fn principal_degree(&self) -> i64 {
        self.blocks.iter().map(|b| (b.a + b.b) as i64).sum()
    }

    /// Normal-ordered product `self * other = q^e * m`; returns `(m, e)`.
    pub fn mul(&self, other: &LatticeMonomial) -> (LatticeMonomial, i32) {
        let mut e: i32 = 0;
        // Blocks of `other` at lower sites pass to the left of `self`'s higher blocks.
        // Walk `other` ascending while accumulating the weight of `self` above it.
        let total_self: i32 = self.blocks.iter().map(|b| b.a - b.b).sum();
        let mut self_upto = 0i32; // sum over self blocks with site <= current
        let mut k = 0usize;
        for ob in &other.blocks {
            while k < self.blocks.len() && self.blocks[k].site <= ob.site {
                let sb = &self.blocks[k];
                if sb.site == ob.site {
                    e += sb.b * ob.a;
                }
                self_upto += sb.a - sb.b;
                k += 1;
            }
            let above = total_self - self_upto;
            e -= above * (ob.a - ob.b);
        }

        let mut blocks = Vec::with_capacity(self.blocks.len() + other.blocks.len());
        let (mut i, mut j) = (0, 0);
        let (s, o) = (&self.blocks, &other.blocks);
        while i < s.len() || j < o.len() {
            if j >= o.len() || (i < s.len() && s[i].site < o[j].site) {
                blocks.push(s[i]);
                i += 1;
            } else if i >= s.len() || o[j].site < s[i].site {
                blocks.push(o[j]);
                j += 1;
            } else {
                let blk = Block { site: s[i].site, a: s[i].a + o[j].a, b: s[i].b + o[j].b };
                if blk.a != 0 || blk.b != 0 {
                    blocks.push(blk);
                }
                i += 1;
                j += 1;
            }
        }
        (LatticeMonomial { blocks }, e)
    }

    /// The monomial with all exponents negated (not yet the inverse; see `inverse`).
    pub fn negated(&self) -> LatticeMonomial {
        LatticeMonomial { blocks: self.blocks.iter().map(|b| Block { site: b.site, a: -b.a, b: -b.b }).collect() }
    }

    /// `self^-1 = q^e * m`; returns `(m, e)`.
    pub fn inverse(&self) -> (LatticeMonomial, i32) {
        let neg = self.negated();
        let (_, e) = self.mul(&neg);
        (neg, -e)
    }

    pub fn translate(&self, k: i32) -> LatticeMonomial {
        LatticeMonomial { blocks: self.blocks.iter().map(|b| Block { site: b.site + k, ..*b }).collect() }
    }

    /// `x_i -> y_i`, `y_i -> x_{i+1}`; the image word is already normal.
    pub fn half_translate(&self) -> LatticeMonomial {
        Self::from_blocks(self.blocks.iter().flat_map(|b| [(b.site, 0, b.a), (b.site + 1, b.b, 0)]))
    }

    /// Anti-automorphism `x_i -> y_{1-i}`, `y_i -> x_{1-i}`; the reversed image
    /// word is already normal.
    pub fn phi(&self) -> LatticeMonomial {
        Self::from_blocks(self.blocks.iter().map(|b| (1 - b.site, b.b, b.a)))
    }
}

impl fmt::Display for LatticeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "1");
        }
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}^{} y{}^{}", b.site, b.a, b.site, b.b)?;
        }
        Ok(())
    }
}

impl FromStr for LatticeMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let mut blocks = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || Error::Parse(format!("bad monomial factor '{}'", tok));
            let (head, exp) = tok.split_once('^').ok_or_else(bad)?;
            let mut chars = head.chars();
            let var = chars.next().ok_or_else(bad)?;
            let site: i32 = chars.as_str().parse().map_err(|_| bad())?;
            let exp: i32 = exp.parse().map_err(|_| bad())?;
            match var {
                'x' => blocks.push((site, exp, 0)),
                'y' => blocks.push((site, 0, exp)),
                _ => return Err(bad()),
            }
        }
        Ok(Self::from_blocks(blocks))
    }
}
