//! Exhaustive enumeration of small frames, optionally one per isomorphism class.

use std::collections::{BTreeMap, BTreeSet};

use super::{all_tuples, Frame, Relation, WorldSet};
use crate::error::Error;
use crate::signature::{Connective, Signature};

#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Keep one frame per isomorphism class.
    pub dedup: bool,
    /// Only enumerate relations for these connectives.
    pub only: Option<BTreeSet<String>>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { dedup: true, only: None }
    }
}

impl EnumOptions {
    pub fn only<I: IntoIterator<Item = String>>(names: I) -> EnumOptions {
        EnumOptions {
            dedup: true,
            only: Some(names.into_iter().collect()),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn is_order(n: usize, up: &[WorldSet]) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ab = up[a] >> b & 1 == 1;
            let ba = up[b] >> a & 1 == 1;
            !(a != b && ab && ba) && (!ab || up[b] & !up[a] == 0)
        })
    })
}

fn order_code(n: usize, up: &[WorldSet], perm: &[usize]) -> u64 {
    let mut code = 0u64;
    for a in 0..n {
        for b in 0..n {
            if up[a] >> b & 1 == 1 {
                code |= 1 << (perm[a] * n + perm[b]);
            }
        }
    }
    code
}

/// Partial orders on `n` worlds as up-set masks; with `dedup`, one per
/// isomorphism class, labelled so that `a <= b` implies `a <= b` as integers.
pub fn posets(n: usize, dedup: bool) -> Vec<Vec<WorldSet>> {
    let pairs: Vec<(usize, usize)> = if dedup {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    } else {
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect()
    };
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let mut up: Vec<WorldSet> = (0..n).map(|w| 1 << w).collect();
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                up[a] |= 1 << b;
            }
        }
        if !is_order(n, &up) {
            continue;
        }
        if dedup {
            let canon = perms.iter().map(|p| order_code(n, &up, p)).min().unwrap();
            if !seen.insert(canon) {
                continue;
            }
        }
        out.push(up);
    }
    out
}

fn automorphisms(n: usize, up: &[WorldSet]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let base = order_code(n, up, &id);
    permutations(n)
        .into_iter()
        .filter(|p| *p != id && order_code(n, up, p) == base)
        .collect()
}

/// Closed relations of one connective on one poset, as masks over tuple indices.
struct RelationSpace {
    conn: Connective,
    k: usize,
    tuples: Vec<Vec<usize>>,
    sets: Vec<u64>,
}

fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().rev().fold(0, |acc, &x| acc * n + x)
}

fn closed_sets(fr: &Frame, c: &Connective) -> Result<RelationSpace, Error> {
    let k = c.arity + 1;
    let total = fr.n.pow(k as u32);
    if total > 64 {
        return Err(Error::BoundExceeded {
            what: "relation tuple count",
            found: total,
            bound: 64,
        });
    }
    let tuples: Vec<Vec<usize>> = all_tuples(fr.n, k).collect();
    let eta = c.relation_type();
    let mut pred = vec![0u64; total];
    for (s, ts) in tuples.iter().enumerate() {
        for (t, tt) in tuples.iter().enumerate() {
            if s != t && fr.forces(c.family, &eta, tt, ts) {
                pred[s] |= 1 << t;
            }
        }
    }
    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by_key(|&s| (pred[s].count_ones(), s));
    let mut sets = Vec::new();
    fn go(i: usize, chosen: u64, order: &[usize], pred: &[u64], out: &mut Vec<u64>) {
        if i == order.len() {
            out.push(chosen);
            return;
        }
        let s = order[i];
        if chosen & pred[s] != 0 {
            go(i + 1, chosen | 1 << s, order, pred, out);
        } else {
            go(i + 1, chosen, order, pred, out);
            go(i + 1, chosen | 1 << s, order, pred, out);
        }
    }
    go(0, 0, &order, &pred, &mut sets);
    sets.sort();
    Ok(RelationSpace {
        conn: c.clone(),
        k,
        tuples,
        sets,
    })
}

fn permute_mask(mask: u64, table: &[usize]) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << table[i];
        m &= m - 1;
    }
    out
}

/// Relation choices tried on a single poset before giving up.
pub const MAX_CANDIDATES: u128 = 1 << 24;

/// Visit every frame over `sig` with 1 to `max_worlds` worlds.
pub fn for_each_frame(sig: &Signature, max_worlds: usize, opts: &EnumOptions, mut f: impl FnMut(Frame)) -> Result<(), Error> {
    let cap = crate::max_worlds_cap();
    if max_worlds > cap {
        return Err(Error::BoundExceeded {
            what: "world count",
            found: max_worlds,
            bound: cap,
        });
    }
    if sig.is_bae() {
        return Err(Error::SignatureMismatch("frames are enumerated over DLE signatures".into()));
    }
    let conns: Vec<&Connective> = sig
        .connectives
        .iter()
        .filter(|c| opts.only.as_ref().map_or(true, |o| o.contains(&c.name)))
        .collect();
    for n in 1..=max_worlds {
        for up in posets(n, opts.dedup) {
            let base = Frame::from_masks(n, up.clone(), BTreeMap::new());
            let mut derived = BTreeMap::new();
            let mut spaces = Vec::new();
            for c in &conns {
                if c.is_order_derived() {
                    derived.insert(
                        c.name.clone(),
                        Relation {
                            family: c.family,
                            eta: c.relation_type(),
                            tuples: base.derived_relation(c.family),
                        },
                    );
                } else {
                    spaces.push(closed_sets(&base, c)?);
                }
            }
            let candidates = spaces.iter().fold(1u128, |acc, sp| acc.saturating_mul(sp.sets.len() as u128));
            if candidates > MAX_CANDIDATES {
                return Err(Error::BoundExceeded {
                    what: "frame candidates per poset",
                    found: candidates.min(usize::MAX as u128) as usize,
                    bound: MAX_CANDIDATES as usize,
                });
            }
            let autos = if opts.dedup { automorphisms(n, &up) } else { vec![] };
            // per automorphism, per space: tuple index permutation
            let tables: Vec<Vec<Vec<usize>>> = autos
                .iter()
                .map(|p| {
                    spaces
                        .iter()
                        .map(|sp| {
                            sp.tuples
                                .iter()
                                .map(|t| {
                                    let img: Vec<usize> = t.iter().map(|&x| p[x]).collect();
                                    tuple_index(n, &img)
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let mut pick = vec![0usize; spaces.len()];
            loop {
                let masks: Vec<u64> = pick.iter().zip(&spaces).map(|(&i, sp)| sp.sets[i]).collect();
                let minimal = tables.iter().all(|tab| {
                    let img: Vec<u64> = masks.iter().zip(tab).map(|(&m, t)| permute_mask(m, t)).collect();
                    img >= masks
                });
                if minimal {
                    let mut rels = derived.clone();
                    for (sp, &m) in spaces.iter().zip(&masks) {
                        let mut tuples: Vec<Vec<usize>> = (0..sp.tuples.len())
                            .filter(|&i| m >> i & 1 == 1)
                            .map(|i| sp.tuples[i].clone())
                            .collect();
                        tuples.sort();
                        debug_assert_eq!(tuples.first().map_or(sp.k, |t| t.len()), sp.k);
                        rels.insert(
                            sp.conn.name.clone(),
                            Relation {
                                family: sp.conn.family,
                                eta: sp.conn.relation_type(),
                                tuples,
                            },
                        );
                    }
                    f(Frame::from_masks(n, up.clone(), rels));
                }
                let mut i = 0;
                loop {
                    if i == spaces.len() {
                        break;
                    }
                    pick[i] += 1;
                    if pick[i] < spaces[i].sets.len() {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == spaces.len() {
                    break;
                }
            }
        }
    }
    Ok(())
}

pub fn enumerate_frames(sig: &Signature, max_worlds: usize, opts: &EnumOptions) -> Result<Vec<Frame>, Error> {
    let mut out = Vec::new();
    for_each_frame(sig, max_worlds, opts, |f| out.push(f))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| posets(n, true).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
        let labelled: Vec<usize> = (1..=4).map(|n| posets(n, false).len()).collect();
        assert_eq!(labelled, vec![1, 3, 19, 219]);
    }

    #[test]
    fn intuitionistic_frames_are_posets() {
        let sig = Signature::builtin("intuitionistic").unwrap();
        let one = enumerate_frames(&sig, 1, &EnumOptions::default()).unwrap();
        assert_eq!(one.len(), 1);
        let two = enumerate_frames(&sig, 2, &EnumOptions::default()).unwrap();
        assert_eq!(two.iter().filter(|f| f.n == 2).count(), 2);
        for f in &two {
            assert!(f.validate().is_ok());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let sig = Signature::builtin("intuitionistic").unwrap();
        assert!(matches!(
            enumerate_frames(&sig, 99, &EnumOptions::default()),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
