//! Brute-force references built only from multiplication tables and raw
//! action matrices, by enumerating every element of small spaces.

use std::collections::BTreeSet;

use smilelab::algebra::Algebra;
use smilelab::modrep::{ModuleRep, Submodule};

pub type Set = BTreeSet<Vec<u32>>;

/// Every vector of `F_p^n`.
pub fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    assert!((p as u64).pow(n as u32) <= 1 << 16, "space too large to enumerate");
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn add(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

fn scale(p: u32, c: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|x| x * c % p).collect()
}

/// Closure of `gens` under addition and scalar multiples.
pub fn span(p: u32, n: usize, gens: &[Vec<u32>]) -> Set {
    let mut set: Set = std::iter::once(vec![0; n]).collect();
    for g in gens {
        let current: Vec<Vec<u32>> = set.iter().cloned().collect();
        for v in current {
            for c in 1..p {
                set.insert(add(p, &v, &scale(p, c, g)));
            }
        }
    }
    set
}

pub fn elements_of(s: &Submodule, p: u32) -> Set {
    span(p, s.ambient_dim(), &s.basis())
}

/// `a * b` from the structure constants.
pub fn mul(r: &Algebra, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p = r.p();
    let d = r.dim();
    let mut out = vec![0; d];
    for i in 0..d {
        for j in 0..d {
            let c = a[i] * b[j] % p;
            if c == 0 {
                continue;
            }
            for (k, &t) in r.structure_constants()[i][j].iter().enumerate() {
                out[k] = (out[k] + c * t) % p;
            }
        }
    }
    out
}

pub fn power(r: &Algebra, a: &[u32], q: u64) -> Vec<u32> {
    let mut out = r.one();
    for _ in 0..q {
        out = mul(r, &out, a);
    }
    out
}

/// `a . z` computed from the raw action rows.
pub fn act(m: &ModuleRep, a: &[u32], z: &[u32]) -> Vec<u32> {
    let p = m.p();
    let mut out = vec![0; m.dim()];
    for (i, &c) in a.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (row, o) in m.action(i).row_vectors().iter().zip(out.iter_mut()) {
            let dot: u32 = row.iter().zip(z).map(|(x, y)| x * y % p).sum::<u32>() % p;
            *o = (*o + c * dot) % p;
        }
    }
    out
}

/// Every ideal of `r`: subsets of elements closed under addition and under
/// multiplication by every element.
pub fn ideals(r: &Algebra) -> Vec<Set> {
    let p = r.p();
    let elems = all_vectors(p, r.dim());
    assert!(elems.len() <= 16, "too many subsets to enumerate");
    let mut out = Vec::new();
    for mask in 0u32..(1 << elems.len()) {
        let s: Set = (0..elems.len()).filter(|i| mask >> i & 1 == 1).map(|i| elems[i].clone()).collect();
        if !s.contains(&r.zero()) {
            continue;
        }
        let closed = s.iter().all(|a| {
            s.iter().all(|b| s.contains(&add(p, a, b))) && elems.iter().all(|x| s.contains(&mul(r, x, a)))
        });
        if closed {
            out.push(s);
        }
    }
    out
}

/// `(0 :_M I) = {z : a z = 0 for all a in I}`.
pub fn annihilated(m: &ModuleRep, ideal: &Set) -> Set {
    let zero = vec![0; m.dim()];
    all_vectors(m.p(), m.dim())
        .into_iter()
        .filter(|z| ideal.iter().all(|a| act(m, a, z) == zero))
        .collect()
}

/// `I M`, the span of all products.
pub fn ideal_times(m: &ModuleRep, ideal: &Set) -> Set {
    let mut gens = Vec::new();
    for a in ideal {
        for z in all_vectors(m.p(), m.dim()) {
            gens.push(act(m, a, &z));
        }
    }
    span(m.p(), m.dim(), &gens)
}

/// `I^n` as a set of elements.
pub fn ideal_power(r: &Algebra, ideal: &Set, n: usize) -> Set {
    let mut acc: Set = span(r.p(), r.dim(), &[r.one()]);
    for _ in 0..n {
        let mut gens = Vec::new();
        for a in &acc {
            for b in ideal {
                gens.push(mul(r, a, b));
            }
        }
        acc = span(r.p(), r.dim(), &gens);
    }
    acc
}

/// Ideal generated by the given elements.
pub fn ideal_generated(r: &Algebra, gens: &[Vec<u32>]) -> Set {
    let elems = all_vectors(r.p(), r.dim());
    let all: Vec<Vec<u32>> = gens.iter().flat_map(|g| elems.iter().map(|x| mul(r, x, g))).collect();
    span(r.p(), r.dim(), &all)
}

/// The Frobenius test ideal `∩_I (I : I^F)` where `I^F = {z : z^q ∈ I^[q]}`,
/// with `q` the first power of `p` at least the dimension of `r` (which bounds
/// the nilpotency index).
pub fn frobenius_test_ideal(r: &Algebra) -> Set {
    let p = r.p() as u64;
    let mut q = p;
    while q < r.dim() as u64 {
        q *= p;
    }
    let elems = all_vectors(r.p(), r.dim());
    let mut tau: Set = elems.iter().cloned().collect();
    for i in ideals(r) {
        let bracket: Vec<Vec<u32>> = i.iter().map(|a| power(r, a, q)).collect();
        let iq = ideal_generated(r, &bracket);
        let frob: Vec<&Vec<u32>> = elems.iter().filter(|z| iq.contains(&power(r, z, q))).collect();
        let colon: Set = elems
            .iter()
            .filter(|c| frob.iter().all(|z| i.contains(&mul(r, c, z))))
            .cloned()
            .collect();
        tau = tau.intersection(&colon).cloned().collect();
    }
    tau
}
