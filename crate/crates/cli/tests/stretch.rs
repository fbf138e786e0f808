//! Search in the Sylow 3-subgroup of S_27 for rank 4 weakly closed
//! elementary abelian subgroups meeting the center trivially. Slow; run
//! with `--ignored`.
//!
//! Points are `a0 + 3 a1 + 9 a2`. An element is 13 ternary labels: the top
//! rotation of `a2`, a rotation of `a1` for each `a2`, and a rotation of `a0`
//! for each `(a1, a2)`. An order-3 element with a nonzero top label is
//! conjugate to the top cycle, whose centralizer forces the center into any
//! rank 4 subgroup, so the search stays inside the base `P_2^3`. Up to
//! conjugacy each block projection lies in `A`, the bottom base of the block,
//! or in `M = ⟨c, z⟩`, the block's middle cycle and center. Only the `A M M`
//! ambient is searched here.

use std::collections::HashSet;

use serde::Deserialize;

type Perm = [u8; 27];

fn from_labels(d: &[u8; 13]) -> Perm {
    let mut out = [0u8; 27];
    for i in 0..27u8 {
        let (a0, a1, a2) = (i % 3, (i / 3) % 3, i / 9);
        let b0 = (a0 + d[4 + (a1 + 3 * a2) as usize]) % 3;
        let b1 = (a1 + d[1 + a2 as usize]) % 3;
        let b2 = (a2 + d[0]) % 3;
        out[i as usize] = b0 + 3 * b1 + 9 * b2;
    }
    out
}

fn labels(set: &[usize]) -> Perm {
    let mut d = [0u8; 13];
    for &j in set {
        d[j] = 1;
    }
    from_labels(&d)
}

fn mul(a: &Perm, b: &Perm) -> Perm {
    std::array::from_fn(|i| b[a[i] as usize])
}

fn inv(a: &Perm) -> Perm {
    let mut o = [0; 27];
    for i in 0..27 {
        o[a[i] as usize] = i as u8;
    }
    o
}

fn identity() -> Perm {
    std::array::from_fn(|i| i as u8)
}

fn commutes(a: &Perm, b: &Perm) -> bool {
    mul(a, b) == mul(b, a)
}

fn span(gens: &[Perm]) -> Vec<Perm> {
    let mut s = vec![identity()];
    for g in gens {
        if s.contains(g) {
            continue;
        }
        let g2 = mul(g, g);
        s = s.iter().flat_map(|x| [*x, mul(x, g), mul(x, &g2)]).collect();
    }
    s
}

/// No `x` has `[x, E, E] = 1` without normalizing `E`.
fn weakly_closed(all: &[Perm], gens: &[Perm]) -> bool {
    let e: HashSet<Perm> = span(gens).into_iter().collect();
    all.iter().all(|x| {
        let xi = inv(x);
        let c: Vec<Perm> = gens.iter().map(|g| mul(&mul(&xi, &inv(g)), &mul(x, g))).collect();
        let commuting = c.iter().all(|y| gens.iter().all(|g| commutes(y, g)));
        !commuting || gens.iter().all(|g| e.contains(&mul(&mul(&xi, g), x)))
    })
}

#[derive(Deserialize)]
struct Witness {
    permutations: Vec<Vec<u8>>,
}

#[test]
#[ignore]
fn rank4_search() {
    let all: Vec<Perm> = (0..3u32.pow(13))
        .map(|mut k| {
            from_labels(&std::array::from_fn(|_| {
                let d = (k % 3) as u8;
                k /= 3;
                d
            }))
        })
        .collect();
    let z = labels(&(4..13).collect::<Vec<_>>());
    // A in block 0, M in blocks 1 and 2
    let basis = [labels(&[4]), labels(&[5]), labels(&[6]), labels(&[2]), labels(&[7, 8, 9]), labels(&[3]), labels(&[10, 11, 12])];
    let n = basis.len();
    let element = |v: &[u8]| {
        let mut x = identity();
        for (i, &c) in v.iter().enumerate() {
            for _ in 0..c {
                x = mul(&x, &basis[i]);
            }
        }
        x
    };
    let mut found: Vec<HashSet<Perm>> = Vec::new();
    // rank 4 subspaces in reduced echelon form
    for mask in (0u32..1 << n).filter(|m| m.count_ones() == 4) {
        let pivots: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| (pc + 1..n).filter(|c| mask >> c & 1 == 0).map(move |c| (r, c)))
            .collect();
        for k in 0..3u64.pow(free.len() as u32) {
            let mut rows = vec![vec![0u8; n]; 4];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            let mut kk = k;
            for &(r, c) in &free {
                rows[r][c] = (kk % 3) as u8;
                kk /= 3;
            }
            let gens: Vec<Perm> = rows.iter().map(|r| element(r)).collect();
            let e = span(&gens);
            if !e.contains(&z) && weakly_closed(&all, &gens) {
                found.push(e.into_iter().collect());
            }
        }
    }
    println!("{} subgroups found", found.len());
    let w: Witness = serde_json::from_str(include_str!("../data/sylsym27_rank4.json")).unwrap();
    let gens: Vec<Perm> = w.permutations.iter().map(|p| p.as_slice().try_into().unwrap()).collect();
    let stored: HashSet<Perm> = span(&gens).into_iter().collect();
    assert!(found.contains(&stored));
}
