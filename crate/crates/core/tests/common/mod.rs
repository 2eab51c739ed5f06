//! Test oracles shared by the integration suites. Nothing here calls into
//! the solver, SNF or tracing code under test.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;
use surgeon_core::frontlang::FrontEvent;
use surgeon_core::{CompanionKnot, ContactCoefficient, LegendrianComponent, Sign, SurgeryDiagram};

/// Random valid diagram with `k ≤ k_max` components and `m ≤ m_max`.
pub fn random_diagram<R: Rng>(rng: &mut R, k_max: usize, m_max: u64) -> SurgeryDiagram {
    let k = rng.gen_range(1..=k_max);
    let components = (0..k)
        .map(|i| {
            let tb = rng.gen_range(-3..=3i64);
            // tb + rot odd, |rot| small
            let mut rot = rng.gen_range(-3..=3i64);
            if (tb + rot).rem_euclid(2) == 0 {
                rot += if rot > 0 { -1 } else { 1 };
            }
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            let m = rng.gen_range(1..=m_max);
            LegendrianComponent::new(format!("L{}", i + 1), tb, rot, ContactCoefficient::new(sign, m).unwrap())
        })
        .collect();
    let mut linking = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let v = rng.gen_range(-2..=2);
            linking[i][j] = v;
            linking[j][i] = v;
        }
    }
    let ktb = rng.gen_range(-3..=1i64);
    let krot = if ktb.rem_euclid(2) == 0 { 1 } else { 0 };
    let lk = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
    SurgeryDiagram::new(components, linking, vec![CompanionKnot::legendrian("K", ktb, krot, lk)])
}

pub fn mat_vec(m: &[Vec<i128>], v: &[i128]) -> Vec<i128> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Rank by exhaustive minors.
pub fn rank(m: &[Vec<i128>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == r)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }
    for r in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, r) {
            for cs in subsets(cols, r) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                if det(&minor) != 0 {
                    return r;
                }
            }
        }
    }
    0
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Every integer vector in `[-b, b]^n`.
pub fn box_points(n: usize, b: i128) -> Vec<Vec<i128>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Smallest `d ≤ d_max` for which `M·a = d·v` has a solution in the box.
pub fn brute_force_order(m: &[Vec<i128>], v: &[i128], d_max: i128, b: i128) -> Option<(i128, Vec<i128>)> {
    let images: Vec<(Vec<i128>, Vec<i128>)> = box_points(m[0].len(), b).into_iter().map(|a| (mat_vec(m, &a), a)).collect();
    (1..=d_max).find_map(|d| {
        let target: Vec<i128> = v.iter().map(|x| d * x).collect();
        images.iter().find(|(img, _)| *img == target).map(|(_, a)| (d, a.clone()))
    })
}

/// Minimal order for nonsingular square `M` from the adjugate:
/// `a = d·adj(M)·v / det`, so `d = |det| / gcd(det, adj(M)·v)`.
pub fn adjugate_order(m: &[Vec<i128>], v: &[i128]) -> (i128, Vec<i128>) {
    let n = m.len();
    let dt = det(m);
    assert_ne!(dt, 0);
    let adj_v: Vec<i128> = (0..n)
        .map(|i| {
            // Cramer: replace column i by v
            let mi: Vec<Vec<i128>> =
                (0..n).map(|r| (0..n).map(|c| if c == i { v[r] } else { m[r][c] }).collect()).collect();
            det(&mi)
        })
        .collect();
    let g = adj_v.iter().fold(dt, |g, &x| gcd(g, x));
    let d = dt.abs() / g;
    let sign = dt.signum();
    (d, adj_v.iter().map(|x| sign * x / g).collect())
}

/// Geometric trace of a front. Strands are laid out on an integer grid,
/// components are found by walking the resulting polygon graph, and
/// crossing signs come from cross products of the oriented segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleFront {
    /// `(tb, rot)` per component, ordered by leftmost left cusp.
    pub tb_rot: Vec<(i64, i64)>,
    pub linking: Vec<Vec<i64>>,
}

type Pt = (i64, i64);

pub fn oracle_front(events: &[FrontEvent], reversed: &[bool]) -> OracleFront {
    let mut segs: Vec<(Pt, Pt)> = Vec::new();
    let mut n: i64 = 0;
    for (i, ev) in events.iter().enumerate() {
        let x0 = 2 * i as i64;
        let (x1, xm) = (x0 + 2, x0 + 1);
        let y = |q: i64| -2 * q;
        match *ev {
            FrontEvent::Crossing(p) => {
                let p = p as i64;
                for q in 1..=n {
                    let to = if q == p { p + 1 } else if q == p + 1 { p } else { q };
                    segs.push(((x0, y(q)), (x1, y(to))));
                }
            }
            FrontEvent::LeftCusp(p) => {
                let p = p as i64;
                for q in 1..=n {
                    let to = if q < p { q } else { q + 2 };
                    segs.push(((x0, y(q)), (x1, y(to))));
                }
                let c = (xm, -2 * p - 1);
                segs.push((c, (x1, y(p))));
                segs.push((c, (x1, y(p + 1))));
                n += 2;
            }
            FrontEvent::RightCusp(p) => {
                let p = p as i64;
                for q in 1..=n {
                    if q == p || q == p + 1 {
                        continue;
                    }
                    let to = if q < p { q } else { q - 2 };
                    segs.push(((x0, y(q)), (x1, y(to))));
                }
                let c = (xm, -2 * p - 1);
                segs.push(((x0, y(p)), c));
                segs.push(((x0, y(p + 1)), c));
                n -= 2;
            }
        }
    }

    let mut adj: HashMap<Pt, Vec<usize>> = HashMap::new();
    for (s, &(a, b)) in segs.iter().enumerate() {
        adj.entry(a).or_default().push(s);
        adj.entry(b).or_default().push(s);
    }
    let other_end = |s: usize, p: Pt| if segs[s].0 == p { segs[s].1 } else { segs[s].0 };
    let is_left_cusp = |p: &Pt| {
        let a = &adj[p];
        a.len() == 2 && a.iter().all(|&s| other_end(s, *p).0 > p.0)
    };
    let mut left_cusps: Vec<Pt> = adj.keys().copied().filter(is_left_cusp).collect();
    left_cusps.sort();

    // oriented walk per component: (segment, from, to)
    let mut seg_comp: Vec<Option<(usize, Pt, Pt)>> = vec![None; segs.len()];
    let mut walks: Vec<Vec<Pt>> = Vec::new();
    for &start in &left_cusps {
        if adj[&start].iter().any(|&s| seg_comp[s].is_some()) {
            continue;
        }
        let comp = walks.len();
        let mut first = adj[&start].clone();
        first.sort_by_key(|&s| -other_end(s, start).1);
        let mut pts = vec![start];
        let (mut cur, mut seg) = (start, first[0]);
        loop {
            let next = other_end(seg, cur);
            seg_comp[seg] = Some((comp, cur, next));
            if next == start {
                break;
            }
            pts.push(next);
            seg = *adj[&next].iter().find(|&&s| s != seg).unwrap();
            cur = next;
        }
        walks.push(pts);
    }
    let k = walks.len();
    let oriented = |s: usize| {
        let (c, from, to) = seg_comp[s].unwrap();
        if reversed.get(c).copied().unwrap_or(false) {
            (to, from)
        } else {
            (from, to)
        }
    };
    let dir = |s: usize| {
        let (from, to) = oriented(s);
        (to.0 - from.0, to.1 - from.1)
    };

    let mut cusps = vec![0i64; k];
    let mut down_minus_up = vec![0i64; k];
    for (p, list) in &adj {
        let xs: Vec<i64> = list.iter().map(|&s| other_end(s, *p).0).collect();
        if xs.len() == 2 && (xs.iter().all(|&x| x > p.0) || xs.iter().all(|&x| x < p.0)) {
            let s = list[0];
            let c = seg_comp[s].unwrap().0;
            cusps[c] += 1;
            // incoming segment ends at p
            let incoming = *list.iter().find(|&&s| oriented(s).1 == *p).unwrap();
            down_minus_up[c] += if dir(incoming).1 < 0 { 1 } else { -1 };
        }
    }

    let mut writhe = vec![0i64; k];
    let mut lk2 = vec![vec![0i64; k]; k];
    for s in 0..segs.len() {
        for t in s + 1..segs.len() {
            let (a, b) = (segs[s], segs[t]);
            if a.0 .0 != b.0 .0 || a.1 .0 != b.1 .0 {
                continue;
            }
            let (lo, hi) = (a.0 .0, a.1 .0);
            if hi - lo != 2 {
                continue;
            }
            // proper crossing: endpoint order swaps
            let before = (a.0 .1 - b.0 .1).signum();
            let after = (a.1 .1 - b.1 .1).signum();
            if before == 0 || after == 0 || before == after {
                continue;
            }
            let slope = |g: (Pt, Pt)| g.1 .1 - g.0 .1;
            let (over, under) = if slope(a) < slope(b) { (s, t) } else { (t, s) };
            let (o, u) = (dir(over), dir(under));
            let sign = (o.0 * u.1 - o.1 * u.0).signum();
            let (ca, cb) = (seg_comp[over].unwrap().0, seg_comp[under].unwrap().0);
            if ca == cb {
                writhe[ca] += sign;
            } else {
                lk2[ca][cb] += sign;
                lk2[cb][ca] += sign;
            }
        }
    }

    OracleFront {
        tb_rot: (0..k).map(|c| (writhe[c] - cusps[c] / 2, down_minus_up[c] / 2)).collect(),
        linking: lk2.into_iter().map(|r| r.into_iter().map(|x| x / 2).collect()).collect(),
    }
}

/// Maps arbitrary `(kind, position)` pairs to a valid event list with at
/// most `max_strands` strands, closing every open strand at the end.
pub fn valid_events(raw: &[(u8, u8)], max_strands: usize) -> Vec<FrontEvent> {
    let mut n = 0usize;
    let mut out = Vec::new();
    for &(kind, pos) in raw {
        let pos = pos as usize;
        let ev = match kind % 3 {
            _ if n < 2 => FrontEvent::LeftCusp(1 + pos % (n + 1)),
            0 if n + 2 <= max_strands => FrontEvent::LeftCusp(1 + pos % (n + 1)),
            1 | 0 => FrontEvent::RightCusp(1 + pos % (n - 1)),
            _ => FrontEvent::Crossing(1 + pos % (n - 1)),
        };
        match ev {
            FrontEvent::LeftCusp(_) => n += 2,
            FrontEvent::RightCusp(_) => n -= 2,
            FrontEvent::Crossing(_) => {}
        }
        out.push(ev);
    }
    while n > 0 {
        out.push(FrontEvent::RightCusp(1));
        n -= 2;
    }
    out
}
