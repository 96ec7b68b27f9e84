use super::kripke::Relation;
use crate::frames::FrameProperty;

/// First-order check of a frame property.
pub fn check_frame_property(r: &Relation, p: FrameProperty) -> bool {
    let n = r.worlds();
    let ws = || 0..n;
    let rr = |s, t| r.contains(s, t);
    let all3 = |f: &dyn Fn(usize, usize, usize) -> bool| ws().all(|s| ws().all(|t| ws().all(|u| f(s, t, u))));
    match p {
        FrameProperty::Reflexive => ws().all(|s| rr(s, s)),
        FrameProperty::Symmetric => ws().all(|s| ws().all(|t| !rr(s, t) || rr(t, s))),
        FrameProperty::Serial => ws().all(|s| ws().any(|t| rr(s, t))),
        FrameProperty::Transitive => all3(&|s, t, u| !(rr(s, t) && rr(t, u)) || rr(s, u)),
        FrameProperty::Euclidean => all3(&|s, t, u| !(rr(s, t) && rr(s, u)) || rr(t, u)),
        FrameProperty::PartiallyFunctional => all3(&|s, t, u| !(rr(s, t) && rr(s, u)) || t == u),
        FrameProperty::Functional => ws().all(|s| r.successors(s).count() == 1),
        FrameProperty::WeaklyDense => ws().all(|s| {
            ws().all(|t| !rr(s, t) || ws().any(|u| rr(s, u) && rr(u, t)))
        }),
        FrameProperty::WeaklyConnected => all3(&|s, t, u| {
            !(rr(s, t) && rr(s, u)) || rr(t, u) || t == u || rr(u, t)
        }),
        FrameProperty::WeaklyDirected => all3(&|s, t, u| {
            !(rr(s, t) && rr(s, u)) || ws().any(|v| rr(t, v) && rr(u, v))
        }),
    }
}

/// Every assignment of `indices` relations over `n` worlds, ordered by the
/// relations' bitmasks with the first relation varying fastest.
pub fn enumerate_frames(n: usize, indices: usize) -> impl Iterator<Item = Vec<Relation>> {
    let per = 1u128 << (n * n);
    let total = per.pow(indices as u32);
    (0..total).map(move |mut code| {
        (0..indices)
            .map(|_| {
                let mask = (code % per) as u64;
                code /= per;
                Relation::from_mask(n, mask)
            })
            .collect()
    })
}

/// [`enumerate_frames`] keeping one representative per isomorphism class:
/// the frame whose masks are lexicographically least over all renamings.
pub fn enumerate_frames_up_to_iso(n: usize, indices: usize) -> impl Iterator<Item = Vec<Relation>> {
    let perms = permutations(n);
    enumerate_frames(n, indices).filter(move |frame| {
        let key: Vec<u64> = frame.iter().map(Relation::mask).collect();
        perms.iter().all(|p| {
            let other: Vec<u64> = frame.iter().map(|r| r.permute(p).mask()).collect();
            key <= other
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap(n, &mut cur, &mut out);
    out
}

fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, a, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}
