//! Exhaustive enumeration of small functions and spans.

use crate::finset::{FiniteFunction, FiniteSet};
use crate::maps::map_from_function;
use crate::span::Span;

/// All sequences of length `len` over `0..base`, in lexicographic order.
fn sequences(len: usize, base: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if base == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = vec![0; len];
    loop {
        out.push(current.clone());
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < base {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// Non-decreasing sequences of length `len` over `0..base`.
fn multisets(len: usize, base: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, base: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in min..base {
            cur.push(v);
            go(len, base, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, base, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

pub fn all_functions(dom: usize, cod: usize) -> Vec<FiniteFunction> {
    sequences(dom, cod)
        .into_iter()
        .map(|t| FiniteFunction::from_table(dom, cod, t).expect("in range"))
        .collect()
}

pub fn all_bijections(n: usize) -> Vec<FiniteFunction> {
    all_functions(n, n)
        .into_iter()
        .filter(FiniteFunction::is_bijection)
        .collect()
}

/// One function `n → cod` from each isomorphism class over the domain.
pub fn functions_up_to_domain_iso(n: usize, cod: usize) -> Vec<FiniteFunction> {
    multisets(n, cod)
        .into_iter()
        .map(|t| FiniteFunction::from_table(n, cod, t).expect("in range"))
        .collect()
}

pub fn all_maps(x: &FiniteSet, a: &FiniteSet) -> Vec<Span> {
    all_functions(x.size(), a.size())
        .iter()
        .map(map_from_function)
        .collect()
}

/// Every span `src ← n → tgt` with a fixed apex size, not identified up to iso.
pub fn all_spans_with_apex(src: usize, tgt: usize, n: usize) -> Vec<Span> {
    let lefts = all_functions(n, src);
    let rights = all_functions(n, tgt);
    let mut out = Vec::with_capacity(lefts.len() * rights.len());
    for l in &lefts {
        for r in &rights {
            out.push(Span::new(l.clone(), r.clone()).expect("same apex"));
        }
    }
    out
}

/// One span per isomorphism class with the given apex size.
pub fn spans_with_apex_up_to_iso(src: usize, tgt: usize, n: usize) -> Vec<Span> {
    multisets(n, src * tgt)
        .into_iter()
        .map(|codes| {
            let left = codes.iter().map(|c| c / tgt).collect();
            let right = codes.iter().map(|c| c % tgt).collect();
            Span::from_tables(src, tgt, left, right).expect("codes decode in range")
        })
        .collect()
}

/// One span per isomorphism class with apex size at most `max_apex`.
pub fn spans_up_to_iso(src: usize, tgt: usize, max_apex: usize) -> Vec<Span> {
    (0..=max_apex)
        .flat_map(|n| spans_with_apex_up_to_iso(src, tgt, n))
        .collect()
}

/// Endospans on `a` whose two legs coincide, one per isomorphism class.
pub fn equal_leg_endospans(a: usize, max_apex: usize) -> Vec<Span> {
    (0..=max_apex)
        .flat_map(|n| functions_up_to_domain_iso(n, a))
        .map(|g| Span::new(g.clone(), g).expect("same apex"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::span::find_iso;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts() {
        assert_eq!(all_functions(3, 2).len(), 8);
        assert_eq!(all_functions(0, 0).len(), 1);
        assert_eq!(all_functions(2, 0).len(), 0);
        assert_eq!(all_bijections(4).len(), 24);
        // multisets of size n over k symbols
        assert_eq!(functions_up_to_domain_iso(3, 2).len(), binomial(4, 3));
        assert_eq!(spans_with_apex_up_to_iso(2, 2, 2).len(), binomial(5, 2));
    }

    #[test]
    fn iso_classes_are_distinct_and_complete() {
        let reps = spans_with_apex_up_to_iso(2, 2, 2);
        for (i, r) in reps.iter().enumerate() {
            for s in &reps[i + 1..] {
                assert!(find_iso(r, s).is_none());
            }
        }
        for s in all_spans_with_apex(2, 2, 2) {
            assert_eq!(reps.iter().filter(|r| find_iso(&s, r).is_some()).count(), 1);
        }
    }
}
