/// Damerau-Levenshtein distance in its optimal-string-alignment form:
/// insertions, deletions, substitutions and transpositions of adjacent
/// characters, with no substring edited more than once.
pub fn damerau_levenshtein(a: &str, b: &str) -> usize {
    bounded_distance(a, b, usize::MAX).unwrap_or(usize::MAX)
}

/// Like [`damerau_levenshtein`] but gives up with `None` as soon as the
/// distance is known to exceed `max`.
pub fn bounded_distance(a: &str, b: &str, max: usize) -> Option<usize> {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.len().abs_diff(b.len()) > max {
        return None;
    }
    let width = b.len() + 1;
    // three rolling rows: i-2, i-1, i
    let mut prev2 = vec![0usize; width];
    let mut prev: Vec<usize> = (0..width).collect();
    let mut cur = vec![0usize; width];
    for i in 1..=a.len() {
        cur[0] = i;
        let mut row_min = cur[0];
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            let mut d = (prev[j] + 1).min(cur[j - 1] + 1).min(prev[j - 1] + cost);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                d = d.min(prev2[j - 2] + 1);
            }
            cur[j] = d;
            row_min = row_min.min(d);
        }
        if row_min > max {
            return None;
        }
        std::mem::swap(&mut prev2, &mut prev);
        std::mem::swap(&mut prev, &mut cur);
    }
    let d = prev[b.len()];
    (d <= max).then_some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_distances() {
        assert_eq!(damerau_levenshtein("custmer", "customer"), 1);
        assert_eq!(damerau_levenshtein("teh", "the"), 1);
        assert_eq!(damerau_levenshtein("", "abc"), 3);
        assert_eq!(damerau_levenshtein("ca", "abc"), 3);
        assert_eq!(damerau_levenshtein("kitten", "sitting"), 3);
        assert_eq!(bounded_distance("kitten", "sitting", 2), None);
        assert_eq!(bounded_distance("alice", "place", 2), Some(2));
    }

    proptest::proptest! {
        #[test]
        fn matches_reference_osa(a in "[a-e]{0,7}", b in "[a-e]{0,7}") {
            let expected = strsim::osa_distance(&a, &b);
            proptest::prop_assert_eq!(damerau_levenshtein(&a, &b), expected);
            let bounded = bounded_distance(&a, &b, 2);
            proptest::prop_assert_eq!(bounded, (expected <= 2).then_some(expected));
        }
    }
}
