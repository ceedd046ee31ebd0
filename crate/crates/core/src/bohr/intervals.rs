use crate::error::{Error, Result};

/// A closed interval `[a, b]`.
pub type Interval = (f64, f64);

pub fn total_measure(intervals: &[Interval]) -> f64 {
    intervals.iter().map(|(a, b)| b - a).sum()
}

/// From a finite cover of `[0, 1]` by closed intervals, picks a subfamily
/// that is disjoint except at endpoints with total length at least 1/2.
///
/// The cover is first reduced to a minimal chain by the greedy rule (from
/// the current reach, take the admissible interval reaching furthest, lowest
/// index on ties). In a minimal chain every other interval is disjoint, so
/// the better of the two alternating subfamilies has measure at least 1/2.
pub fn select_disjoint_intervals(intervals: &[Interval]) -> Result<Vec<Interval>> {
    for &(a, b) in intervals {
        if !(a.is_finite() && b.is_finite()) || a > b || a < 0.0 || b > 1.0 {
            return Err(Error::NotACover(format!(
                "[{a}, {b}] is not a subinterval of [0,1]"
            )));
        }
    }
    let mut chain: Vec<Interval> = Vec::new();
    let mut reach = 0.0f64;
    let mut started = false;
    while !started || reach < 1.0 {
        let best = intervals
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a <= reach && b > reach || (!started && a <= 0.0))
            .max_by(|(i, x), (j, y)| x.1.total_cmp(&y.1).then(j.cmp(i)));
        match best {
            Some((_, &iv)) => {
                chain.push(iv);
                reach = iv.1;
                started = true;
            }
            None => return Err(Error::NotACover(format!("gap after {reach}"))),
        }
    }
    let odd: Vec<Interval> = chain.iter().copied().step_by(2).collect();
    let even: Vec<Interval> = chain.iter().copied().skip(1).step_by(2).collect();
    if total_measure(&even) > total_measure(&odd) {
        Ok(even)
    } else {
        Ok(odd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn disjoint(v: &[Interval]) -> bool {
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let (a, b) = v[i];
                let (c, d) = v[j];
                if a.max(c) < b.min(d) {
                    return false;
                }
            }
        }
        true
    }

    /// Largest measure over all pairwise-disjoint subfamilies.
    fn best_disjoint(v: &[Interval]) -> f64 {
        let n = v.len();
        let mut best = 0.0f64;
        for mask in 0u32..(1 << n) {
            let sub: Vec<Interval> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| v[i])
                .collect();
            if disjoint(&sub) {
                best = best.max(total_measure(&sub));
            }
        }
        best
    }

    #[test]
    fn examples() {
        assert_eq!(
            select_disjoint_intervals(&[(0.0, 1.0)]).unwrap(),
            vec![(0.0, 1.0)]
        );
        let pick = select_disjoint_intervals(&[(0.0, 0.6), (0.4, 1.0)]).unwrap();
        assert_eq!(pick.len(), 1);
        assert!(total_measure(&pick) >= 0.6 - 1e-15);
        assert!(matches!(
            select_disjoint_intervals(&[(0.0, 0.4), (0.5, 1.0)]),
            Err(Error::NotACover(_))
        ));
        assert!(matches!(
            select_disjoint_intervals(&[(0.1, 1.0)]),
            Err(Error::NotACover(_))
        ));
    }

    fn cover_strategy() -> impl Strategy<Value = Vec<Interval>> {
        // random cuts, each piece widened on both sides, plus noise intervals
        (
            prop::collection::vec(0.0f64..1.0, 1..6),
            prop::collection::vec((0.0f64..0.2, 0.0f64..0.2), 7),
            prop::collection::vec((0.0f64..1.0, 0.0f64..0.5), 0..4),
        )
            .prop_map(|(mut cuts, pads, extra)| {
                cuts.push(0.0);
                cuts.push(1.0);
                cuts.sort_by(f64::total_cmp);
                let mut out: Vec<Interval> = cuts
                    .windows(2)
                    .zip(pads)
                    .map(|(w, (l, r))| ((w[0] - l).max(0.0), (w[1] + r).min(1.0)))
                    .collect();
                out.extend(extra.into_iter().map(|(a, len)| (a, (a + len).min(1.0))));
                out
            })
    }

    proptest! {
        #[test]
        fn random_covers(cover in cover_strategy()) {
            let pick = select_disjoint_intervals(&cover).unwrap();
            prop_assert!(disjoint(&pick));
            prop_assert!(total_measure(&pick) >= 0.5 - 1e-12);
            prop_assert!(total_measure(&pick) <= best_disjoint(&cover) + 1e-12);
        }
    }
}
