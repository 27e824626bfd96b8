//! Integer partitions, their statistics, and exhaustive enumeration of the
//! partition classes used throughout the identity catalog.
//!
//! Statistics follow the decorated-diagram conventions: odd-indexed parts
//! contribute to `O` (split into ceil/floor halves feeding the `a`/`b`
//! exponents), even-indexed parts to `E` (feeding `c`/`d`), and
//! `gamma = O - E` is the alternating sum of parts.

use std::fmt;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers; the empty sequence is
/// the unique partition of 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::Domain(format!(
                    "parts must be weakly decreasing, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::Domain("parts must be positive".into()));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Parse the canonical text form: comma-separated descending parts,
    /// with "" or "[]" denoting the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "[]" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Domain(format!("bad part {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn first_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// Gaps of at least 2 between consecutive parts.
    pub fn is_rogers_ramanujan(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1] + 2)
    }

    pub fn stats(&self) -> StatRecord {
        let mut s = StatRecord::default();
        s.length = self.parts.len() as u64;
        for (i, &p) in self.parts.iter().enumerate() {
            let p = p as u64;
            s.size += p;
            let ceil = p.div_ceil(2);
            let floor = p / 2;
            if i % 2 == 0 {
                s.odd_sum += p;
                s.ceil_odd += ceil;
                s.floor_odd += floor;
            } else {
                s.even_sum += p;
                s.ceil_even += ceil;
                s.floor_even += floor;
            }
        }
        s.gamma = s.odd_sum - s.even_sum;
        s.max_hook = if self.parts.is_empty() {
            0
        } else {
            self.parts[0] as u64 + s.length - 1
        };
        s
    }

    /// Exponent quadruple of the decorated-diagram weight:
    /// `(ceil(O), floor(O), ceil(E), floor(E))`, i.e. the exponents of
    /// `a, b, c, d` in the four-variable weight of this partition.
    pub fn boulet_exponents(&self) -> [u64; 4] {
        let s = self.stats();
        [s.ceil_odd, s.floor_odd, s.ceil_even, s.floor_even]
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "[]");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// All statistics of one partition.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct StatRecord {
    pub size: u64,
    pub length: u64,
    /// Sum of odd-indexed parts `lambda_1 + lambda_3 + ...`.
    pub odd_sum: u64,
    /// Sum of even-indexed parts `lambda_2 + lambda_4 + ...`.
    pub even_sum: u64,
    pub ceil_odd: u64,
    pub floor_odd: u64,
    pub ceil_even: u64,
    pub floor_even: u64,
    /// Alternating sum of parts, `odd_sum - even_sum` (always >= 0).
    pub gamma: u64,
    /// `lambda_1 + #parts - 1`, the hook length of the corner cell.
    pub max_hook: u64,
}

/// Which family of partitions to enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PartitionClass {
    /// Arbitrary partitions.
    Ordinary,
    /// Strictly decreasing parts.
    Distinct,
    /// Gaps of at least 2 between consecutive parts.
    RogersRamanujan,
}

impl PartitionClass {
    /// Minimum decrease from one part to the next.
    fn gap(self) -> u32 {
        match self {
            PartitionClass::Ordinary => 0,
            PartitionClass::Distinct => 1,
            PartitionClass::RogersRamanujan => 2,
        }
    }
}

/// The statistic capped to make an enumeration finite.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cap {
    Size(u64),
    OddSum(u64),
    EvenSum(u64),
}

/// A finite, enumerable family of partitions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClassFilter {
    pub class: PartitionClass,
    pub max_part: Option<u32>,
    pub max_length: Option<u64>,
    pub cap: Cap,
}

impl ClassFilter {
    pub fn new(class: PartitionClass, cap: Cap) -> Self {
        ClassFilter {
            class,
            max_part: None,
            max_length: None,
            cap,
        }
    }

    pub fn with_max_part(mut self, n: u32) -> Self {
        self.max_part = Some(n);
        self
    }

    pub fn with_max_length(mut self, n: u64) -> Self {
        self.max_length = Some(n);
        self
    }

    /// A size cap is always finite, an odd-sum cap bounds the largest part
    /// (so everything), but an even-sum cap leaves single parts free and
    /// needs a part or length bound on top.
    fn check_finite(&self) -> Result<()> {
        match self.cap {
            Cap::Size(_) | Cap::OddSum(_) => Ok(()),
            Cap::EvenSum(_) => {
                if self.max_part.is_some() || self.max_length.is_some() {
                    Ok(())
                } else {
                    Err(Error::Divergence(
                        "even-sum cap needs a largest-part or length bound".into(),
                    ))
                }
            }
        }
    }

    fn cap_value(&self) -> u64 {
        match self.cap {
            Cap::Size(d) | Cap::OddSum(d) | Cap::EvenSum(d) => d,
        }
    }

    /// Largest part any member can have.
    fn part_bound(&self) -> u64 {
        let from_cap = match self.cap {
            Cap::Size(d) => d,
            // the largest part is odd-indexed
            Cap::OddSum(d) => d,
            Cap::EvenSum(_) => u64::MAX,
        };
        match self.max_part {
            Some(m) => from_cap.min(m as u64),
            None => from_cap,
        }
    }
}

/// Walk every partition in the class, in recursive-descent order (parts
/// chosen largest first). The callback receives the parts slice.
pub fn visit_class<F: FnMut(&[u32])>(filter: &ClassFilter, mut f: F) -> Result<()> {
    filter.check_finite()?;
    let bound = filter.part_bound();
    if bound > u32::MAX as u64 {
        return Err(Error::Divergence("part bound overflows".into()));
    }
    let gap = filter.class.gap();
    let cap = filter.cap_value();
    let mut parts: Vec<u32> = Vec::new();

    // stat = value of the capped statistic so far
    fn rec<F: FnMut(&[u32])>(
        parts: &mut Vec<u32>,
        max_next: u32,
        stat: u64,
        cap: u64,
        filter: &ClassFilter,
        gap: u32,
        f: &mut F,
    ) {
        f(parts);
        if let Some(ml) = filter.max_length {
            if parts.len() as u64 >= ml {
                return;
            }
        }
        let idx = parts.len(); // 0-based index of the next part
        for next in 1..=max_next {
            let contributes = match filter.cap {
                Cap::Size(_) => next as u64,
                Cap::OddSum(_) => {
                    if idx % 2 == 0 {
                        next as u64
                    } else {
                        0
                    }
                }
                Cap::EvenSum(_) => {
                    if idx % 2 == 1 {
                        next as u64
                    } else {
                        0
                    }
                }
            };
            if stat + contributes > cap {
                if contributes > 0 {
                    break;
                }
                continue;
            }
            parts.push(next);
            let nm = next.saturating_sub(gap);
            rec(parts, nm, stat + contributes, cap, filter, gap, f);
            parts.pop();
        }
    }

    rec(&mut parts, bound as u32, 0, cap, filter, gap, &mut f);
    Ok(())
}

/// Every partition matching the filter, exactly once, ordered by size then
/// by lexicographically descending parts.
pub fn enumerate(filter: &ClassFilter) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    visit_class(filter, |parts| {
        out.push(Partition {
            parts: parts.to_vec(),
        });
    })?;
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.parts.cmp(&a.parts)));
    Ok(out)
}

/// A partition of `n` into red and green parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TwoColorPartition {
    pub red: Partition,
    pub green: Partition,
}

impl TwoColorPartition {
    pub fn size(&self) -> u64 {
        self.red.size() + self.green.size()
    }
}

impl fmt::Display for TwoColorPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "red:[{}];green:[{}]", join(&self.red), join(&self.green))
    }
}

fn join(p: &Partition) -> String {
    p.parts()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Side condition on a two-color partition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TwoColorConstraint {
    /// number of red parts + largest green part <= N
    CountPlusMaxGreenAtMost(u32),
    /// largest green part <= bound
    MaxGreenAtMost(u32),
    /// every red part <= bound (sizes, not count)
    RedPartsAtMost(u32),
}

/// All two-color partitions of `n` meeting the constraint, optionally with
/// an exact number of red parts. Deterministic order.
pub fn enumerate_two_color(
    n: u64,
    red_count: Option<u64>,
    constraint: TwoColorConstraint,
) -> Vec<TwoColorPartition> {
    let mut out = Vec::new();
    for red_size in 0..=n {
        let red_filter = match constraint {
            TwoColorConstraint::RedPartsAtMost(b) => {
                ClassFilter::new(PartitionClass::Ordinary, Cap::Size(red_size)).with_max_part(b)
            }
            _ => ClassFilter::new(PartitionClass::Ordinary, Cap::Size(red_size)),
        };
        let reds: Vec<Partition> = enumerate(&red_filter)
            .expect("size cap is finite")
            .into_iter()
            .filter(|p| p.size() == red_size)
            .collect();
        let green_size = n - red_size;
        let greens: Vec<Partition> = enumerate(&ClassFilter::new(
            PartitionClass::Ordinary,
            Cap::Size(green_size),
        ))
        .expect("size cap is finite")
        .into_iter()
        .filter(|p| p.size() == green_size)
        .collect();
        for red in &reds {
            if let Some(rc) = red_count {
                if red.len() as u64 != rc {
                    continue;
                }
            }
            for green in &greens {
                let ok = match constraint {
                    TwoColorConstraint::CountPlusMaxGreenAtMost(nb) => {
                        red.len() as u64 + green.first_part() as u64 <= nb as u64
                    }
                    TwoColorConstraint::MaxGreenAtMost(b) => green.first_part() <= b,
                    TwoColorConstraint::RedPartsAtMost(_) => true,
                };
                if ok {
                    out.push(TwoColorPartition {
                        red: red.clone(),
                        green: green.clone(),
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// The multiplicative gap weight on Rogers-Ramanujan partitions:
/// `lambda_last * prod (lambda_i - lambda_{i+1} - 1)`, with the empty
/// partition weighing 1.
pub fn rr_weight(p: &Partition) -> Result<u64> {
    if !p.is_rogers_ramanujan() {
        return Err(Error::Domain(format!("{p} does not have gaps >= 2")));
    }
    if p.is_empty() {
        return Ok(1);
    }
    let parts = p.parts();
    let mut w = *parts.last().unwrap() as u64;
    for win in parts.windows(2) {
        w *= (win[0] - win[1] - 1) as u64;
    }
    Ok(w)
}

/// The bounded variant: `(N - lambda_1)` times [`rr_weight`], with the empty
/// partition weighing `N + 1`.
pub fn rr_weight_hat(p: &Partition, n_bound: u32) -> Result<u64> {
    if p.is_empty() {
        return Ok(n_bound as u64 + 1);
    }
    if p.first_part() + 1 > n_bound {
        return Err(Error::Domain(format!(
            "{p} has largest part beyond {} - 1",
            n_bound
        )));
    }
    Ok((n_bound - p.first_part()) as u64 * rr_weight(p)?)
}

/// Number of partitions of `n` whose largest hook length is at most
/// `max_hook`, optionally with exactly `length` parts.
pub fn hook_count(n: u64, max_hook: u32, length: Option<u64>) -> u64 {
    if n == 0 {
        // only the empty partition, which has hook 0 and 0 parts
        return match length {
            None | Some(0) => 1,
            Some(_) => 0,
        };
    }
    let filter = ClassFilter::new(PartitionClass::Ordinary, Cap::Size(n)).with_max_part(max_hook);
    let mut count = 0;
    visit_class(&filter, |parts| {
        if parts.iter().map(|&p| p as u64).sum::<u64>() != n {
            return;
        }
        if let Some(l) = length {
            if parts.len() as u64 != l {
                return;
            }
        }
        let hook = parts[0] as u64 + parts.len() as u64 - 1;
        if hook <= max_hook as u64 {
            count += 1;
        }
    })
    .expect("size cap is finite");
    count
}

/// Number of partitions of `n` with all parts at most `bound`.
pub fn count_with_parts_at_most(n: u64, bound: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    if bound == 0 {
        return 0;
    }
    let filter = ClassFilter::new(PartitionClass::Ordinary, Cap::Size(n)).with_max_part(bound);
    let mut count = 0;
    visit_class(&filter, |parts| {
        if parts.iter().map(|&p| p as u64).sum::<u64>() == n {
            count += 1;
        }
    })
    .expect("size cap is finite");
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_of_running_example() {
        let p = Partition::new(vec![12, 10, 7, 5, 2]).unwrap();
        let s = p.stats();
        assert_eq!(
            [s.ceil_odd, s.floor_odd, s.ceil_even, s.floor_even],
            [11, 10, 8, 7]
        );
        assert_eq!(p.boulet_exponents(), [11, 10, 8, 7]);
        assert_eq!(s.odd_sum, 21);
        assert_eq!(s.even_sum, 15);
        assert_eq!(s.gamma, 6);
        assert_eq!(s.size, 36);
    }

    #[test]
    fn stats_edges() {
        let e = Partition::empty();
        assert_eq!(e.stats(), StatRecord::default());
        assert_eq!(e.boulet_exponents(), [0, 0, 0, 0]);
        let one = Partition::new(vec![1]).unwrap();
        assert_eq!(one.boulet_exponents(), [1, 0, 0, 0]);
        let p22 = Partition::new(vec![2, 2]).unwrap();
        assert_eq!(p22.stats().max_hook, 3);
    }

    #[test]
    fn construction_guards() {
        assert!(Partition::new(vec![2, 3]).is_err());
        assert!(Partition::new(vec![1, 0]).is_err());
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert_eq!(Partition::parse("[]").unwrap(), Partition::empty());
        assert_eq!(
            Partition::parse("5,5,3").unwrap(),
            Partition::new(vec![5, 5, 3]).unwrap()
        );
        assert_eq!(Partition::new(vec![5, 3]).unwrap().to_string(), "5,3");
        assert_eq!(Partition::empty().to_string(), "[]");
    }

    #[test]
    fn enumerate_distinct_bounded() {
        // distinct parts <= 4, size <= 10: all 16 subsets of {1,2,3,4}
        let f = ClassFilter::new(PartitionClass::Distinct, Cap::Size(10)).with_max_part(4);
        let all = enumerate(&f).unwrap();
        assert_eq!(all.len(), 16);
        assert_eq!(all[0], Partition::empty());
        // distinct parts <= 3: 8 subsets of {1,2,3}
        let f3 = ClassFilter::new(PartitionClass::Distinct, Cap::Size(6)).with_max_part(3);
        assert_eq!(enumerate(&f3).unwrap().len(), 8);
        // ordinary with max_part 0: only the empty partition
        let f0 = ClassFilter::new(PartitionClass::Ordinary, Cap::Size(5)).with_max_part(0);
        assert_eq!(enumerate(&f0).unwrap(), vec![Partition::empty()]);
    }

    #[test]
    fn enumerate_order_is_by_size_then_desc_parts() {
        let f = ClassFilter::new(PartitionClass::Ordinary, Cap::Size(4)).with_max_part(4);
        let all = enumerate(&f).unwrap();
        let of4: Vec<String> = all
            .iter()
            .filter(|p| p.size() == 4)
            .map(|p| p.to_string())
            .collect();
        assert_eq!(of4, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
    }

    #[test]
    fn even_sum_cap_needs_extra_bound() {
        let f = ClassFilter::new(PartitionClass::Distinct, Cap::EvenSum(3));
        assert!(enumerate(&f).is_err());
        let ok = f.with_max_part(6);
        assert!(enumerate(&ok).is_ok());
    }

    #[test]
    fn odd_sum_cap_enumeration_counts() {
        // #{distinct partitions with O(pi) = n} = p(n), Schmidt's observation;
        // spot-check small n by raw enumeration.
        let f = ClassFilter::new(PartitionClass::Distinct, Cap::OddSum(5));
        let all = enumerate(&f).unwrap();
        let count = |n: u64| all.iter().filter(|p| p.stats().odd_sum == n).count() as u64;
        assert_eq!(count(0), 1);
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 2);
        assert_eq!(count(3), 3);
        assert_eq!(count(4), 5);
        assert_eq!(count(5), 7);
    }

    #[test]
    fn stat_invariants_over_enumeration() {
        let f = ClassFilter::new(PartitionClass::Ordinary, Cap::Size(30)).with_max_part(9);
        let mut checked = 0u64;
        visit_class(&f, |parts| {
            let p = Partition {
                parts: parts.to_vec(),
            };
            let s = p.stats();
            assert_eq!(s.odd_sum + s.even_sum, s.size);
            assert_eq!(s.ceil_odd + s.floor_odd, s.odd_sum);
            assert_eq!(s.ceil_even + s.floor_even, s.even_sum);
            assert!(s.odd_sum >= s.even_sum);
            assert_eq!(s.gamma, s.odd_sum - s.even_sum);
            assert!(s.gamma <= p.first_part() as u64);
            assert!(s.ceil_odd >= s.ceil_even && s.floor_odd >= s.floor_even);
            // weight exponents sum to the size
            let [ea, eb, ec, ed] = p.boulet_exponents();
            assert_eq!(ea + eb + ec + ed, s.size);
            checked += 1;
        })
        .unwrap();
        assert!(checked > 1000);
    }

    #[test]
    fn two_color_counts_match_tables() {
        // T_3(4) = 15
        let t34 = enumerate_two_color(4, None, TwoColorConstraint::CountPlusMaxGreenAtMost(3));
        assert_eq!(t34.len(), 15);
        // T_{3,1}(4) = 6: exactly one red part, green parts <= 3 - 1
        let t314 = enumerate_two_color(4, Some(1), TwoColorConstraint::MaxGreenAtMost(2));
        assert_eq!(t314.len(), 6);
        // T_N(0) = 1
        let t0 = enumerate_two_color(0, None, TwoColorConstraint::CountPlusMaxGreenAtMost(5));
        assert_eq!(t0.len(), 1);
        assert_eq!(t0[0].to_string(), "red:[];green:[]");
    }

    #[test]
    fn rr_weights() {
        assert_eq!(rr_weight(&Partition::new(vec![3, 1]).unwrap()).unwrap(), 1);
        assert_eq!(rr_weight(&Partition::empty()).unwrap(), 1);
        assert_eq!(rr_weight(&Partition::new(vec![7]).unwrap()).unwrap(), 7);
        assert!(rr_weight(&Partition::new(vec![3, 2]).unwrap()).is_err());
        // bounded variant, N = 4
        assert_eq!(
            rr_weight_hat(&Partition::new(vec![3]).unwrap(), 4).unwrap(),
            3
        );
        assert_eq!(rr_weight_hat(&Partition::empty(), 4).unwrap(), 5);
        assert_eq!(
            rr_weight_hat(&Partition::new(vec![3, 1]).unwrap(), 4).unwrap(),
            1
        );
        assert!(rr_weight_hat(&Partition::new(vec![4]).unwrap(), 4).is_err());
    }

    #[test]
    fn hook_counts_match_tables() {
        // partitions of 4 with hook <= 4: (4), (3,1), (2,2), (2,1,1), (1,1,1,1)
        assert_eq!(hook_count(4, 4, None), 5);
        // of those with exactly 2 parts: (3,1) has hook 4, (2,2) has hook 3
        assert_eq!(hook_count(4, 4, Some(2)), 2);
        assert_eq!(hook_count(4, 3, Some(2)), 1);
        assert_eq!(hook_count(0, 7, None), 1);
        assert_eq!(hook_count(4, 3, None), 1);
    }

    #[test]
    fn s44_and_u34_from_raw_enumeration() {
        // S_4(4): distinct parts <= 4 with odd-indexed sum 4
        let f = ClassFilter::new(PartitionClass::Distinct, Cap::OddSum(4)).with_max_part(4);
        let s44 = enumerate(&f)
            .unwrap()
            .iter()
            .filter(|p| p.stats().odd_sum == 4)
            .count();
        assert_eq!(s44, 5);
        // U_3(4): ordinary parts <= 3 with odd-indexed sum 4
        let f2 = ClassFilter::new(PartitionClass::Ordinary, Cap::OddSum(4)).with_max_part(3);
        let u34 = enumerate(&f2)
            .unwrap()
            .iter()
            .filter(|p| p.stats().odd_sum == 4)
            .count();
        assert_eq!(u34, 15);
    }

    #[test]
    fn parts_at_most_counts() {
        // partitions of 5 into parts <= 4
        assert_eq!(count_with_parts_at_most(5, 4), 6);
        assert_eq!(count_with_parts_at_most(0, 0), 1);
        assert_eq!(count_with_parts_at_most(3, 0), 0);
    }
}
