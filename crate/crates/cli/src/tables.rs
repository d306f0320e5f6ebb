//! Published λ tables for curves with additive reduction at `p` and for Δ,
//! with the closed forms from their last column. `None` stands for `∞`.

/// One published row, shared by every isogeny class it lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedRow {
    pub p: u64,
    pub classes: &'static [&'static str],
    /// λ at `n = 1, 2, ...`.
    pub lambdas: &'static [Option<u64>],
    pub pattern: &'static str,
}

const INF: Option<u64> = None;

macro_rules! l {
    ($($x:expr),*) => { &[$(Some($x)),*] };
}

pub const PUBLISHED_ROWS: &[PublishedRow] = &[
    PublishedRow { p: 2, classes: &["20a"], lambdas: &[INF, Some(1), INF, Some(7), Some(9), Some(31), Some(33)], pattern: "2^(m-1) - 1 (m even); 2^(m-2) + 1 (m odd)" },
    PublishedRow { p: 2, classes: &["24a", "48a"], lambdas: &[INF, Some(1), Some(3), Some(7), Some(15), Some(31), Some(63)], pattern: "2^(m-1) - 1" },
    PublishedRow { p: 2, classes: &["32a"], lambdas: &[INF, Some(1), Some(2), Some(6), Some(14), Some(30), Some(62)], pattern: "2^(m-1) - 2" },
    PublishedRow { p: 2, classes: &["36a", "56a"], lambdas: &[INF, INF, Some(2), Some(4), Some(8), Some(16), Some(32)], pattern: "2^(m-2)" },
    PublishedRow { p: 2, classes: &["40a"], lambdas: &[INF, INF, Some(3), INF, Some(15), Some(17), Some(63)], pattern: "2^(m-2) + 1 (m even); 2^(m-1) - 1 (m odd)" },
    PublishedRow { p: 2, classes: &["44a"], lambdas: &[INF, Some(1), Some(3), Some(5), Some(11), Some(21), Some(43)], pattern: "q_m (m even); q_m + 1 (m odd)" },
    PublishedRow { p: 2, classes: &["52a"], lambdas: &[INF, Some(1), Some(3), Some(7), Some(11), Some(31), Some(35)], pattern: "2^(m-1) - 1 (m even); 2^(m-2) + 3 (m odd)" },
    PublishedRow { p: 2, classes: &["64a"], lambdas: &[INF, Some(1), Some(3), Some(4), Some(10), Some(22), Some(46)], pattern: "3*2^(m-3) - 2" },
    PublishedRow { p: 3, classes: &["27a", "54a"], lambdas: l![1, 7, 25, 79, 241, 727, 2185], pattern: "3^m - 2" },
    PublishedRow { p: 3, classes: &["36a", "54b", "90a", "90b", "108a"], lambdas: l![2, 8, 26, 80, 242, 728, 2186], pattern: "3^m - 1" },
    PublishedRow { p: 3, classes: &["45a", "63a", "72a", "90c", "99a", "99b", "99d"], lambdas: l![1, 3, 9, 27, 81, 243, 729], pattern: "3^(m-1)" },
    PublishedRow { p: 3, classes: &["99c"], lambdas: &[INF, Some(6), Some(18), Some(54), Some(162), Some(486), Some(1458)], pattern: "2*3^(m-1)" },
    PublishedRow { p: 3, classes: &["153a"], lambdas: &[Some(1), INF, Some(11), Some(39), Some(101), Some(309), Some(911)], pattern: "3^(m-1) + q_(m-1) + 6 (m even); 3^(m-1) + q_(m-1) (m odd)" },
    PublishedRow { p: 3, classes: &["153c"], lambdas: &[INF, Some(5), Some(21), Some(47), Some(147), Some(425), Some(1281)], pattern: "3^(m-1) + q_m (m even); 3^(m-1) + q_m + 6 (m odd)" },
    PublishedRow { p: 3, classes: &["153d"], lambdas: l![2, 6, 20, 60, 182, 546, 1640], pattern: "q_(m+1)" },
    PublishedRow { p: 5, classes: &["50b", "75c"], lambdas: l![4, 24, 124, 624, 3124], pattern: "5^m - 1" },
    PublishedRow { p: 5, classes: &["75b", "100a", "150c"], lambdas: l![2, 10, 50, 250, 1250], pattern: "2*5^(m-1)" },
    PublishedRow { p: 5, classes: &["50a", "75a", "150b", "175c"], lambdas: l![3, 15, 75, 375, 1875], pattern: "3*5^(m-1)" },
    PublishedRow { p: 5, classes: &["175b"], lambdas: l![4, 12, 52, 252, 1252], pattern: "2*5^(m-1) + 2" },
    PublishedRow { p: 5, classes: &["175a"], lambdas: l![2, 6, 26, 126, 626], pattern: "5^(m-1) + 1" },
    PublishedRow { p: 5, classes: &["150a"], lambdas: l![1, 5, 25, 125, 625], pattern: "5^(m-1)" },
    PublishedRow { p: 5, classes: &["225a"], lambdas: l![1, 8, 37, 188, 937], pattern: "5^(m-1) + 3*q_(m-1) + 3 (m even); 5^(m-1) + 3*q_(m-1) (m odd)" },
    PublishedRow { p: 5, classes: &["225b"], lambdas: l![4, 17, 88, 437, 2188], pattern: "3*5^(m-1) + 3*q_(m-1) + 2 (m even); 3*5^(m-1) + 3*q_(m-1) + 1 (m odd)" },
    PublishedRow { p: 7, classes: &["49a", "245b", "294e", "294f", "392b", "441a"], lambdas: l![5, 35, 245, 1715], pattern: "5*7^(m-1)" },
    PublishedRow { p: 7, classes: &["98a", "147a", "294c", "392d"], lambdas: l![3, 21, 147, 1029], pattern: "3*7^(m-1)" },
    PublishedRow { p: 7, classes: &["147b", "196b", "294a", "392e", "441e"], lambdas: l![4, 28, 196, 1372], pattern: "4*7^(m-1)" },
    PublishedRow { p: 7, classes: &["147c", "294b"], lambdas: l![1, 7, 49, 343], pattern: "7^(m-1)" },
    PublishedRow { p: 7, classes: &["245a", "294d", "294g", "441d"], lambdas: l![2, 14, 98, 686], pattern: "2*7^(m-1)" },
    PublishedRow { p: 7, classes: &["196a", "392f"], lambdas: l![2, 8, 50, 344], pattern: "7^(m-1) + 1" },
    PublishedRow { p: 7, classes: &["245c", "392a", "441c"], lambdas: l![4, 22, 148, 1030], pattern: "3*7^(m-1) + 1" },
    PublishedRow { p: 7, classes: &["392c", "441b"], lambdas: l![3, 15, 99, 687], pattern: "2*7^(m-1) + 1" },
    PublishedRow { p: 7, classes: &["441f"], lambdas: l![3, 9, 51, 345], pattern: "7^(m-1) + 2" },
    PublishedRow { p: 2, classes: &["delta"], lambdas: l![0, 1, 3, 6, 14, 30, 62], pattern: "2^(m-1) - 2" },
    PublishedRow { p: 3, classes: &["delta"], lambdas: l![1, 7, 25, 79, 241, 727], pattern: "3^m - 2" },
    PublishedRow { p: 5, classes: &["delta"], lambdas: l![4, 24, 124, 624], pattern: "5^m - 1" },
    PublishedRow { p: 7, classes: &["delta"], lambdas: l![6, 48, 342], pattern: "7^m - 1" },
];

/// The row listing `class` (an isogeny class label or `"delta"`) at `p`.
pub fn published_row(p: u64, class: &str) -> Option<&'static PublishedRow> {
    PUBLISHED_ROWS.iter().find(|r| r.p == p && r.classes.contains(&class))
}

/// Every class listed at `p`, Δ first, in table order.
pub fn published_classes(p: u64) -> Vec<&'static str> {
    let mut out: Vec<&str> = PUBLISHED_ROWS
        .iter()
        .filter(|r| r.p == p)
        .flat_map(|r| r.classes.iter().copied())
        .collect();
    out.sort_by_key(|c| *c != "delta");
    out
}
