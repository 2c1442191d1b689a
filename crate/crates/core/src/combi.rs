//! Small combinatorial helpers shared across the crate: binomial
//! coefficients with the conventions the counting formulas rely on,
//! bitmask subsets of `[n]`, box enumeration, and set-partition
//! enumeration by restricted growth strings.

/// Subsets of the ground set `{0, …, n-1}` as bitmasks.
pub type Subset = u32;

/// Binomial coefficient with the extended convention used by the counting
/// formulas: `binom(a, 0) = 1` for every `a` (including negative), and
/// `binom(a, b) = 0` whenever `b < 0` or `a < b`.
pub fn binom(a: i64, b: i64) -> u64 {
    if b < 0 {
        return 0;
    }
    if b == 0 {
        return 1;
    }
    if a < b {
        return 0;
    }
    let mut acc: u128 = 1;
    let b = b.min(a - b);
    for i in 0..b {
        acc = acc
            .checked_mul((a - i) as u128)
            .expect("binomial coefficient overflow");
        acc /= (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient exceeds u64")
}

/// Members of a bitmask subset, ascending.
pub fn members(s: Subset) -> Vec<usize> {
    (0..32).filter(|i| s & (1 << i) != 0).collect()
}

/// Render a subset as `{1,3}` with 1-based element labels.
pub fn subset_string(s: Subset) -> String {
    let inner: Vec<String> = members(s).iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// All points of the box `lo..=hi[0] × ⋯ × lo..=hi[k-1]` in lexicographic
/// order. With `lo = 0` this is the closed box including the origin; with
/// `lo = 1` it is the generator box.
pub fn box_points(lo: usize, hi: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![lo; hi.len()];
    if hi.iter().any(|&h| h < lo) {
        return out;
    }
    loop {
        out.push(cur.clone());
        // odometer increment
        let mut k = hi.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                for v in cur.iter_mut().skip(k + 1) {
                    *v = lo;
                }
                break;
            }
        }
    }
}

/// Visit every set partition of `elements`, each block presented in input
/// order with blocks ordered by their first element. The enumeration walks
/// restricted growth strings: element `i` joins one of the existing blocks
/// or opens a new one.
pub fn for_each_partition<F: FnMut(&[Vec<usize>])>(elements: &[usize], mut f: F) {
    if elements.is_empty() {
        return;
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec<F: FnMut(&[Vec<usize>])>(elements: &[usize], i: usize, blocks: &mut Vec<Vec<usize>>, f: &mut F) {
        if i == elements.len() {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(elements[i]);
            rec(elements, i + 1, blocks, f);
            blocks[b].pop();
        }
        blocks.push(vec![elements[i]]);
        rec(elements, i + 1, blocks, f);
        blocks.pop();
    }
    rec(elements, 0, &mut blocks, &mut f);
}
