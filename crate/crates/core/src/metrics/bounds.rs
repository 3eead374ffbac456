/// Edge counts forced on a planar target that is universal for high-girth
/// planar graphs of signature `(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeBound {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    /// `(2m + n)k - m - n`: at least `2k - 1` arcs per arc color and
    /// `k - 1` edges per edge color.
    pub required: i64,
    /// `3k - 6`.
    pub planar_max: i64,
    /// `required > planar_max` at this `k`.
    pub exceeds_at_k: bool,
    /// `required > planar_max` for every `k >= 3`.
    pub impossible: bool,
}

pub fn universality_edge_bound(m: usize, n: usize, k: usize) -> EdgeBound {
    let (mi, ni, ki) = (m as i64, n as i64, k as i64);
    let required = |k: i64| (2 * mi + ni) * k - mi - ni;
    let planar_max = |k: i64| 3 * k - 6;
    // both sides are affine in k: exceeding at k = 3 with slope 2m + n >= 3
    // means exceeding everywhere above
    let impossible = required(3) > planar_max(3) && 2 * mi + ni >= 3;
    EdgeBound {
        m,
        n,
        k,
        required: required(ki),
        planar_max: planar_max(ki),
        exceeds_at_k: required(ki) > planar_max(ki),
        impossible,
    }
}
