use crate::error::{usage, Result};
use crate::weight::Weight;

/// Lower edge of bucket `t`: `(2/3)^t * w_max`.
pub fn bucket_floor<W: Weight>(t: usize, w_max: &W) -> W {
    let mut floor = w_max.clone();
    for _ in 0..t {
        floor = floor.scale(2, 3);
    }
    floor
}

/// The unique `t >= 1` with `(2/3)^t * w_max < w <= (2/3)^(t-1) * w_max`.
pub fn bucket_index<W: Weight>(w: &W, w_max: &W) -> Result<usize> {
    if !w.is_positive() || w > w_max {
        return usage(format!("bucket_index needs 0 < w <= w_max, got w = {w}, w_max = {w_max}"));
    }
    let mut t = 1;
    let mut floor = w_max.scale(2, 3);
    while *w <= floor {
        t += 1;
        floor = floor.scale(2, 3);
    }
    Ok(t)
}
