//! Data-parallel map helper with a sequential fallback. Output order is
//! by index either way, so results do not depend on scheduling.

use crate::error::Result;

#[cfg(feature = "parallel")]
pub(crate) fn try_map_indexed<U, F>(n: usize, f: F) -> Result<Vec<U>>
where
    F: Fn(usize) -> Result<U> + Send + Sync,
    U: Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn try_map_indexed<U, F>(n: usize, f: F) -> Result<Vec<U>>
where
    F: Fn(usize) -> Result<U> + Send + Sync,
    U: Send,
{
    (0..n).map(f).collect()
}
