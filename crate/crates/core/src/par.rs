//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the sweeps run on the rayon pool;
//! without it, [`Execution::Parallel`] silently runs sequentially.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// The first item (in input order) for which `f` returns `Some`.
    pub fn find_map_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().find_map_first(f)
            }
            _ => items.iter().find_map(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let xs: Vec<u32> = (0..1000).collect();
        let a = Execution::Sequential.map(&xs, |x| x * 3);
        let b = Execution::Parallel.map(&xs, |x| x * 3);
        assert_eq!(a, b);
        let f = |x: &u32| (x % 97 == 96).then_some(*x);
        assert_eq!(
            Execution::Sequential.find_map_first(&xs, f),
            Execution::Parallel.find_map_first(&xs, f)
        );
    }
}
