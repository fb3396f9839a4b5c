//! Tiny scoped-thread fan-out used by the counting loops.

/// Applies `f` to every item, spreading the work over at most `jobs` scoped
/// threads, and returns the results in input order. `jobs <= 1` runs inline.
pub(crate) fn run_ordered<T, R, F>(items: Vec<T>, jobs: usize, f: &F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs <= 1 {
        return items.into_iter().map(f).collect();
    }
    let mut lanes: Vec<Vec<(usize, T)>> = (0..jobs).map(|_| Vec::new()).collect();
    for (idx, item) in items.into_iter().enumerate() {
        lanes[idx % jobs].push((idx, item));
    }
    let mut tagged: Vec<(usize, R)> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = lanes
            .into_iter()
            .map(|lane| {
                scope.spawn(move || {
                    lane.into_iter().map(|(idx, item)| (idx, f(item))).collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            tagged.extend(handle.join().expect("worker thread panicked"));
        }
    });
    tagged.sort_by_key(|&(idx, _)| idx);
    tagged.into_iter().map(|(_, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_keep_input_order_for_any_job_count() {
        let items: Vec<usize> = (0..23).collect();
        let expect: Vec<usize> = items.iter().map(|v| v * v).collect();
        for jobs in [0, 1, 2, 3, 8, 100] {
            assert_eq!(run_ordered(items.clone(), jobs, &|v| v * v), expect, "jobs={jobs}");
        }
    }

    #[test]
    fn empty_input_is_fine() {
        let out: Vec<usize> = run_ordered(Vec::<usize>::new(), 4, &|v| v);
        assert!(out.is_empty());
    }
}
