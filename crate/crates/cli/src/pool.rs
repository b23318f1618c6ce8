//! Shared-nothing worker pool for sweep points.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Evaluate `f(0..count)` on up to `workers` threads and return the results
/// in index order. Each item is computed entirely by one worker, so the
/// numerical output is identical for any worker count.
pub fn parallel_map<T, F>(count: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if count == 0 {
        return Vec::new();
    }
    let workers = workers.max(1).min(count);
    if workers == 1 {
        return (0..count).map(f).collect();
    }

    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let value = f(i);
                slots.lock().expect("worker panicked holding results")[i] = Some(value);
            });
        }
    });
    slots
        .into_inner()
        .expect("worker panicked holding results")
        .into_iter()
        .map(|v| v.expect("every slot filled"))
        .collect()
}
