#pragma once

#include <cstddef>
#include <functional>

namespace radiance {

/// Worker count: RADIANCE_THREADS env var wins, then the configured value,
/// then hardware concurrency.
std::size_t resolve_thread_count(std::size_t requested = 0);

/// Override the process-wide default (used by the CLI --threads flag).
void set_default_thread_count(std::size_t n);

/// Run fn(block) for block = 0..n_blocks-1 across worker threads.  Blocks
/// are handed out in index order; callers own any per-block output slots,
/// so results are deterministic regardless of the worker count.
void parallel_for_blocks(std::size_t n_blocks, const std::function<void(std::size_t)>& fn);

}  // namespace radiance
