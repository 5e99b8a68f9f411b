#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

namespace grocer {

/// FNV-1a 64-bit over raw bytes. Used for content hashes in run manifests
/// and as the keyed-hash building block for A/B group assignment.
std::uint64_t fnv1a64(std::string_view bytes);

/// splitmix64 finalizer; turns a weakly mixed 64-bit value into one with
/// good avalanche on every output bit.
std::uint64_t mix64(std::uint64_t x);

/// "fnv64:<16 hex digits>" of a file's contents.
std::string file_content_hash(const std::filesystem::path& path);

/// Writes `content` to `path` atomically (temp file in the same directory,
/// then rename). Creates parent directories as needed.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

/// Worker count for data-parallel loops: hardware concurrency capped by the
/// GROCER_RANK_THREADS environment variable when set (>= 1).
int effective_threads();

/// Runs fn(i) for i in [0, n) on up to `threads` workers with a static block
/// partition. Each index is handled exactly once; callers get deterministic
/// results as long as fn(i) only writes state owned by index i.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

/// Doubles formatted with 12 significant digits (similarity/score files).
std::string format_sig12(double v);

}  // namespace grocer
