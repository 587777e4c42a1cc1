#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "hasse/localsolve.hpp"

namespace hasse {

/// Identifies a local decision up to the residue classes it depends on.
/// With `exact` unset, `residues` are the coefficients reduced modulo a
/// p-power at which the decision (including its witness) is determined.
struct VerdictKey {
  std::uint8_t kind = 0;  // 0 Thue, 1 Fermat
  std::uint8_t strategy = 0;
  std::uint8_t shortcuts = 0;
  std::uint8_t exact = 0;
  int k = 0;
  i64 p = 0;
  std::array<i64, 3> residues{};

  bool operator==(const VerdictKey&) const = default;
};

struct VerdictKeyHash {
  std::size_t operator()(const VerdictKey& key) const noexcept;
};

/// Thread-safe map from VerdictKey to LocalVerdict. Concurrent duplicate
/// inserts are harmless: both computations produce the same verdict.
class VerdictCache {
 public:
  static constexpr int kFormatVersion = 1;

  std::optional<LocalVerdict> find(const VerdictKey& key) const;
  void insert(const VerdictKey& key, const LocalVerdict& verdict);
  std::size_t size() const;
  void clear();

  /// Text persistence. `load` silently ignores files written by another
  /// format or library version and returns false for them.
  bool load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    mutable std::shared_mutex mutex;
    std::unordered_map<VerdictKey, LocalVerdict, VerdictKeyHash> map;
  };
  const Shard& shard_for(const VerdictKey& key) const;
  Shard& shard_for(const VerdictKey& key);

  std::array<Shard, kShards> shards_;
};

}  // namespace hasse
