#include "hasse/verdict_cache.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hasse/version.hpp"

namespace hasse {

namespace {

void mix(std::size_t& seed, u64 value) {
  // splitmix64 finalizer folded into the running seed.
  value += 0x9e3779b97f4a7c15ULL + seed;
  value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
  value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
  seed = static_cast<std::size_t>(value ^ (value >> 31));
}

constexpr std::string_view kMagic = "hasse-verdict-cache";

}  // namespace

std::size_t VerdictKeyHash::operator()(const VerdictKey& key) const noexcept {
  std::size_t seed = 0;
  mix(seed, (u64(key.kind) << 24) | (u64(key.strategy) << 16) | (u64(key.shortcuts) << 8) |
                key.exact);
  mix(seed, static_cast<u64>(key.k));
  mix(seed, static_cast<u64>(key.p));
  for (i64 r : key.residues) mix(seed, static_cast<u64>(r));
  return seed;
}

const VerdictCache::Shard& VerdictCache::shard_for(const VerdictKey& key) const {
  return shards_[VerdictKeyHash{}(key) % kShards];
}

VerdictCache::Shard& VerdictCache::shard_for(const VerdictKey& key) {
  return shards_[VerdictKeyHash{}(key) % kShards];
}

std::optional<LocalVerdict> VerdictCache::find(const VerdictKey& key) const {
  const Shard& shard = shard_for(key);
  std::shared_lock lock(shard.mutex);
  auto it = shard.map.find(key);
  if (it == shard.map.end()) return std::nullopt;
  return it->second;
}

void VerdictCache::insert(const VerdictKey& key, const LocalVerdict& verdict) {
  Shard& shard = shard_for(key);
  std::unique_lock lock(shard.mutex);
  shard.map.emplace(key, verdict);
}

std::size_t VerdictCache::size() const {
  std::size_t total = 0;
  for (const Shard& shard : shards_) {
    std::shared_lock lock(shard.mutex);
    total += shard.map.size();
  }
  return total;
}

void VerdictCache::clear() {
  for (Shard& shard : shards_) {
    std::unique_lock lock(shard.mutex);
    shard.map.clear();
  }
}

// One entry per line:
//   kind strategy shortcuts exact k p r0 r1 r2  prime soluble method modulus
//   npoint x... n
// where npoint = 0 means no witness (and no trailing n).
bool VerdictCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return false;
  std::string magic, version;
  int format = 0;
  std::string header;
  if (!std::getline(in, header)) return false;
  std::istringstream hs(header);
  if (!(hs >> magic >> format >> version)) return false;
  if (magic != kMagic || format != kFormatVersion || version != kVersion) return false;

  std::vector<std::pair<VerdictKey, LocalVerdict>> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    VerdictKey key;
    int kind, strategy, shortcuts, exact, soluble, method;
    std::size_t npoint;
    LocalVerdict v;
    if (!(ls >> kind >> strategy >> shortcuts >> exact >> key.k >> key.p >> key.residues[0] >>
          key.residues[1] >> key.residues[2] >> v.prime >> soluble >> method >>
          v.search_modulus >> npoint)) {
      return false;
    }
    if (method < 0 || method > static_cast<int>(LocalMethod::exhaustive_hensel) || npoint > 3) {
      return false;
    }
    key.kind = static_cast<std::uint8_t>(kind);
    key.strategy = static_cast<std::uint8_t>(strategy);
    key.shortcuts = static_cast<std::uint8_t>(shortcuts);
    key.exact = static_cast<std::uint8_t>(exact);
    v.soluble = soluble != 0;
    v.method = static_cast<LocalMethod>(method);
    if (npoint > 0) {
      HenselWitness w;
      w.prime = v.prime;
      w.point.resize(npoint);
      for (i64& x : w.point) {
        if (!(ls >> x)) return false;
      }
      if (!(ls >> w.precision_n)) return false;
      v.witness = std::move(w);
    }
    entries.emplace_back(key, std::move(v));
  }
  for (auto& [key, v] : entries) insert(key, v);
  return true;
}

void VerdictCache::save(const std::filesystem::path& path) const {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write verdict cache: " + tmp.string());
    out << kMagic << ' ' << kFormatVersion << ' ' << kVersion << '\n';
    for (const Shard& shard : shards_) {
      std::shared_lock lock(shard.mutex);
      for (const auto& [key, v] : shard.map) {
        out << int(key.kind) << ' ' << int(key.strategy) << ' ' << int(key.shortcuts) << ' '
            << int(key.exact) << ' ' << key.k << ' ' << key.p << ' ' << key.residues[0] << ' '
            << key.residues[1] << ' ' << key.residues[2] << ' ' << v.prime << ' '
            << (v.soluble ? 1 : 0) << ' ' << static_cast<int>(v.method) << ' '
            << v.search_modulus << ' ' << (v.witness ? v.witness->point.size() : 0);
        if (v.witness) {
          for (i64 x : v.witness->point) out << ' ' << x;
          out << ' ' << v.witness->precision_n;
        }
        out << '\n';
      }
    }
    if (!out) throw std::runtime_error("failed writing verdict cache: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace hasse
