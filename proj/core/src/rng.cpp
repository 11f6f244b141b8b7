#include "acqlab/rng.hpp"

#include "acqlab/error.hpp"

namespace acqlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::radius_out_of_range: return "RadiusOutOfRange";
    case ErrorCode::invalid_matching: return "InvalidMatching";
    case ErrorCode::no_edges: return "NoEdges";
    case ErrorCode::disconnected: return "Disconnected";
    case ErrorCode::not_a_path: return "NotAPath";
    case ErrorCode::missing_transfer_matching: return "MissingTransferMatching";
    case ErrorCode::concentration_failed: return "ConcentrationFailed";
    case ErrorCode::path_too_short: return "PathTooShort";
    case ErrorCode::no_saturating_matching: return "NoSaturatingMatching";
    case ErrorCode::not_all_acquainted: return "NotAllAcquainted";
    case ErrorCode::matching_missing: return "MatchingMissing";
    case ErrorCode::cell_pair_strategy_failed: return "CellPairStrategyFailed";
    case ErrorCode::structure_unusable: return "StructureUnusable";
    case ErrorCode::move_failed: return "MoveFailed";
    case ErrorCode::capacity_exceeded: return "CapacityExceeded";
    case ErrorCode::no_crucial_path: return "NoCrucialPath";
    case ErrorCode::no_crucial: return "NoCrucial";
    case ErrorCode::config_error: return "ConfigError";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::schema_error: return "SchemaError";
  }
  return "Unknown";
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index) noexcept {
  // FNV-1a over the tag, then fold everything through the mixer.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return mix64(mix64(seed ^ h) + mix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::domain_error, "below(0) has no valid result");
  // Rejection sampling on the top of the range to stay unbiased.
  const std::uint64_t limit = max() - (max() % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

}  // namespace acqlab
