#include "eonbam/bam.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eonbam/error.hpp"

namespace eonbam {

std::string_view to_string(BamKind kind) {
  switch (kind) {
    case BamKind::MAM: return "MAM";
    case BamKind::RDM: return "RDM";
    case BamKind::ATCS: return "ATCS";
  }
  return "?";
}

std::optional<BamKind> parse_bam_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "mam") return BamKind::MAM;
  if (lower == "rdm") return BamKind::RDM;
  if (lower == "atcs") return BamKind::ATCS;
  return std::nullopt;
}

BamConfig::BamConfig(std::vector<int> pools, int capacity)
    : pools_(std::move(pools)), capacity_(capacity) {
  if (pools_.empty()) throw ValidationError("at least one traffic class is required");
  for (int p : pools_) {
    if (p <= 0) throw ValidationError("every class pool must be positive");
  }
  const int sum = std::accumulate(pools_.begin(), pools_.end(), 0);
  if (sum != capacity_) {
    throw ValidationError("class pools sum to " + std::to_string(sum) + ", expected " +
                          std::to_string(capacity_));
  }
  rc_.assign(pools_.size(), 0);
  int acc = 0;
  for (int k = class_count() - 1; k >= 0; --k) {
    acc += pools_[k];
    rc_[k] = acc;
  }
}

BamConfig BamConfig::from_shares(std::span<const double> share_percent, int capacity) {
  std::vector<int> pools;
  for (double pct : share_percent) {
    pools.push_back(static_cast<int>(std::lround(pct / 100.0 * capacity)));
  }
  return BamConfig(std::move(pools), capacity);
}

BamState::BamState(int class_count)
    : used(class_count, 0),
      own_used(class_count, 0),
      borrowed(class_count, std::vector<int>(class_count, 0)) {}

int BamState::total_used() const { return std::accumulate(used.begin(), used.end(), 0); }

int BamState::spare(const BamConfig& config, ClassIndex d) const {
  int drawn = own_used[d];
  for (const auto& row : borrowed) drawn += row[d];
  return config.pool(d) - drawn;
}

int Attribution::total() const {
  return std::accumulate(from_pool.begin(), from_pool.end(), 0);
}

namespace {

void check_class(const BamConfig& config, ClassIndex c) {
  if (c < 0 || c >= config.class_count()) {
    throw UnknownClass("class " + std::to_string(c) + " outside [0, " +
                       std::to_string(config.class_count()) + ")");
  }
}

}  // namespace

bool admit(BamKind kind, const BamConfig& config, const BamState& state, ClassIndex c, int b) {
  check_class(config, c);
  if (b < 1) throw std::invalid_argument("slot count must be >= 1");
  switch (kind) {
    case BamKind::MAM:
      return state.used[c] + b <= config.pool(c);
    case BamKind::RDM: {
      // Walk k from the top class down so the running sum is sum_{j >= k} used_j.
      int nested = 0;
      for (int k = config.class_count() - 1; k >= 0; --k) {
        nested += state.used[k];
        if (k <= c && nested + b > config.rdm_rc()[k]) return false;
      }
      return true;
    }
    case BamKind::ATCS:
      return state.total_used() + b <= config.capacity();
  }
  return false;
}

Attribution commit(BamKind kind, const BamConfig& config, BamState& state, ClassIndex c, int b) {
  if (!admit(kind, config, state, c, b)) {
    throw PreconditionViolated("commit of " + std::to_string(b) + " slots for class " +
                               std::to_string(c) + " is not admissible");
  }
  Attribution attr{std::vector<int>(config.class_count(), 0)};
  if (kind != BamKind::ATCS) {
    attr.from_pool[c] = b;
    state.used[c] += b;
    return attr;
  }

  int remaining = b;
  const int own = std::min(remaining, std::max(0, state.spare(config, c)));
  attr.from_pool[c] = own;
  remaining -= own;
  for (ClassIndex d = 0; d < config.class_count() && remaining > 0; ++d) {
    if (d == c) continue;
    const int take = std::min(remaining, std::max(0, state.spare(config, d)));
    attr.from_pool[d] = take;
    remaining -= take;
  }
  if (remaining != 0) {
    // Unreachable while the ledger invariants hold: total spare = S - total used.
    throw PreconditionViolated("ATCS ledger has no spare pool capacity left");
  }
  state.own_used[c] += attr.from_pool[c];
  for (ClassIndex d = 0; d < config.class_count(); ++d) {
    if (d != c) state.borrowed[c][d] += attr.from_pool[d];
  }
  state.used[c] += b;
  return attr;
}

void release_volumetric(BamKind kind, const BamConfig& config, BamState& state, ClassIndex c,
                        const Attribution& attribution) {
  check_class(config, c);
  if (static_cast<int>(attribution.from_pool.size()) != config.class_count()) {
    throw LedgerUnderflow("attribution does not match the class count");
  }
  const int b = attribution.total();
  if (b < 1 || state.used[c] < b) {
    throw LedgerUnderflow("class " + std::to_string(c) + " holds " +
                          std::to_string(state.used[c]) + " slots, cannot release " +
                          std::to_string(b));
  }
  if (kind != BamKind::ATCS) {
    for (ClassIndex d = 0; d < config.class_count(); ++d) {
      if (d != c && attribution.from_pool[d] != 0) {
        throw LedgerUnderflow("MAM/RDM attribution may only name the class's own pool");
      }
    }
    state.used[c] -= b;
    return;
  }
  if (state.own_used[c] < attribution.from_pool[c]) {
    throw LedgerUnderflow("own-pool release exceeds own usage of class " + std::to_string(c));
  }
  for (ClassIndex d = 0; d < config.class_count(); ++d) {
    if (d != c && state.borrowed[c][d] < attribution.from_pool[d]) {
      throw LedgerUnderflow("loan of class " + std::to_string(c) + " from pool " +
                            std::to_string(d) + " would go negative");
    }
  }
  state.own_used[c] -= attribution.from_pool[c];
  for (ClassIndex d = 0; d < config.class_count(); ++d) {
    if (d != c) state.borrowed[c][d] -= attribution.from_pool[d];
  }
  state.used[c] -= b;
}

std::optional<std::string> check_invariants(BamKind kind, const BamConfig& config,
                                            const BamState& state) {
  const int C = config.class_count();
  if (static_cast<int>(state.used.size()) != C) return "usage vector has wrong length";
  for (int c = 0; c < C; ++c) {
    if (state.used[c] < 0) return "negative usage for class " + std::to_string(c);
  }
  if (state.total_used() > config.capacity()) return "total usage exceeds link capacity";

  switch (kind) {
    case BamKind::MAM:
      for (int c = 0; c < C; ++c) {
        if (state.used[c] > config.pool(c)) {
          return "MAM: class " + std::to_string(c) + " exceeds its pool";
        }
      }
      break;
    case BamKind::RDM: {
      int nested = 0;
      for (int k = C - 1; k >= 0; --k) {
        nested += state.used[k];
        if (nested > config.rdm_rc()[k]) return "RDM: RC" + std::to_string(k) + " exceeded";
      }
      break;
    }
    case BamKind::ATCS:
      for (int c = 0; c < C; ++c) {
        if (state.own_used[c] < 0 || state.own_used[c] > config.pool(c)) {
          return "ATCS: own usage of class " + std::to_string(c) + " out of range";
        }
        if (state.borrowed[c][c] != 0) return "ATCS: class borrows from itself";
        int via_ledger = state.own_used[c];
        for (int d = 0; d < C; ++d) {
          if (state.borrowed[c][d] < 0) return "ATCS: negative loan";
          if (d != c) via_ledger += state.borrowed[c][d];
        }
        if (via_ledger != state.used[c]) {
          return "ATCS: ledger of class " + std::to_string(c) + " does not match its usage";
        }
        if (state.spare(config, c) < 0) {
          return "ATCS: pool " + std::to_string(c) + " is over-drawn";
        }
      }
      break;
  }
  if (kind != BamKind::ATCS) {
    for (int c = 0; c < C; ++c) {
      if (state.own_used[c] != 0) return "ledger in use outside ATCS";
      for (int d = 0; d < C; ++d) {
        if (state.borrowed[c][d] != 0) return "ledger in use outside ATCS";
      }
    }
  }
  return std::nullopt;
}

}  // namespace eonbam
